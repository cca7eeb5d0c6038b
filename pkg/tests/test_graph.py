import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphjoints.errors import FormatError, InvalidVertex, SelfLoop
from graphjoints.graph import (Graph, common_neighborhood, complete_graph, cycle_graph,
                               empty_graph, format_edge_list, induced_subgraph, iter_bits,
                               make_graph, parse_edge_list, peel, read_edge_list,
                               write_edge_list)
from graphjoints.turan import turan_graph


@st.composite
def graphs(draw, max_n=32):
    n = draw(st.integers(0, max_n))
    if n < 2:
        return make_graph(n, [])
    pairs = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda p: p[0] != p[1])
    return make_graph(n, draw(st.lists(pairs, max_size=3 * n)))


def test_make_graph_triangle():
    g = make_graph(3, [(0, 1), (1, 2), (0, 2)])
    assert g.num_edges == 3
    assert g == complete_graph(3)


def test_make_graph_empty():
    g = make_graph(4, [])
    assert g.num_edges == 0 and g.min_degree() == 0


def test_duplicates_collapse():
    assert make_graph(4, [(0, 1), (0, 1), (1, 0)]).num_edges == 1


def test_make_graph_errors():
    with pytest.raises(InvalidVertex):
        make_graph(3, [(0, 3)])
    with pytest.raises(InvalidVertex):
        make_graph(3, [(-1, 0)])
    with pytest.raises(SelfLoop):
        make_graph(3, [(1, 1)])


def test_induced_subgraph_examples():
    sub, labels = induced_subgraph(complete_graph(4), {0, 1, 2})
    assert sub == complete_graph(3) and labels == [0, 1, 2]

    sub, labels = induced_subgraph(cycle_graph(5), [2, 0, 1])
    assert labels == [0, 1, 2]
    assert sub.edges() == [(0, 1), (1, 2)]

    sub, labels = induced_subgraph(cycle_graph(5), [])
    assert sub.n == 0 and labels == []

    with pytest.raises(InvalidVertex):
        induced_subgraph(cycle_graph(5), [7])


def test_induced_subgraph_relabels_in_sorted_order():
    g = cycle_graph(6)
    sub, labels = induced_subgraph(g, [5, 0, 3])
    assert labels == [0, 3, 5]
    # 0-5 is the only cycle edge among {0, 3, 5}
    assert sub.edges() == [(0, 2)]


def test_common_neighborhood_examples():
    assert list(iter_bits(common_neighborhood(complete_graph(5), 0, 1))) == [2, 3, 4]
    assert common_neighborhood(cycle_graph(5), 0, 1) == 0
    assert common_neighborhood(turan_graph(4, 2), 0, 2) == 0
    with pytest.raises(SelfLoop):
        common_neighborhood(complete_graph(3), 1, 1)


def test_peel_examples():
    star = make_graph(4, [(0, 1), (0, 2), (0, 3)])
    trace = peel(star)
    assert trace.degrees == (1, 1, 1, 0)
    assert trace.edges_remaining == (3, 2, 1, 0)
    assert peel(complete_graph(3)).degrees == (2, 1, 0)
    assert peel(empty_graph(3)).degrees == (0, 0, 0)
    assert peel(empty_graph(3)).order == (0, 1, 2)


def test_peel_tie_break_lowest_index():
    # path 0-1-2-3: endpoints 0 and 3 tie at degree 1
    trace = peel(make_graph(4, [(0, 1), (1, 2), (2, 3)]))
    assert trace.order[0] == 0


@settings(max_examples=300, deadline=None)
@given(graphs())
def test_peel_trace_invariants(g):
    trace = peel(g)
    assert sorted(trace.order) == list(range(g.n))
    assert sum(trace.degrees) == g.num_edges
    for i in range(g.n):
        gi, _ = induced_subgraph(g, trace.order[i:])
        assert trace.edges_remaining[i] == gi.num_edges
        assert trace.degrees[i] == gi.min_degree()
    for i in range(g.n - 1):
        assert trace.edges_remaining[i] - trace.edges_remaining[i + 1] == trace.degrees[i]


@settings(max_examples=1000, deadline=None)
@given(graphs(), st.data())
def test_random_graph_invariants_hold_after_operations(g, data):
    g.check_invariants()
    assert sum(g.degrees()) == 2 * g.num_edges
    full, labels = induced_subgraph(g, range(g.n))
    assert full == g and labels == list(range(g.n))
    if g.n:
        keep = data.draw(st.sets(st.integers(0, g.n - 1)))
        sub, labels = induced_subgraph(g, keep)
        sub.check_invariants()
        for a, b in sub.edges():
            assert g.has_edge(labels[a], labels[b])
        assert sub.num_edges == sum(g.has_edge(u, v) for u in keep for v in keep if u < v)
        g.complement().check_invariants()


@settings(max_examples=200, deadline=None)
@given(graphs(max_n=16))
def test_common_neighborhood_counts_triangles_on_edge(g):
    for u, v in g.edges():
        m = common_neighborhood(g, u, v)
        assert not (m >> u & 1) and not (m >> v & 1)
        triangles = sum(g.has_edge(u, w) and g.has_edge(v, w) for w in range(g.n))
        assert m.bit_count() == triangles


def test_edge_list_roundtrip(tmp_path):
    g = turan_graph(5, 3)
    text = format_edge_list(g)
    assert text.splitlines()[0] == "5 8"
    assert text.splitlines()[1:] == [f"{u} {v}" for u, v in sorted(g.edges())]
    path = tmp_path / "g.txt"
    write_edge_list(g, path)
    assert read_edge_list(path) == g


def test_edge_list_parse_ignores_comments_and_blanks():
    text = "# a triangle\n3 3\n\n0 1\n# middle\n1 2\n0 2\n"
    assert parse_edge_list(text) == complete_graph(3)


def test_edge_list_errors():
    with pytest.raises(FormatError):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(FormatError):
        parse_edge_list("")
    with pytest.raises(FormatError):
        parse_edge_list("3 1\n0 x\n")
    with pytest.raises(SelfLoop):
        parse_edge_list("3 1\n1 1\n")


def test_graph_rejects_wrong_row_count():
    with pytest.raises(ValueError):
        Graph(3, (0, 0))
