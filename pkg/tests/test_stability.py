import json
import random
from fractions import Fraction
from itertools import combinations

import pytest

from graphjoints.cliques import find_clique
from graphjoints.errors import HypothesisViolated, ResourceLimit
from graphjoints.experiments import graph_from_code, stability_instance
from graphjoints.generators import intra_class_pairs
from graphjoints.graph import complete_graph, cycle_graph, make_graph
from graphjoints.inequalities import GUARANTEED
from graphjoints.joints import turan_plus_edge
from graphjoints.stability import (CHROMATIC_BRANCH, JOINT_BRANCH, OUT_OF_REGIME, aes_condition,
                                   check_stability, is_proper_coloring, low_degree_set,
                                   r_colorable, verify_report)
from graphjoints.turan import turan_graph

from oracles import brute_colorable, brute_two_colorable, graphs_with_min_degree

ALPHA = Fraction(1, 10 ** 4)


def petersen():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return make_graph(10, outer + spokes + inner)


def star(leaves):
    return make_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def test_low_degree_set_examples():
    assert low_degree_set(turan_graph(10, 2), 2, Fraction(1, 100)) == []
    assert low_degree_set(star(9), 2, Fraction(1, 100)) == list(range(1, 10))
    # epsilon = 1 puts the threshold below zero
    assert low_degree_set(star(9), 2, Fraction(1)) == []


def test_low_degree_set_monotone_in_epsilon():
    rng = random.Random(3)
    for _ in range(200):
        n = rng.randint(2, 20)
        g = make_graph(n, [p for p in combinations(range(n), 2) if rng.random() < 0.6])
        r = rng.randint(2, 4)
        eps = sorted(Fraction(rng.randint(1, 400), 400) ** 2 for _ in range(4))
        sets = [set(low_degree_set(g, r, e)) for e in eps]
        for smaller, larger in zip(sets, sets[1:]):
            # bigger epsilon lowers the threshold, so fewer vertices qualify
            assert larger <= smaller


def test_low_degree_set_matches_float_away_from_boundary():
    rng = random.Random(4)
    for _ in range(300):
        n = rng.randint(2, 25)
        g = make_graph(n, [p for p in combinations(range(n), 2) if rng.random() < 0.5])
        eps_sq = Fraction(rng.randint(1, 200), 1000)
        expected = []
        for u in range(n):
            thr = (1 / 2 - float(eps_sq) ** 0.5) * n
            if abs(g.degree(u) - thr) < 1e-9:
                break
            if g.degree(u) <= thr:
                expected.append(u)
        else:
            assert low_degree_set(g, 2, eps_sq) == expected


def test_aes_examples():
    assert not aes_condition(cycle_graph(5), 2)
    assert aes_condition(turan_graph(10, 2), 2)
    assert not aes_condition(complete_graph(4), 2)


def test_aes_consistency_exhaustive_to_nine_vertices():
    found = 0
    for r in (2, 3):
        for n in range(1, 10):
            need = int((1 - Fraction(3, 3 * r - 1)) * n) + 1
            for edges in graphs_with_min_degree(n, r, need):
                g = make_graph(n, edges)
                assert aes_condition(g, r)
                coloring = r_colorable(g, r)
                assert coloring is not None and is_proper_coloring(g, coloring, r)
                found += 1
    assert found > 400


def test_aes_consistency_random_larger():
    """Thinned Turán graphs with intra-class edges planted where no K_{r+1} appears."""
    rng = random.Random(8)
    hits = 0
    for _ in range(300):
        n, r = rng.randint(10, 40), rng.randint(2, 4)
        g = turan_graph(n, r)
        g = g.without_edges([e for e in g.edges() if rng.random() < 0.03])
        intra = intra_class_pairs(n, r)
        for e in rng.sample(intra, min(len(intra), 3)):
            h = g.with_edges([e])
            if find_clique(h, r + 1) is None:
                g = h
        if aes_condition(g, r):
            hits += 1
            col = r_colorable(g, r)
            assert col is not None and is_proper_coloring(g, col, r)
    assert hits > 30


def test_r_colorable_examples():
    assert r_colorable(cycle_graph(5), 2) is None
    colors = r_colorable(turan_graph(7, 3), 3)
    assert colors is not None and is_proper_coloring(turan_graph(7, 3), colors, 3)
    # a 3-colouring of the complete 3-partite graph is exactly its class partition
    classes = {}
    for v, c in enumerate(colors):
        classes.setdefault(c, []).append(v)
    assert sorted(classes.values()) == [[0, 1, 2], [3, 4], [5, 6]]
    p = petersen()
    colors = r_colorable(p, 3)
    assert colors is not None and is_proper_coloring(p, colors, 3)
    assert r_colorable(p, 2) is None


def test_r_colorable_matches_brute_force_all_six_vertex_graphs():
    for code in range(1 << 15):
        g = graph_from_code(6, code)
        edges = g.edges()
        two = r_colorable(g, 2)
        assert (two is not None) == brute_two_colorable(6, edges)
        if two is not None:
            assert is_proper_coloring(g, two, 2)
        if code % 7 == 0:
            three = r_colorable(g, 3)
            assert (three is not None) == brute_colorable(6, edges, 3)


def test_r_colorable_random_against_brute_force():
    rng = random.Random(9)
    for _ in range(300):
        n = rng.randint(1, 9)
        edges = [p for p in combinations(range(n), 2) if rng.random() < 0.45]
        g = make_graph(n, edges)
        for r in (2, 3, 4):
            col = r_colorable(g, r)
            assert (col is not None) == brute_colorable(n, edges, r)
            if col is not None:
                assert is_proper_coloring(g, col, r)


def test_r_colorable_budget():
    with pytest.raises(ResourceLimit):
        r_colorable(complete_graph(12), 11, budget=5)


def test_check_stability_examples():
    g = turan_graph(300, 2).without_edges([(0, 150)])
    rep = check_stability(g, 2, ALPHA)
    assert rep.branch == CHROMATIC_BRANCH and rep.m_eps == [] and rep.min_degree == 149
    assert rep.regime == GUARANTEED and verify_report(g, rep)

    g = turan_plus_edge(300, 2)
    rep = check_stability(g, 2, ALPHA)
    assert rep.branch == JOINT_BRANCH
    assert rep.certificate.size == 150 and verify_report(g, rep)
    minjs = next(c for c in rep.checks if c.name == "minjs")
    assert minjs.holds and minjs.value == Fraction(525, 256)

    with pytest.raises(HypothesisViolated):
        check_stability(cycle_graph(5), 2, Fraction(1, 10 ** 5))
    with pytest.raises(HypothesisViolated):
        check_stability(turan_plus_edge(300, 2), 2, Fraction(1, 1000))


def test_measure_both():
    g = turan_graph(300, 2).without_edges([(0, 150)])
    rep = check_stability(g, 2, ALPHA, measure_both=True)
    assert rep.branch == CHROMATIC_BRANCH
    assert rep.diagnostics["jointsize"] == 0


def test_small_graphs_are_out_of_regime_or_validated():
    rep = check_stability(complete_graph(6), 2, ALPHA)
    assert rep.regime != GUARANTEED
    assert rep.branch in (JOINT_BRANCH, OUT_OF_REGIME)
    assert rep.diagnostics["alpha_n2_below_one"]


def test_dichotomy_soundness_desk_scale():
    """200 perturbed T_2(n) instances, n in [260, 400]."""
    for i in range(200):
        n = 260 + (i * 7) % 141
        kind, g = stability_instance(n, 2, ALPHA, seed=i)
        rep = check_stability(g, 2, ALPHA)
        assert rep.branch != OUT_OF_REGIME
        assert verify_report(g, rep)
        if rep.branch == CHROMATIC_BRANCH:
            keep = rep.g0_vertices()
            assert all(rep.coloring[u] != rep.coloring[v] for u, v in g.edges()
                       if u in keep and v in keep)
        else:
            assert rep.certificate.verify(g, limit=10)


def test_verify_report_rejects_tampering():
    g = turan_graph(300, 2).without_edges([(0, 150)])
    rep = check_stability(g, 2, ALPHA)
    rep.coloring = [0] * 300
    assert not verify_report(g, rep)
    rep.branch = OUT_OF_REGIME
    assert not verify_report(g, rep)


def test_report_json_schema():
    rep = check_stability(turan_plus_edge(300, 2), 2, ALPHA)
    doc = json.loads(rep.to_json())
    assert {"alpha", "m_eps", "branch", "coloring", "certificate", "checks"} <= set(doc)
    assert doc["alpha"] == "1/10000"
    assert doc["branch"] == JOINT_BRANCH
    assert doc["certificate"]["size"] == "150"
