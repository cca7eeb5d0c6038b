"""Dense simple graphs stored as integer bit rows.

Row ``adj[u]`` has bit ``v`` set iff ``uv`` is an edge.  Python integers give
word-wise AND and ``bit_count`` for free, which is the only kernel the clique
and joint code needs.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import FormatError, InvalidVertex, SelfLoop


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency must have exactly n rows")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, u: int) -> int:
        return self.adj[u].bit_count()

    def degrees(self) -> list[int]:
        return [row.bit_count() for row in self.adj]

    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    @property
    def num_edges(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return u != v and bool(self.adj[u] >> v & 1)

    def neighbors(self, u: int) -> list[int]:
        return list(iter_bits(self.adj[u]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            out.extend((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))
        return out

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        if len(set(vs)) != len(vs) or any(not 0 <= v < self.n for v in vs):
            return False
        m = mask_of(vs)
        return all(m & ~(1 << v) & ~self.adj[v] == 0 for v in vs)

    def with_edges(self, extra: Iterable[tuple[int, int]]) -> "Graph":
        return make_graph(self.n, list(self.edges()) + list(extra))

    def without_edges(self, removed: Iterable[tuple[int, int]]) -> "Graph":
        gone = {(min(u, v), max(u, v)) for u, v in removed}
        return make_graph(self.n, [e for e in self.edges() if e not in gone])

    def complement(self) -> "Graph":
        full = self.full_mask
        return Graph(self.n, tuple(full & ~row & ~(1 << u) for u, row in enumerate(self.adj)))

    def check_invariants(self) -> None:
        for u, row in enumerate(self.adj):
            if row >> u & 1:
                raise AssertionError(f"self-loop at {u}")
            if row >> self.n:
                raise AssertionError(f"row {u} has bits beyond n")
            for v in iter_bits(row):
                if not self.adj[v] >> u & 1:
                    raise AssertionError(f"asymmetric pair {u},{v}")
        if sum(row.bit_count() for row in self.adj) % 2:
            raise AssertionError("odd degree sum")


def _check_vertex(n: int, v: int) -> None:
    if not isinstance(v, int) or not 0 <= v < n:
        raise InvalidVertex(f"vertex {v!r} out of range for n={n}")


def make_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    if n < 0:
        raise InvalidVertex(f"negative vertex count {n}")
    rows = [0] * n
    for u, v in edges:
        _check_vertex(n, u)
        _check_vertex(n, v)
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, tuple(full & ~(1 << u) for u in range(n)))


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)


def cycle_graph(n: int) -> Graph:
    return make_graph(n, [(i, (i + 1) % n) for i in range(n)])


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induce on ``vertices``; returns the subgraph and ``labels`` with
    ``labels[new] = old`` (sorted order of the input set is preserved)."""
    keep = sorted(set(vertices))
    for v in keep:
        _check_vertex(g.n, v)
    rows = []
    for old in keep:
        row = g.adj[old]
        new_row = 0
        for new, w in enumerate(keep):
            if row >> w & 1:
                new_row |= 1 << new
        rows.append(new_row)
    return Graph(len(keep), tuple(rows)), keep


def remove_vertex(g: Graph, u: int) -> tuple[Graph, list[int]]:
    _check_vertex(g.n, u)
    return induced_subgraph(g, (v for v in range(g.n) if v != u))


def common_neighborhood(g: Graph, u: int, v: int) -> int:
    """Bit row of Γ(u) ∩ Γ(v)."""
    _check_vertex(g.n, u)
    _check_vertex(g.n, v)
    if u == v:
        raise SelfLoop(f"common neighborhood of {u} with itself")
    return g.adj[u] & g.adj[v]


@dataclass(frozen=True)
class PeelTrace:
    """Min-degree removal order.

    ``degrees[i]`` is the degree of ``order[i]`` in ``G_i`` (the graph left after
    removing ``order[:i]``), which equals ``δ(G_i)``; ``edges_remaining[i]`` is
    ``e(G_i)``.
    """

    order: tuple[int, ...]
    degrees: tuple[int, ...]
    edges_remaining: tuple[int, ...]

    def remaining_vertices(self, i: int) -> list[int]:
        """Vertex set of ``G_i`` in increasing order."""
        return sorted(self.order[i:])


def peel(g: Graph) -> PeelTrace:
    """Repeatedly delete a minimum-degree vertex, lowest index on ties."""
    deg = g.degrees()
    alive = g.full_mask
    edges = g.num_edges
    order, degrees, remaining = [], [], []
    for _ in range(g.n):
        best = -1
        best_deg = g.n
        for v in iter_bits(alive):
            if deg[v] < best_deg:
                best, best_deg = v, deg[v]
        order.append(best)
        degrees.append(best_deg)
        remaining.append(edges)
        alive &= ~(1 << best)
        for w in iter_bits(g.adj[best] & alive):
            deg[w] -= 1
        edges -= best_deg
    return PeelTrace(tuple(order), tuple(degrees), tuple(remaining))


def format_edge_list(g: Graph) -> str:
    edges = g.edges()
    lines = [f"{g.n} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise FormatError(f"expected two integers, got {raw!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise FormatError(f"non-integer token in {raw!r}") from exc
    if not rows:
        raise FormatError("missing header line 'n m'")
    (n, m), edges = rows[0], rows[1:]
    if len(edges) != m:
        raise FormatError(f"header announces {m} edges, found {len(edges)}")
    return make_graph(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(g: Graph, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(g))


def subgraph_edges(g: Graph, vertices: Sequence[int]) -> int:
    m = mask_of(vertices)
    return sum((g.adj[v] & m).bit_count() for v in vertices) // 2
