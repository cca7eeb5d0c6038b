"""Turán graphs T_r(n) and their edge counts, in exact integer arithmetic."""
from __future__ import annotations

from fractions import Fraction
from math import comb

from .errors import InvalidParam
from .graph import Graph, iter_bits


def class_sizes(n: int, r: int) -> list[int]:
    """Part sizes of T_r(n), larger parts first."""
    if r < 1:
        raise InvalidParam(f"r must be >= 1, got {r}")
    if n < 0:
        raise InvalidParam(f"n must be >= 0, got {n}")
    q, t = divmod(n, r)
    return [q + 1] * t + [q] * (r - t)


def class_ranges(n: int, r: int) -> list[range]:
    out, start = [], 0
    for size in class_sizes(n, r):
        out.append(range(start, start + size))
        start += size
    return out


def turan_graph(n: int, r: int) -> Graph:
    """Complete r-partite graph on contiguous index blocks."""
    full = (1 << n) - 1
    rows = [0] * n
    for part in class_ranges(n, r):
        block = ((1 << len(part)) - 1) << part.start
        for v in part:
            rows[v] = full & ~block
    return Graph(n, tuple(rows))


def turan_number(n: int, r: int) -> int:
    if r < 1:
        raise InvalidParam(f"r must be >= 1, got {r}")
    t = n % r
    value = Fraction(r - 1, 2 * r) * (n * n - t * t) + comb(t, 2)
    assert value.denominator == 1
    return int(value)


def turan_min_degree(n: int, r: int) -> int:
    if r < 1:
        raise InvalidParam(f"r must be >= 1, got {r}")
    return (r - 1) * n // r


def turan_estimate_bounds(n: int, r: int) -> tuple[Fraction, Fraction]:
    """``((r-1)/2r) n^2 - r/8`` and ``((r-1)/2r) n^2``."""
    upper = Fraction(r - 1, 2 * r) * n * n
    return upper - Fraction(r, 8), upper


def is_turan_graph(g: Graph, r: int) -> bool:
    """Whether ``g`` is isomorphic to T_r(g.n).

    Checks the edge count and that the complement splits into cliques whose
    sizes are those of the Turán classes.
    """
    n = g.n
    if g.num_edges != turan_number(n, r):
        return False
    comp = g.complement()
    seen = 0
    sizes = []
    for v in range(n):
        if seen >> v & 1:
            continue
        part = comp.adj[v] | (1 << v)
        for w in iter_bits(part):
            if (comp.adj[w] | (1 << w)) != part:
                return False
        seen |= part
        sizes.append(part.bit_count())
    expected = [s for s in class_sizes(n, r) if s > 0]
    return sorted(sizes) == sorted(expected)


def turan_coloring(n: int, r: int) -> list[int]:
    colors = [0] * n
    for c, part in enumerate(class_ranges(n, r)):
        for v in part:
            colors[v] = c
    return colors
