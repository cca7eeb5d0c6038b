"""Exact clique counting over bit-row adjacency.

Small orders (s <= 4) use plain increasing-index enumeration that stops at
pairs.  Everything else uses pivot-based succinct clique trees: every leaf of the search
carries ``h`` held vertices and ``p`` pivot vertices and stands for all
``C(p, s - h)`` cliques of order ``s`` built from the held set plus any
subset of the pivots.  Nothing is materialized.
"""
from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Optional, Sequence

from .errors import InvalidParam, NotAnEdge
from .graph import Graph, iter_bits


def _leaves(adj: Sequence[int], cand: int, max_held: int | None = None) -> Counter:
    """Counter of ``(held, pivots)`` over the leaves of the clique tree on ``cand``."""
    leaves: Counter = Counter()

    def walk(cand: int, held: int, piv: int) -> None:
        if max_held is not None and held > max_held:
            return
        if not cand:
            leaves[(held, piv)] += 1
            return
        pivot, best = -1, -1
        for v in iter_bits(cand):
            c = (adj[v] & cand).bit_count()
            if c > best:
                pivot, best = v, c
        walk(adj[pivot] & cand, held, piv + 1)
        rest = cand & ~adj[pivot] & ~(1 << pivot)
        remaining = cand & ~(1 << pivot)
        for v in iter_bits(rest):
            walk(adj[v] & remaining, held + 1, piv)
            remaining &= ~(1 << v)

    walk(cand, 0, 0)
    return leaves


def count_cliques_in(adj: Sequence[int], mask: int, s: int) -> int:
    """Number of s-cliques inside the vertex set ``mask``; ``s = 0`` gives 1."""
    if s < 0:
        return 0
    if s == 0:
        return 1
    if s == 1:
        return mask.bit_count()
    if s == 2:
        return sum((adj[v] & mask).bit_count() for v in iter_bits(mask)) // 2
    if s <= 4:
        return _count_ordered(adj, mask, s)
    total = 0
    for (held, piv), mult in _leaves(adj, mask, max_held=s).items():
        total += mult * comb(piv, s - held)
    return total


def _count_ordered(adj: Sequence[int], cand: int, s: int) -> int:
    """Increasing-index enumeration down to pairs, closed with popcounts."""
    if s == 2:
        return sum((adj[v] & cand).bit_count() for v in iter_bits(cand)) // 2
    total = 0
    while cand:
        low = cand & -cand
        cand ^= low
        total += _count_ordered(adj, adj[low.bit_length() - 1] & cand, s - 1)
    return total


def count_cliques(g: Graph, s: int) -> int:
    if s < 1:
        raise InvalidParam(f"clique order must be >= 1, got {s}")
    if s > g.n:
        return 0
    return count_cliques_in(g.adj, g.full_mask, s)


@dataclass(frozen=True)
class CliqueSpectrum:
    """``counts[s - 1] = k_s(G)`` for ``1 <= s <= omega``."""

    counts: tuple[int, ...]

    @property
    def omega(self) -> int:
        return len(self.counts)

    def k(self, s: int) -> int:
        if s == 0:
            return 1
        if 1 <= s <= len(self.counts):
            return self.counts[s - 1]
        return 0


def clique_spectrum(g: Graph) -> CliqueSpectrum:
    totals: Counter = Counter()
    for (held, piv), mult in _leaves(g.adj, g.full_mask).items():
        for extra in range(piv + 1):
            totals[held + extra] += mult * comb(piv, extra)
    omega = max((s for s, c in totals.items() if c and s > 0), default=0)
    return CliqueSpectrum(tuple(totals[s] for s in range(1, omega + 1)))


def iter_cliques_in(adj: Sequence[int], mask: int, s: int) -> Iterator[list[int]]:
    """All s-cliques inside ``mask`` in lexicographic order."""
    if s <= 0:
        yield []
        return

    def rec(cand: int, need: int, chosen: list[int]) -> Iterator[list[int]]:
        if need == 0:
            yield chosen
            return
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            yield from rec(adj[v] & cand, need - 1, chosen + [v])

    yield from rec(mask, s, [])


def find_clique_in(adj: Sequence[int], mask: int, s: int) -> Optional[list[int]]:
    """Lexicographically smallest s-clique inside ``mask`` (increasing-index DFS)."""
    if s <= 0:
        return []

    def dfs(cand: int, need: int, chosen: list[int]) -> Optional[list[int]]:
        if need == 0:
            return chosen
        while cand and cand.bit_count() >= need:
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            found = dfs(adj[v] & cand, need - 1, chosen + [v])
            if found is not None:
                return found
        return None

    return dfs(mask, s, [])


def find_clique(g: Graph, s: int) -> Optional[list[int]]:
    if s < 1:
        raise InvalidParam(f"clique order must be >= 1, got {s}")
    return find_clique_in(g.adj, g.full_mask, s)


def edge_clique_count(g: Graph, u: int, v: int, q: int) -> int:
    """Number of q-cliques of ``g`` containing the edge ``uv``."""
    if q < 2:
        raise InvalidParam(f"clique order must be >= 2, got {q}")
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NotAnEdge(f"({u}, {v}) is not an edge")
    return count_cliques_in(g.adj, g.adj[u] & g.adj[v], q - 2)


@dataclass(frozen=True)
class MoonMoserRow:
    s: int
    t: int
    lhs: Fraction
    rhs: Fraction
    holds: bool


def _ratio_term(spec: CliqueSpectrum, n: int, s: int) -> Fraction:
    return Fraction((s + 1) * spec.k(s + 1), s * spec.k(s)) - Fraction(n, s)


def moon_moser_report(g: Graph, spectrum: CliqueSpectrum | None = None) -> list[MoonMoserRow]:
    """Evaluate the consecutive clique-ratio inequality for all ``omega > s > t >= 1``."""
    spec = spectrum if spectrum is not None else clique_spectrum(g)
    q = spec.omega
    rows = []
    for s in range(2, q):
        lhs = _ratio_term(spec, g.n, s)
        for t in range(1, s):
            rhs = _ratio_term(spec, g.n, t)
            rows.append(MoonMoserRow(s, t, lhs, rhs, lhs >= rhs))
    return rows


MOON_MOSER_COLUMNS = ("s", "t", "lhs_num", "lhs_den", "rhs_num", "rhs_den", "holds")


def moon_moser_csv(rows: Sequence[MoonMoserRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(MOON_MOSER_COLUMNS)
    for row in rows:
        w.writerow([row.s, row.t, row.lhs.numerator, row.lhs.denominator,
                    row.rhs.numerator, row.rhs.denominator, str(row.holds).lower()])
    return buf.getvalue()
