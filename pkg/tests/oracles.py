"""Brute-force references.  Nothing here touches the bitset kernels."""
from __future__ import annotations

import math
from itertools import combinations


def edge_set(g):
    return {frozenset(e) for e in g.edges()}


def naive_clique_count(n, edges, s):
    es = {frozenset(e) for e in edges}
    return sum(
        all(frozenset(p) in es for p in combinations(c, 2))
        for c in combinations(range(n), s)
    )


def naive_cliques_on_edge(n, edges, u, v, q):
    es = {frozenset(e) for e in edges}
    others = [w for w in range(n) if w not in (u, v)]
    count = 0
    for rest in combinations(others, q - 2):
        c = (u, v, *rest)
        if all(frozenset(p) in es for p in combinations(c, 2)):
            count += 1
    return count


def naive_jointsize(n, edges, q):
    return max((naive_cliques_on_edge(n, edges, u, v, q) for u, v in edges), default=0)


def max_kfree_edges(n, r):
    """Largest edge count of a K_{r+1}-free graph on n labelled vertices.

    Complete branch and bound over the C(n,2) pairs: every graph is either
    visited or cut off because it cannot beat the best found so far.
    """
    pairs = list(combinations(range(n), 2))
    nbrs = [set() for _ in range(n)]
    best = 0

    def creates_clique(u, v):
        common = nbrs[u] & nbrs[v]
        return any(all(b in nbrs[a] for a, b in combinations(c, 2))
                   for c in combinations(sorted(common), r - 1))

    def rec(i, cur):
        nonlocal best
        if cur + len(pairs) - i <= best:
            return
        if i == len(pairs):
            best = cur
            return
        u, v = pairs[i]
        if not creates_clique(u, v):
            nbrs[u].add(v)
            nbrs[v].add(u)
            rec(i + 1, cur + 1)
            nbrs[u].discard(v)
            nbrs[v].discard(u)
        rec(i + 1, cur)

    rec(0, 0)
    return best


def max_kfree_edges_by_listing(n, r):
    """Same quantity, by listing every labelled graph (only sane for n <= 6)."""
    pairs = list(combinations(range(n), 2))
    best = 0
    for code in range(1 << len(pairs)):
        edges = [p for i, p in enumerate(pairs) if code >> i & 1]
        if len(edges) > best and naive_clique_count(n, edges, r + 1) == 0:
            best = len(edges)
    return best


def direct_intersection_sums(n, sets):
    """S_k by summing |A_{i1} ∩ ... ∩ A_{ik}| over all k-subsets of indices."""
    full = (1 << n) - 1
    out = []
    for k in range(1, len(sets) + 1):
        total = 0
        for idx in combinations(range(len(sets)), k):
            inter = full
            for i in idx:
                inter &= sets[i]
            total += bin(inter).count("1")
        out.append(total)
    return out


def log_bound(name, n, r, c=None):
    """Natural log of the named bound, evaluated in floating point."""
    ln = math.log
    if name == "erdb":
        return (r - 1) * ln(n) - 6 * r * ln(10 * r)
    if name == "lok":
        return ln(2 * c) + ln(r / (r + 1)) + (r + 1) * (ln(n) - ln(r))
    if name == "loj":
        return ln(2 * c) + (r - 1) * (ln(n) - ln(r))
    if name == "cor":
        return ln(c) + (r - 2) * (ln(n) - ln(r))
    if name == "lekd":
        return (r - 1) * ln(n) - (r + 3) * ln(r)
    if name == "ourb":
        return (r - 1) * ln(n) - (r + 5) * ln(r)
    if name == "minjs":
        return ln(1 - 1 / r ** 3) + (r - 1) * ln(n) - (r + 5) * ln(r)
    raise KeyError(name)


def brute_two_colorable(n, edges):
    for code in range(1 << n):
        if all((code >> u & 1) != (code >> v & 1) for u, v in edges):
            return True
    return False


def brute_colorable(n, edges, r):
    def rec(i, colors):
        if i == n:
            return True
        for c in range(r):
            if all(colors[w] != c for w in range(i) if (min(w, i), max(w, i)) in es):
                colors.append(c)
                if rec(i + 1, colors):
                    return True
                colors.pop()
        return False

    es = {(min(u, v), max(u, v)) for u, v in edges}
    return rec(0, [])


def graphs_with_min_degree(n, r, need):
    """Every labelled K_{r+1}-free graph on n vertices with minimum degree >= need.

    Edges are decided in pair order; a branch dies as soon as it creates a
    K_{r+1} or leaves some vertex unable to reach ``need``.
    """
    pairs = list(combinations(range(n), 2))
    # pairs still undecided that touch each vertex, from position i onwards
    left = [[0] * n for _ in range(len(pairs) + 1)]
    for i in range(len(pairs) - 1, -1, -1):
        left[i] = left[i + 1][:]
        for x in pairs[i]:
            left[i][x] += 1
    nbrs = [set() for _ in range(n)]
    chosen = []

    def creates_clique(u, v):
        common = sorted(nbrs[u] & nbrs[v])
        return any(all(b in nbrs[a] for a, b in combinations(c, 2))
                   for c in combinations(common, r - 1))

    def rec(i):
        if any(len(nbrs[x]) + left[i][x] < need for x in range(n)):
            return
        if i == len(pairs):
            yield list(chosen)
            return
        u, v = pairs[i]
        if not creates_clique(u, v):
            nbrs[u].add(v)
            nbrs[v].add(u)
            chosen.append((u, v))
            yield from rec(i + 1)
            chosen.pop()
            nbrs[u].discard(v)
            nbrs[v].discard(u)
        yield from rec(i + 1)

    yield from rec(0)
