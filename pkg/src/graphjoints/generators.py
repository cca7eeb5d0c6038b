"""Seeded instance generators."""
from __future__ import annotations

from math import comb

from .errors import InvalidParam
from .graph import Graph, make_graph
from .rng import SplitMix64
from .turan import class_ranges, turan_graph, turan_number


def _pick(rng: SplitMix64, pool: list[tuple[int, int]], k: int) -> list[tuple[int, int]]:
    """k distinct members of ``pool``; draws the complement when k > |pool|/2."""
    if k > len(pool):
        raise InvalidParam(f"cannot choose {k} edges from {len(pool)} candidates")
    if 2 * k <= len(pool):
        return [pool[i] for i in rng.sample(len(pool), k)]
    skip = set(rng.sample(len(pool), len(pool) - k))
    return [e for i, e in enumerate(pool) if i not in skip]


def all_pairs(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def gnm(n: int, m: int, seed: int) -> Graph:
    """Uniform graph with exactly ``m`` edges."""
    if n < 0 or not 0 <= m <= comb(n, 2):
        raise InvalidParam(f"need 0 <= m <= C(n,2); got n={n}, m={m}")
    return make_graph(n, _pick(SplitMix64(seed), all_pairs(n), m))


def intra_class_pairs(n: int, r: int) -> list[tuple[int, int]]:
    out = []
    for part in class_ranges(n, r):
        out.extend((u, v) for u in part for v in part if u < v)
    return sorted(out)


def turan_plus_edges(n: int, r: int, extra: int, seed: int) -> Graph:
    """T_r(n) plus ``extra`` distinct edges placed inside classes."""
    base = turan_graph(n, r)
    added = _pick(SplitMix64(seed), intra_class_pairs(n, r), extra)
    return make_graph(n, base.edges() + added)


def turan_perturbed(n: int, r: int, delete: int, add: int, seed: int) -> Graph:
    """T_r(n) with ``delete`` cross edges removed, then ``add`` intra-class edges."""
    rng = SplitMix64(seed)
    base = turan_graph(n, r)
    cross = base.edges()
    gone = set(_pick(rng, cross, delete))
    added = _pick(rng, intra_class_pairs(n, r), add)
    return make_graph(n, [e for e in cross if e not in gone] + added)


def gnm_above_turan(n: int, r: int, seed: int, excess: int = 1) -> Graph:
    return gnm(n, turan_number(n, r) + excess, seed)


GENERATORS = {
    "turan": lambda n, r, seed=0, **_: turan_graph(n, r),
    "turan-plus-edges": lambda n, r, extra=1, seed=0, **_: turan_plus_edges(n, r, extra, seed),
    "gnm": lambda n, m, seed=0, **_: gnm(n, m, seed),
    "turan-perturbed": lambda n, r, delete=0, add=0, seed=0, **_: turan_perturbed(n, r, delete, add, seed),
}


def generate(kind: str, seed: int = 0, **params) -> Graph:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise InvalidParam(f"unknown generator {kind!r}; choose from {sorted(GENERATORS)}") from None
    try:
        return fn(seed=seed, **params)
    except TypeError as exc:
        raise InvalidParam(f"bad parameters for {kind}: {exc}") from None
