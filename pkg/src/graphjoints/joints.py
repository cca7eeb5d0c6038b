"""Books of cliques on a common edge: exact jointsize, certificates, and the
constructive search for a large one in graphs above the Turán number.

Only the ``(2, q, 2)`` case is computed: a base edge ``uv`` plus ``t``
q-cliques through it.
"""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional, Sequence

from .cliques import count_cliques_in, edge_clique_count, find_clique, iter_cliques_in
from .errors import (HypothesisViolated, IndivisibleOrder, InvalidParam, IsTuranGraph,
                     NotAClique)
from .graph import Graph, induced_subgraph, iter_bits, peel, remove_vertex
from .inequalities import GUARANTEED, BoundReport, eval_bound, regime_for
from .turan import class_ranges, is_turan_graph, turan_graph, turan_min_degree, turan_number


class GuaranteeViolated(AssertionError):
    """A conclusion asserted in the guaranteed regime failed on a concrete input."""


@dataclass
class JointCertificate:
    q: int
    base_edge: tuple[int, int]
    size: int
    cliques: Optional[list[list[int]]] = None
    bound: Optional[BoundReport] = None
    p: int = 2
    r_overlap: int = 2

    def verify(self, g: Graph, limit: Optional[int] = None) -> bool:
        u, v = self.base_edge
        if not g.has_edge(u, v):
            return False
        if self.size != edge_clique_count(g, u, v, self.q):
            return False
        if self.cliques is None:
            return True
        seen = set()
        for c in self.cliques:
            key = tuple(sorted(c))
            if len(key) != self.q or u not in key or v not in key or not g.is_clique(key):
                return False
            seen.add(key)
        if len(seen) != len(self.cliques):
            return False
        return limit is None or len(self.cliques) == min(self.size, limit)

    def to_dict(self) -> dict:
        bound = None
        if self.bound is not None:
            bound = {
                "name": self.bound.name,
                "numerator": str(self.bound.value.numerator),
                "denominator": str(self.bound.value.denominator),
                "holds": self.bound.holds,
                "regime": self.bound.regime,
            }
        return {
            "p": self.p,
            "q": self.q,
            "r_overlap": self.r_overlap,
            "base_edge": list(self.base_edge),
            "size": str(self.size),
            "cliques": self.cliques if self.cliques is not None else [],
            "bound": bound,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def _clique_upper_bound(adj: Sequence[int], mask: int, s: int) -> int:
    """Cheap upper bound on the s-cliques inside ``mask``.

    ``s * k_s <= sum_w C(deg_M(w), s - 1)``: each clique is counted once per member.
    """
    if s <= 1:
        return mask.bit_count() if s == 1 else 1
    total = 0
    for w in iter_bits(mask):
        total += comb((adj[w] & mask).bit_count(), s - 1)
    return total // s


def _best_edge(g: Graph, q: int, edges: Sequence[tuple[int, int]]) -> tuple[int, Optional[tuple[int, int]]]:
    adj, s = g.adj, q - 2
    if not edges:
        return 0, None
    # Seed with the edge of largest common neighbourhood so later edges can be skipped
    # by the bounds; ties are settled towards the lexicographically smaller edge.
    seed = max(edges, key=lambda e: ((adj[e[0]] & adj[e[1]]).bit_count(), -e[0], -e[1]))
    best = count_cliques_in(adj, adj[seed[0]] & adj[seed[1]], s)
    witness = seed if best else None
    for u, v in edges:
        if (u, v) == seed:
            continue
        m = adj[u] & adj[v]
        if witness is None:
            need = 1
        else:
            need = best if (u, v) < witness else best + 1
        if comb(m.bit_count(), s) < need or _clique_upper_bound(adj, m, s) < need:
            continue
        c = count_cliques_in(adj, m, s)
        if c > best or (c == best and c and (witness is None or (u, v) < witness)):
            best, witness = c, (u, v)
    return best, witness


def jointsize(g: Graph, q: int, workers: int = 1) -> tuple[int, Optional[tuple[int, int]]]:
    """Largest number of q-cliques sharing one edge, with the lexicographically
    smallest edge attaining it (``None`` when the maximum is 0)."""
    if q < 3:
        raise InvalidParam(f"jointsize needs q >= 3, got {q}")
    edges = g.edges()
    if workers <= 1 or len(edges) < 2 * workers:
        return _best_edge(g, q, edges)
    chunk = -(-len(edges) // workers)
    parts = [edges[i:i + chunk] for i in range(0, len(edges), chunk)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_best_edge, [g] * len(parts), [q] * len(parts), parts))
    # parts are in edge order, so the first strict maximum is the smallest edge
    best, witness = 0, None
    for size, edge in results:
        if size > best:
            best, witness = size, edge
    return best, witness


def extract_joint(g: Graph, q: int, edge: tuple[int, int], limit: int = 10) -> JointCertificate:
    u, v = edge
    size = edge_clique_count(g, u, v, q)
    cliques = []
    if limit > 0:
        for rest in iter_cliques_in(g.adj, g.adj[u] & g.adj[v], q - 2):
            cliques.append(sorted([u, v, *rest]))
            if len(cliques) >= limit:
                break
    return JointCertificate(q=q, base_edge=(min(u, v), max(u, v)), size=size, cliques=cliques)


MIN_DEGREE_CASE = "MinDegreeCase"
DENSITY_CASE = "DensityCase"


def reduction_beta(r: int) -> Fraction:
    return Fraction(1, r * r * (r * r - 1))


@dataclass
class ReductionOutcome:
    """Induced subgraph G' left after peeling, with the property checks.

    ``labels[i]`` is the vertex of the input graph that became vertex ``i``.
    """

    subgraph: Graph
    labels: list[int]
    n: int
    r: int
    case: str
    beta: Fraction
    k: int
    removed: int
    prop3: bool
    prop4: bool
    order_ok: bool
    regime: str
    clique: Optional[list[int]] = field(default=None, repr=False)

    @property
    def n_prime(self) -> int:
        return self.subgraph.n

    @property
    def tagged_holds(self) -> bool:
        prop = self.prop3 if self.case == MIN_DEGREE_CASE else self.prop4
        return prop and self.order_ok

    def to_dict(self) -> dict:
        return {
            "n": self.n, "r": self.r, "n_prime": self.n_prime, "case": self.case,
            "beta": str(self.beta), "k": self.k, "removed": self.removed,
            "prop3": self.prop3, "prop4": self.prop4, "order_ok": self.order_ok,
            "tagged_holds": self.tagged_holds, "regime": self.regime,
            "labels": self.labels,
        }


def check_prop3(g: Graph, r: int) -> tuple[bool, Optional[list[int]]]:
    """K_{r+1} present and δ > ((r-1)/r - β)·n."""
    if g.n == 0:
        return False, None
    clique = find_clique(g, r + 1)
    ok = clique is not None and g.min_degree() > (Fraction(r - 1, r) - reduction_beta(r)) * g.n
    return ok, clique


def check_prop4(g: Graph, r: int) -> bool:
    """e > ((r-1)/2r + 1/(r^4 (r^2-1)))·n^2."""
    coeff = Fraction(r - 1, 2 * r) + Fraction(1, r ** 4 * (r * r - 1))
    return g.num_edges > coeff * g.n * g.n


def thexj_reduce(g: Graph, r: int, strict: bool = True) -> ReductionOutcome:
    """Peel minimum-degree vertices and cut at the first vertex whose degree
    beats ``((r-1)/r - β)`` times the current order.

    ``k`` counts the leading peel steps whose removed degree was at most that
    threshold.  If ``k > n/r^2`` the result is ``G_l`` with ``l = floor(n/r^2)``
    (dense case), otherwise ``G_k`` (min-degree case).  With ``strict`` the
    tagged property is enforced when ``n > r^8``.
    """
    if r < 2:
        raise InvalidParam(f"r must be >= 2, got {r}")
    n = g.n
    if g.num_edges <= turan_number(n, r):
        raise HypothesisViolated(f"e(G)={g.num_edges} does not exceed t_{r}({n})={turan_number(n, r)}")
    beta = reduction_beta(r)
    slope = Fraction(r - 1, r) - beta
    trace = peel(g)
    k = 0
    while k < n and trace.degrees[k] <= slope * (n - k):
        k += 1
    if k * r * r > n:
        case, removed = DENSITY_CASE, n // (r * r)
    else:
        case, removed = MIN_DEGREE_CASE, k
    sub, labels = induced_subgraph(g, trace.order[removed:])
    prop3, clique = check_prop3(sub, r)
    prop4 = check_prop4(sub, r)
    order_ok = sub.n * r * r > (r * r - 1) * n
    outcome = ReductionOutcome(sub, labels, n, r, case, beta, k, removed, prop3, prop4,
                               order_ok, regime_for(n, r), clique)
    if strict and outcome.regime == GUARANTEED and not outcome.tagged_holds:
        raise GuaranteeViolated(f"reduction outcome fails its property: {outcome.to_dict()}")
    return outcome


def lekd_edge(g: Graph, r: int, clique: Sequence[int]) -> tuple[int, int, int]:
    """Edge of the (r+1)-clique whose endpoints share the most neighbors.

    Returns ``(u, v, M)`` with ``M`` the common neighborhood as a bit row;
    ties go to the lexicographically smallest pair.
    """
    members = sorted(clique)
    if len(members) != r + 1 or not g.is_clique(members):
        raise NotAClique(f"{members} does not induce K_{r + 1}")
    best = None
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            m = g.adj[u] & g.adj[v]
            if best is None or m.bit_count() > best[2].bit_count():
                best = (u, v, m)
    return best


def find_large_joint(g: Graph, r: int, limit: int = 10) -> tuple[JointCertificate, BoundReport]:
    """Build a (2, r+1, 2)-joint by the peel/clique route and check it against
    ``n^{r-1}/r^{r+5}``.

    The certificate edge is lifted back to ``g``'s labels and its size is the
    exact number of (r+1)-cliques of ``g`` on that edge.
    """
    if r < 2:
        raise InvalidParam(f"r must be >= 2, got {r}")
    n = g.n
    t = turan_number(n, r)
    e = g.num_edges
    if e < t:
        raise HypothesisViolated(f"e(G)={e} is below t_{r}({n})={t}")
    if is_turan_graph(g, r):
        raise IsTuranGraph(f"G is T_{r}({n})")

    host, lift = g, list(range(n))
    route = "reduce"
    if e == t:
        low = [u for u in range(n) if g.degree(u) < turan_min_degree(n, r)]
        if low:
            host, lift = remove_vertex(g, low[0])
            route = "reduce-after-deleting-low-degree-vertex"
        else:
            route = "min-degree-direct"

    if route == "min-degree-direct":
        edge = _lekd_route(host, r)
    else:
        outcome = thexj_reduce(host, r, strict=False)
        sub = outcome.subgraph
        edge = None
        if outcome.case == MIN_DEGREE_CASE and outcome.clique is not None:
            u, v, _ = lekd_edge(sub, r, outcome.clique)
            edge = (u, v)
            route += "/min-degree"
        elif outcome.case == DENSITY_CASE:
            _, edge = jointsize(sub, r + 1)
            route += "/density"
        if edge is not None:
            edge = (outcome.labels[edge[0]], outcome.labels[edge[1]])
    if edge is None:
        # empirical regime only: the reduced graph carried no K_{r+1}
        _, edge = jointsize(host, r + 1)
        route += "/fallback-exact"
        if edge is None:
            edge = _lekd_route(host, r)
    u, v = sorted((lift[edge[0]], lift[edge[1]]))
    cert = extract_joint(g, r + 1, (u, v), limit)
    report = eval_bound("ourb", {"n": n, "r": r}, measured=cert.size)
    report = BoundReport(report.name, report.inputs, report.value, report.radical, report.measured,
                         report.holds, report.regime, report.strict, note=f"route={route}")
    cert.bound = report
    if report.regime == GUARANTEED and not report.holds:
        raise GuaranteeViolated(f"certificate of size {cert.size} misses n^(r-1)/r^(r+5) for n={n}, r={r}")
    return cert, report


def _lekd_route(g: Graph, r: int) -> Optional[tuple[int, int]]:
    clique = find_clique(g, r + 1)
    if clique is None:
        return None
    u, v, _ = lekd_edge(g, r, clique)
    return u, v


def turan_plus_edge(n: int, r: int) -> Graph:
    """T_r(n) with one extra edge inside its first (largest) class."""
    first = class_ranges(n, r)[0]
    if len(first) < 2:
        raise InvalidParam(f"T_{r}({n}) has no class with two vertices")
    base = turan_graph(n, r)
    a, b = first[0], first[1]
    rows = list(base.adj)
    rows[a] |= 1 << b
    rows[b] |= 1 << a
    return Graph(n, tuple(rows))


def tightness_ratio(n: int, r: int, check_divisible: bool = True) -> Fraction:
    """jointsize(T_r(n) + one intra-class edge) / (n^{r-1}/r^{r+5})."""
    if r < 2:
        raise InvalidParam(f"r must be >= 2, got {r}")
    if check_divisible and n % r:
        raise IndivisibleOrder(f"{r} does not divide {n}")
    size, _ = jointsize(turan_plus_edge(n, r), r + 1)
    return Fraction(size) / eval_bound("ourb", {"n": n, "r": r}).value
