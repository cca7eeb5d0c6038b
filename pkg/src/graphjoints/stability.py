"""Near-Turán dichotomy: a large book of (r+1)-cliques, or an r-colorable
induced subgraph left after deleting the low-degree vertices.

``epsilon = 2*sqrt(alpha)`` is never materialized; every comparison that
involves it is squared after checking signs.
"""
from __future__ import annotations

import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cliques import find_clique
from .errors import HypothesisViolated, InvalidParam, IsTuranGraph, ResourceLimit
from .graph import Graph, induced_subgraph, iter_bits
from .inequalities import GUARANTEED, EMPIRICAL, BoundReport, eval_bound, exceeds
from .joints import GuaranteeViolated, JointCertificate, extract_joint, find_large_joint, jointsize
from .turan import turan_number

JOINT_BRANCH = "JointBranch"
CHROMATIC_BRANCH = "ChromaticBranch"
OUT_OF_REGIME = "OutOfRegime"

DEFAULT_NODE_BUDGET = 10 ** 7


def low_degree_set(g: Graph, r: int, epsilon_sq: Fraction) -> list[int]:
    """Vertices with ``d(u) <= ((r-1)/r - epsilon) n``, ``epsilon = sqrt(epsilon_sq)``."""
    epsilon_sq = Fraction(epsilon_sq)
    if epsilon_sq <= 0:
        raise InvalidParam("epsilon must be positive")
    n = g.n
    top = Fraction(r - 1, r) * n
    out = []
    for u in range(n):
        slack = top - g.degree(u)  # need epsilon*n <= slack
        if slack >= 0 and epsilon_sq * n * n <= slack * slack:
            out.append(u)
    return out


def aes_condition(g: Graph, r: int) -> bool:
    """K_{r+1}-free with ``δ > (1 - 3/(3r-1)) n``; such graphs are r-colorable."""
    if g.n == 0:
        return False
    if g.min_degree() <= (1 - Fraction(3, 3 * r - 1)) * g.n:
        return False
    return find_clique(g, r + 1) is None


def _components(g: Graph) -> list[int]:
    seen, comps = 0, []
    for v in range(g.n):
        if seen >> v & 1:
            continue
        comp = frontier = 1 << v
        while frontier:
            nxt = 0
            for w in iter_bits(frontier):
                nxt |= g.adj[w]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        comps.append(comp)
    return comps


def r_colorable(g: Graph, r: int, budget: int = DEFAULT_NODE_BUDGET) -> Optional[list[int]]:
    """Exact r-coloring by saturation-ordered backtracking, one component at a time.

    Returns a color list or ``None`` when no proper r-coloring exists; raises
    :class:`ResourceLimit` when the node budget runs out first.
    """
    if r < 1:
        raise InvalidParam(f"r must be >= 1, got {r}")
    colors = [-1] * g.n
    nodes = 0
    sys.setrecursionlimit(max(sys.getrecursionlimit(), g.n + 200))

    for comp in _components(g):
        classes = [0] * r

        def pick(uncolored: int) -> int:
            best, key = -1, (-1, -1)
            for v in iter_bits(uncolored):
                row = g.adj[v]
                sat = sum(1 for c in classes if row & c)
                k = (sat, (row & uncolored).bit_count())
                if k > key:
                    best, key = v, k
            return best

        def solve(uncolored: int, used: int) -> bool:
            nonlocal nodes
            if not uncolored:
                return True
            nodes += 1
            if nodes > budget:
                raise ResourceLimit(f"coloring search exceeded {budget} nodes")
            v = pick(uncolored)
            bit = 1 << v
            row = g.adj[v]
            # a fresh color is only tried once: colors are interchangeable
            for c in range(min(used + 1, r)):
                if row & classes[c]:
                    continue
                classes[c] |= bit
                colors[v] = c
                if solve(uncolored & ~bit, max(used, c + 1)):
                    return True
                classes[c] &= ~bit
                colors[v] = -1
            return False

        if not solve(comp, 0):
            return None
    return colors


def is_proper_coloring(g: Graph, colors: Sequence[int], r: int) -> bool:
    if len(colors) != g.n or any(not 0 <= c < r for c in colors):
        return False
    return all(colors[u] != colors[v] for u, v in g.edges())


@dataclass
class StabilityReport:
    n: int
    r: int
    alpha: Fraction
    m_eps: list[int]
    branch: str
    regime: str
    coloring: Optional[list[int]] = None
    min_degree: Optional[int] = None
    certificate: Optional[JointCertificate] = None
    checks: list[BoundReport] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    @property
    def epsilon_sq(self) -> Fraction:
        return 4 * self.alpha

    def g0_vertices(self) -> list[int]:
        gone = set(self.m_eps)
        return [v for v in range(self.n) if v not in gone]

    def to_dict(self) -> dict:
        return {
            "alpha": f"{self.alpha.numerator}/{self.alpha.denominator}",
            "r": self.r,
            "n": self.n,
            "regime": self.regime,
            "m_eps": self.m_eps,
            "branch": self.branch,
            "coloring": self.coloring,
            "min_degree": self.min_degree,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "checks": [c.to_dict() for c in self.checks],
            "diagnostics": self.diagnostics,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def stability_regime(n: int, r: int, alpha: Fraction) -> str:
    return GUARANTEED if n > r ** 8 and 0 < alpha < Fraction(1, 36 * r ** 8) else EMPIRICAL


def order_check(n: int, g0_order: int, alpha: Fraction, regime: str) -> BoundReport:
    """``|V(G_0)| >= (1 - 2 sqrt(alpha)) n`` as ``n - sqrt(4 alpha n^2)``."""
    radical = 4 * alpha * n * n
    return BoundReport("g0_order", {"n": Fraction(n), "alpha": alpha}, Fraction(n), radical,
                       Fraction(g0_order), exceeds(Fraction(g0_order), Fraction(n), radical, strict=False),
                       regime, strict=False)


def check_stability(g: Graph, r: int, alpha, budget: int = DEFAULT_NODE_BUDGET,
                    measure_both: bool = False) -> StabilityReport:
    alpha = Fraction(alpha)
    n = g.n
    if r < 2:
        raise InvalidParam(f"r must be >= 2, got {r}")
    if not 0 < alpha < Fraction(1, 36 * r ** 8):
        raise HypothesisViolated(f"alpha={alpha} outside (0, 1/(36 r^8))")
    if g.num_edges <= (Fraction(r - 1, 2 * r) - alpha) * n * n:
        raise HypothesisViolated(f"e(G)={g.num_edges} not above ((r-1)/2r - alpha) n^2")
    regime = stability_regime(n, r, alpha)
    m_eps = low_degree_set(g, r, 4 * alpha)
    g0, labels = induced_subgraph(g, (v for v in range(n) if v not in set(m_eps)))
    report = StabilityReport(n, r, alpha, m_eps, OUT_OF_REGIME, regime)
    report.diagnostics["alpha_n2_below_one"] = alpha * n * n < 1

    min_deg = g0.min_degree() if g0.n else 0
    report.min_degree = min_deg
    order = order_check(n, g0.n, alpha, regime)
    mindg = eval_bound("mindg", {"n": n, "r": r, "alpha": alpha}, measured=min_deg, regime=regime)
    report.checks += [order, mindg]
    report.diagnostics["aes"] = aes_condition(g0, r)

    try:
        local = r_colorable(g0, r, budget)
        report.diagnostics["colorable"] = local is not None
    except ResourceLimit:
        local = None
        report.diagnostics["colorable"] = "Unknown"
    if local is not None:
        coloring = [-1] * n
        for i, c in enumerate(local):
            coloring[labels[i]] = c
        report.coloring = coloring
    chromatic_ok = local is not None and g0.n > 0 and order.holds and mindg.holds

    if chromatic_ok and not measure_both:
        report.branch = CHROMATIC_BRANCH
        return report

    size, edge = jointsize(g, r + 1)
    minjs = eval_bound("minjs", {"n": n, "r": r}, measured=size, regime=regime)
    report.checks.append(minjs)
    report.diagnostics["jointsize"] = size
    if edge is not None:
        report.certificate = extract_joint(g, r + 1, edge)
        report.certificate.bound = minjs
    if alpha * n * n < 1 and g.num_edges >= turan_number(n, r):
        try:
            _, ourb = find_large_joint(g, r)
            report.checks.append(ourb)
        except IsTuranGraph:
            report.diagnostics["turan_graph"] = True

    if chromatic_ok:
        report.branch = CHROMATIC_BRANCH
    elif minjs.holds and report.certificate is not None:
        report.branch = JOINT_BRANCH
    elif regime == GUARANTEED:
        raise GuaranteeViolated(f"neither branch validates: {report.to_dict()}")
    return report


def verify_report(g: Graph, report: StabilityReport) -> bool:
    """Independent re-check of whichever branch the report claims."""
    if report.branch == CHROMATIC_BRANCH:
        if report.coloring is None:
            return False
        keep = report.g0_vertices()
        g0, _ = induced_subgraph(g, keep)
        local = [report.coloring[v] for v in keep]
        if not is_proper_coloring(g0, local, report.r):
            return False
        a = report.alpha
        n = g.n
        if (n - g0.n) ** 2 > 4 * a * n * n:
            return False
        slack = Fraction(report.r - 1, report.r) * n - g0.min_degree()
        return slack < 0 or slack * slack < 36 * a * n * n
    if report.branch == JOINT_BRANCH:
        cert = report.certificate
        if cert is None or not cert.verify(g):
            return False
        target = eval_bound("minjs", {"n": g.n, "r": report.r}).value
        return cert.size > target
    return False
