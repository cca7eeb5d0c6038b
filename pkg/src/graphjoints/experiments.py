"""Experiment suites behind ``graphjoints verify``.

Each suite expands its config into independent tasks, runs them (optionally in
a process pool), sorts the rows by ``(seed, n)`` and reports pass/fail.
"""
from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from fractions import Fraction
from itertools import product
from math import comb
from pathlib import Path
from typing import Callable, Optional

from .cliques import clique_spectrum, count_cliques, moon_moser_report
from .errors import InvalidParam
from .generators import gnm_above_turan, intra_class_pairs, turan_perturbed, turan_plus_edges
from .graph import Graph
from .inequalities import EMPIRICAL, eval_bound, sums_from_degrees, typms_lower_bound
from .joints import find_large_joint, jointsize, thexj_reduce, tightness_ratio
from .stability import check_stability, verify_report
from .turan import turan_estimate_bounds, turan_graph, turan_min_degree, turan_number


@dataclass
class ExperimentConfig:
    experiment: str
    r: Optional[int] = None
    n: Optional[int] = None
    n_range: Optional[list[int]] = None
    r_range: Optional[list[int]] = None
    seeds: int = 1
    seed: int = 0
    alpha: Fraction = Fraction(1, 10 ** 4)
    output: Optional[str] = None
    format: str = "csv"
    threads: int = 1
    timestamp: bool = True

    def __post_init__(self) -> None:
        if self.seeds < 1:
            raise InvalidParam("seed count must be >= 1")
        if self.n_range is not None and not self.n_range:
            raise InvalidParam("empty n range")
        if self.r_range is not None and not self.r_range:
            raise InvalidParam("empty r range")
        if self.format not in ("csv", "json"):
            raise InvalidParam(f"unknown format {self.format!r}")

    def ns(self, default: list[int]) -> list[int]:
        if self.n_range is not None:
            return self.n_range
        if self.n is not None:
            return [self.n]
        return default

    def rs(self, default: list[int]) -> list[int]:
        if self.r_range is not None:
            return self.r_range
        if self.r is not None:
            return [self.r]
        return default


@dataclass
class ExperimentResult:
    name: str
    columns: list[str]
    rows: list[dict]
    failures: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_csv(self, timestamp: bool = False) -> str:
        buf = io.StringIO()
        if timestamp:
            buf.write(f"# generated {datetime.now(timezone.utc).isoformat()}\n")
        w = csv.DictWriter(buf, fieldnames=self.columns, extrasaction="ignore", lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: _cell(v) for k, v in row.items()})
        return buf.getvalue()

    def to_json(self, timestamp: bool = False) -> str:
        doc = {"experiment": self.name, "passed": self.passed,
               "rows": [{k: _cell(v) for k, v in row.items()} for row in self.rows],
               "failures": self.failures}
        if timestamp:
            doc = {"generated": datetime.now(timezone.utc).isoformat(), **doc}
        return json.dumps(doc, indent=2)


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, Fraction):
        return str(v)
    return v


def _map(fn: Callable, tasks: list[dict], threads: int) -> list[dict]:
    if threads <= 1 or len(tasks) < 2:
        return [fn(**t) for t in tasks]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(_call, [fn] * len(tasks), tasks))


def _call(fn, kwargs):
    return fn(**kwargs)


def _finish(name: str, columns: list[str], rows: list[dict], ok_key: str = "holds") -> ExperimentResult:
    rows = sorted(rows, key=lambda row: (row.get("seed", 0), row.get("n", 0), row.get("r", 0)))
    failures = [row for row in rows if not row.get(ok_key, True)]
    return ExperimentResult(name, columns, rows, failures)


# --- verify-turan -------------------------------------------------------------

def _turan_row(n: int, r: int) -> dict:
    t = turan_number(n, r)
    g = turan_graph(n, r)
    low, high = turan_estimate_bounds(n, r)
    checks = {
        "graph_edges": g.num_edges == t,
        "min_degree": n == 0 or g.min_degree() == turan_min_degree(n, r),
        "recurrence": n == 0 or t == turan_number(n - 1, r) + turan_min_degree(n, r),
        "estimate": low <= t <= high,
    }
    return {"n": n, "r": r, "t": t, **checks, "holds": all(checks.values())}


def verify_turan(cfg: ExperimentConfig) -> ExperimentResult:
    tasks = [{"n": n, "r": r} for r in cfg.rs(list(range(1, 13))) for n in cfg.ns(list(range(0, 201)))]
    rows = _map(_turan_row, tasks, cfg.threads)
    return _finish("verify-turan", ["n", "r", "t", "graph_edges", "min_degree", "recurrence",
                                    "estimate", "holds"], rows)


# --- verify-turj --------------------------------------------------------------

def _turj_row(n: int, r: int, seed: int) -> dict:
    g = gnm_above_turan(n, r, seed)
    js, witness = jointsize(g, r + 1)
    cert, report = find_large_joint(g, r)
    bound = report.value
    return {
        "seed": seed, "n": n, "r": r, "m": g.num_edges, "jointsize": js,
        "witness": "" if witness is None else f"{witness[0]}-{witness[1]}",
        "certificate_size": cert.size, "route": report.note.removeprefix("route="),
        "bound_num": bound.numerator, "bound_den": bound.denominator,
        "jointsize_holds": js > bound, "certificate_holds": bool(report.holds),
        "certificate_verified": cert.verify(g, 10) and cert.size <= js,
        "regime": report.regime,
        "holds": js > bound and bool(report.holds) and cert.verify(g, 10) and cert.size <= js,
    }


def verify_turj(cfg: ExperimentConfig) -> ExperimentResult:
    tasks = [{"n": n, "r": r, "seed": cfg.seed + i}
             for r in cfg.rs([2]) for n in cfg.ns([300]) for i in range(cfg.seeds)]
    rows = _map(_turj_row, tasks, cfg.threads)
    return _finish("verify-turj", ["seed", "n", "r", "m", "jointsize", "witness", "certificate_size",
                                   "route", "bound_num", "bound_den", "jointsize_holds",
                                   "certificate_holds", "certificate_verified", "regime", "holds"], rows)


# --- empirical-joints (below the guaranteed order) -----------------------------

def dense_instance(n: int, r: int, seed: int) -> Graph:
    """T_r(n) plus half of all intra-class pairs, so min degree clears (r-1)n/r."""
    pairs = len(intra_class_pairs(n, r))
    return turan_plus_edges(n, r, pairs // 2, seed)


def _empirical_row(n: int, r: int, seed: int, kind: str) -> dict:
    g = gnm_above_turan(n, r, seed) if kind == "gnm" else dense_instance(n, r, seed)
    js, _ = jointsize(g, r + 1)
    cert, report = find_large_joint(g, r)
    row = {"seed": seed, "n": n, "r": r, "kind": kind, "m": g.num_edges, "jointsize": js,
           "certificate_size": cert.size, "certificate_verified": cert.verify(g, 10),
           "ourb_holds": bool(report.holds), "regime": report.regime}
    slack = Fraction(g.min_degree(), n) - Fraction(r - 1, r)
    row["cor_hypothesis"] = slack > 0
    cor_ok = True
    if slack > 0:
        c = slack / 2
        inputs = {"n": n, "r": r, "c": c}
        k = count_cliques(g, r + 1)
        row["c"] = c
        row["cor_k_holds"] = bool(eval_bound("cor_k", inputs, measured=k, regime=EMPIRICAL).holds)
        row["cor_js_holds"] = bool(eval_bound("cor", inputs, measured=js, regime=EMPIRICAL).holds)
        row["cor_strong_holds"] = bool(eval_bound("cor_strong", inputs, measured=js, regime=EMPIRICAL).holds)
        cor_ok = row["cor_k_holds"] and row["cor_js_holds"]
    row["holds"] = cert.size <= js and row["certificate_verified"] and cor_ok
    return row


def empirical_joints(cfg: ExperimentConfig) -> ExperimentResult:
    ns = cfg.ns(list(range(60, 121, 12)))
    tasks = []
    for r in cfg.rs([3]):
        for i in range(cfg.seeds):
            kind = "gnm" if i % 2 == 0 else "dense"
            tasks.append({"n": ns[i % len(ns)], "r": r, "seed": cfg.seed + i, "kind": kind})
    rows = _map(_empirical_row, tasks, cfg.threads)
    return _finish("empirical-joints", ["seed", "n", "r", "kind", "m", "jointsize", "certificate_size",
                                        "certificate_verified", "ourb_holds", "cor_hypothesis", "c",
                                        "cor_k_holds", "cor_js_holds", "cor_strong_holds",
                                        "regime", "holds"], rows)


# --- thexj-trace --------------------------------------------------------------

def _thexj_row(n: int, r: int, seed: int) -> dict:
    g = gnm_above_turan(n, r, seed)
    out = thexj_reduce(g, r, strict=False)
    return {"seed": seed, "n": n, "r": r, "case": out.case, "k": out.k, "removed": out.removed,
            "n_prime": out.n_prime, "prop3": out.prop3, "prop4": out.prop4,
            "order_ok": out.order_ok, "regime": out.regime, "holds": out.tagged_holds}


def thexj_trace(cfg: ExperimentConfig) -> ExperimentResult:
    tasks = [{"n": n, "r": r, "seed": cfg.seed + i}
             for r in cfg.rs([2]) for n in cfg.ns([300]) for i in range(cfg.seeds)]
    rows = _map(_thexj_row, tasks, cfg.threads)
    return _finish("thexj-trace", ["seed", "n", "r", "case", "k", "removed", "n_prime", "prop3",
                                   "prop4", "order_ok", "regime", "holds"], rows)


# --- verify-stability -----------------------------------------------------------

def stability_instance(n: int, r: int, alpha: Fraction, seed: int) -> tuple[str, Graph]:
    """Even seeds: a few cross edges deleted.  Odd seeds: intra-class edges planted."""
    budget = max(1, int(alpha * n * n / 2))
    if seed % 2 == 0:
        return "deleted", turan_perturbed(n, r, delete=1 + seed % budget, add=0, seed=seed)
    return "planted", turan_perturbed(n, r, delete=seed % 3, add=1 + seed % 3, seed=seed)


def _stability_row(n: int, r: int, alpha: Fraction, seed: int) -> dict:
    kind, g = stability_instance(n, r, alpha, seed)
    rep = check_stability(g, r, alpha)
    verified = verify_report(g, rep)
    return {"seed": seed, "n": n, "r": r, "kind": kind, "m": g.num_edges, "branch": rep.branch,
            "m_eps": len(rep.m_eps), "min_degree": rep.min_degree,
            "jointsize": rep.diagnostics.get("jointsize", ""), "verified": verified,
            "regime": rep.regime, "holds": verified and rep.branch != "OutOfRegime"}


def verify_stability(cfg: ExperimentConfig) -> ExperimentResult:
    tasks = [{"n": n, "r": r, "alpha": cfg.alpha, "seed": cfg.seed + i}
             for r in cfg.rs([2]) for n in cfg.ns([300]) for i in range(cfg.seeds)]
    rows = _map(_stability_row, tasks, cfg.threads)
    return _finish("verify-stability", ["seed", "n", "r", "kind", "m", "branch", "m_eps",
                                        "min_degree", "jointsize", "verified", "regime", "holds"], rows)


# --- verify-typms-exhaustive ----------------------------------------------------

def typms_sweep(n: int, r: int) -> dict:
    """Every set system of r subsets of an n-set, enumerated as n membership columns."""
    popcount = [bin(m).count("1") for m in range(1 << r)]
    verdicts: dict[tuple[int, ...], tuple[bool, bool]] = {}
    systems = violations = constant = tight_constant = 0
    for cols in product(range(1 << r), repeat=n):
        systems += 1
        key = tuple(sorted(popcount[c] for c in cols))
        hit = verdicts.get(key)
        if hit is None:
            sums = sums_from_degrees(key, r)
            bounds = [typms_lower_bound(sums[0], n, k) for k in range(1, r + 1)]
            ok = all(s >= b for s, b in zip(sums, bounds))
            tight = all(s == b for s, b in zip(sums, bounds))
            hit = verdicts[key] = (ok, tight)
        violations += not hit[0]
        if key[0] == key[-1]:
            constant += 1
            tight_constant += hit[1]
    return {"n": n, "r": r, "systems": systems, "degree_profiles": len(verdicts),
            "violations": violations, "constant_degree": constant,
            "constant_degree_tight": tight_constant,
            "holds": violations == 0 and tight_constant == constant}


def verify_typms(cfg: ExperimentConfig) -> ExperimentResult:
    tasks = [{"n": n, "r": r} for n in cfg.ns(list(range(1, 6))) for r in cfg.rs(list(range(1, 5)))]
    rows = _map(typms_sweep, tasks, cfg.threads)
    return _finish("verify-typms-exhaustive", ["n", "r", "systems", "degree_profiles", "violations",
                                               "constant_degree", "constant_degree_tight", "holds"], rows)


# --- verify-moonmoser-exhaustive ------------------------------------------------

def graph_from_code(n: int, code: int) -> Graph:
    rows = [0] * n
    bit = 0
    for u in range(n):
        for v in range(u + 1, n):
            if code >> bit & 1:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            bit += 1
    return Graph(n, tuple(rows))


def moon_moser_sweep(n: int) -> list[dict]:
    stats: dict[tuple[int, int], list[int]] = {}
    graphs = 0
    for code in range(1 << comb(n, 2)):
        g = graph_from_code(n, code)
        graphs += 1
        for row in moon_moser_report(g, clique_spectrum(g)):
            s = stats.setdefault((row.s, row.t), [0, 0, 0])
            s[0] += 1
            s[1] += not row.holds
            s[2] += row.lhs == row.rhs
    return [{"n": n, "graphs": graphs, "s": s, "t": t, "checks": c, "violations": v,
             "equalities": e, "holds": v == 0} for (s, t), (c, v, e) in sorted(stats.items())]


def verify_moonmoser(cfg: ExperimentConfig) -> ExperimentResult:
    rows = []
    for n in cfg.ns([6]):
        rows.extend(moon_moser_sweep(n))
    return _finish("verify-moonmoser-exhaustive",
                   ["n", "graphs", "s", "t", "checks", "violations", "equalities", "holds"], rows)


# --- tightness-scan ----------------------------------------------------------------

def _tightness_row(n: int, r: int) -> dict:
    ratio = tightness_ratio(n, r)
    return {"n": n, "r": r, "ratio": ratio, "ratio_num": ratio.numerator,
            "ratio_den": ratio.denominator, "expected": r ** 6, "holds": ratio == r ** 6}


def tightness_scan(cfg: ExperimentConfig) -> ExperimentResult:
    limits = {2: 120, 3: 120, 4: 60}
    tasks = []
    for r in cfg.rs([2, 3, 4]):
        top = max(cfg.ns([limits.get(r, 60)]))
        # n = r leaves singleton classes with no room for an intra-class edge
        tasks.extend({"n": n, "r": r} for n in range(2 * r, top + 1, r))
    rows = _map(_tightness_row, tasks, cfg.threads)
    rows.sort(key=lambda row: (row["r"], row["n"]))
    failures = [row for row in rows if not row["holds"]]
    return ExperimentResult("tightness-scan", ["r", "n", "ratio_num", "ratio_den", "expected", "holds"],
                            rows, failures)


EXPERIMENTS: dict[str, Callable[[ExperimentConfig], ExperimentResult]] = {
    "verify-turan": verify_turan,
    "verify-turj": verify_turj,
    "verify-stability": verify_stability,
    "verify-typms-exhaustive": verify_typms,
    "verify-moonmoser-exhaustive": verify_moonmoser,
    "tightness-scan": tightness_scan,
    "thexj-trace": thexj_trace,
    "empirical-joints": empirical_joints,
}


def run(cfg: ExperimentConfig) -> ExperimentResult:
    try:
        fn = EXPERIMENTS[cfg.experiment]
    except KeyError:
        raise InvalidParam(f"unknown experiment {cfg.experiment!r}; choose from {sorted(EXPERIMENTS)}") from None
    result = fn(cfg)
    if cfg.output:
        text = result.to_csv(cfg.timestamp) if cfg.format == "csv" else result.to_json(cfg.timestamp)
        Path(cfg.output).write_text(text)
    return result


__all__ = ["ExperimentConfig", "ExperimentResult", "EXPERIMENTS", "run"]
