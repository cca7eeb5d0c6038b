"""Set-system intersection sums and exact evaluation of the named bounds.

Every bound is a :class:`fractions.Fraction`.  The one irrational quantity,
``sqrt(alpha)``, only ever appears as ``value - sqrt(X)`` with rational ``X``;
comparisons against such bounds square both sides after a sign check.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Callable, Mapping, Optional, Sequence

from .errors import HypothesisViolated, InvalidParam, MissingInput, UnknownBound
from .graph import iter_bits

GUARANTEED = "Guaranteed"
EMPIRICAL = "Empirical"


def regime_for(n: int, r: int) -> str:
    return GUARANTEED if n > r ** 8 else EMPIRICAL


@dataclass(frozen=True)
class SetSystem:
    """Subsets ``A_1..A_r`` of ``{0..n-1}``, each a bit row."""

    n: int
    sets: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.sets:
            raise InvalidParam("a set system needs at least one set")
        for a in self.sets:
            if a < 0 or a >> self.n:
                raise InvalidParam("set contains elements outside the ground set")

    @classmethod
    def from_lists(cls, n: int, sets: Sequence[Sequence[int]]) -> "SetSystem":
        rows = []
        for s in sets:
            m = 0
            for x in s:
                m |= 1 << x
            rows.append(m)
        return cls(n, tuple(rows))

    @property
    def r(self) -> int:
        return len(self.sets)

    def degrees(self) -> list[int]:
        """How many sets contain each ground element."""
        deg = [0] * self.n
        for a in self.sets:
            for x in iter_bits(a):
                deg[x] += 1
        return deg


def sums_from_degrees(degrees: Sequence[int], r: int) -> list[int]:
    return [sum(comb(d, k) for d in degrees) for k in range(1, r + 1)]


def intersection_sums(system: SetSystem) -> list[int]:
    """``[S_1, ..., S_r]`` via ``S_k = sum_x C(deg(x), k)``."""
    return sums_from_degrees(system.degrees(), system.r)


def typms_lower_bound(s1: int, n: int, k: int) -> Fraction:
    if n < 1 or k < 1:
        raise InvalidParam("need n >= 1 and k >= 1")
    f = s1 // n
    return comb(f, k - 1) * (s1 - Fraction(k - 1, k) * (f + 1) * n)


@dataclass(frozen=True)
class TypmsVerdict:
    k: int
    s_k: int
    bound: Fraction
    holds: bool

    @property
    def tight(self) -> bool:
        return self.s_k == self.bound


def typms_check(system: SetSystem) -> list[TypmsVerdict]:
    sums = intersection_sums(system)
    out = []
    for k, s_k in enumerate(sums, start=1):
        bound = typms_lower_bound(sums[0], system.n, k)
        out.append(TypmsVerdict(k, s_k, bound, s_k >= bound))
    return out


@dataclass(frozen=True)
class BonfPair:
    i: int
    j: int
    overlap: int
    threshold: Fraction

    @property
    def holds(self) -> bool:
        return self.overlap >= self.threshold


def bonf_threshold(n: int, r: int, a: Fraction) -> Fraction:
    return (Fraction(r - 2, r) + Fraction(2, r * r * (r + 1)) - Fraction(2 * (r - 1), r) * a) * n


def bonf_pair(system: SetSystem, r: int, a: Fraction) -> BonfPair:
    """Pair of sets (0-based, lexicographic tie-break) with the largest overlap."""
    a = Fraction(a)
    if system.r != r + 1:
        raise InvalidParam(f"expected {r + 1} sets, got {system.r}")
    if r < 2 or not 0 < a < Fraction(1, r * (r + 1)):
        raise HypothesisViolated(f"need r >= 2 and 0 < a < 1/(r(r+1)); got r={r}, a={a}")
    total = sum(s.bit_count() for s in system.sets)
    if total < (r - Fraction(1, r) - (r + 1) * a) * system.n:
        raise HypothesisViolated(f"sum of set sizes {total} is below the required mass")
    best = None
    for i, j in combinations(range(system.r), 2):
        ov = (system.sets[i] & system.sets[j]).bit_count()
        if best is None or ov > best[2]:
            best = (i, j, ov)
    i, j, ov = best
    pair = BonfPair(i, j, ov, bonf_threshold(system.n, r, a))
    assert pair.holds, pair
    return pair


# --- named bounds -----------------------------------------------------------

def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class _Formula:
    needs: tuple[str, ...]
    rational: Callable[..., Fraction]
    # squared radical subtracted from the rational part, if any
    radical: Optional[Callable[..., Fraction]] = None
    guaranteed: Callable[..., bool] = lambda **_: True
    strict: bool = True


def _ourb(n, r):
    return _frac(n) ** (r - 1) / Fraction(r) ** (r + 5)


FORMULAS: dict[str, _Formula] = {
    "erdb": _Formula(("n", "r"), lambda n, r: _frac(n) ** (r - 1) / Fraction(10 * r) ** (6 * r),
                     guaranteed=lambda n, r: n > r ** 8, strict=False),
    "lok": _Formula(("n", "r", "c"),
                    lambda n, r, c: 2 * c * Fraction(r, r + 1) * (_frac(n) / r) ** (r + 1)),
    "loj": _Formula(("n", "r", "c"), lambda n, r, c: 2 * c * (_frac(n) / r) ** (r - 1)),
    "cor_k": _Formula(("n", "r", "c"),
                      lambda n, r, c: c * Fraction(r, r + 1) * (_frac(n) / r) ** (r + 1)),
    "cor": _Formula(("n", "r", "c"), lambda n, r, c: c * (_frac(n) / r) ** (r - 2)),
    "cor_strong": _Formula(("n", "r", "c"), lambda n, r, c: c * (_frac(n) / r) ** (r - 1)),
    "lekd": _Formula(("n", "r"), lambda n, r: _frac(n) ** (r - 1) / Fraction(r) ** (r + 3)),
    "ourb": _Formula(("n", "r"), _ourb, guaranteed=lambda n, r: n > r ** 8),
    "minjs": _Formula(("n", "r"), lambda n, r: (1 - Fraction(1, r ** 3)) * _ourb(n, r),
                      guaranteed=lambda n, r: n > r ** 8),
    "mindg": _Formula(("n", "r", "alpha"),
                      lambda n, r, alpha: (1 - Fraction(1, r)) * n,
                      radical=lambda n, r, alpha: 36 * alpha * n * n,
                      guaranteed=lambda n, r, alpha: n > r ** 8 and 0 < alpha < Fraction(1, 36 * r ** 8)),
}


@dataclass(frozen=True)
class BoundReport:
    """A named bound ``value - sqrt(radical)`` and, optionally, a measurement
    checked against it (``measured > bound``, or ``>=`` for non-strict bounds)."""

    name: str
    inputs: dict[str, Fraction]
    value: Fraction
    radical: Fraction = Fraction(0)
    measured: Optional[Fraction] = None
    holds: Optional[bool] = None
    regime: str = EMPIRICAL
    strict: bool = True
    note: str = ""

    def approx(self) -> float:
        return float(self.value) - float(self.radical) ** 0.5

    def with_measurement(self, measured) -> "BoundReport":
        m = _frac(measured)
        return BoundReport(self.name, self.inputs, self.value, self.radical, m,
                           exceeds(m, self.value, self.radical, self.strict),
                           self.regime, self.strict, self.note)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": {k: str(v) for k, v in self.inputs.items()},
            "numerator": str(self.value.numerator),
            "denominator": str(self.value.denominator),
            "radical": str(self.radical),
            "approx": self.approx(),
            "measured": None if self.measured is None else str(self.measured),
            "holds": self.holds,
            "regime": self.regime,
            "note": self.note,
        }


def exceeds(measured: Fraction, value: Fraction, radical: Fraction = Fraction(0),
            strict: bool = True) -> bool:
    """Exact test of ``measured > value - sqrt(radical)`` (``>=`` if not strict)."""
    if radical == 0:
        return measured > value if strict else measured >= value
    gap = value - measured  # need gap < sqrt(radical)
    if gap < 0:
        return True
    return gap * gap < radical if strict else gap * gap <= radical


def eval_bound(name: str, inputs: Mapping[str, object], measured=None,
               regime: str | None = None) -> BoundReport:
    try:
        formula = FORMULAS[name]
    except KeyError:
        raise UnknownBound(name) from None
    missing = [k for k in formula.needs if k not in inputs]
    if missing:
        raise MissingInput(f"{name} needs {', '.join(missing)}")
    args = {k: (int(inputs[k]) if k in ("n", "r") else _frac(inputs[k])) for k in formula.needs}
    value = formula.rational(**args)
    radical = formula.radical(**args) if formula.radical else Fraction(0)
    if regime is None:
        regime = GUARANTEED if formula.guaranteed(**args) else EMPIRICAL
    note = ""
    if name == "cor":
        note = "printed exponent r-2; the per-edge bound it comes from gives r-1 (see cor_strong)"
    report = BoundReport(name, {k: _frac(v) for k, v in args.items()}, value, radical,
                         regime=regime, strict=formula.strict, note=note)
    return report if measured is None else report.with_measurement(measured)


def bound_constant(name: str, r: int) -> Fraction:
    """Coefficient of ``n^(r-1)`` in a bound of that shape."""
    return eval_bound(name, {"n": 1, "r": r}).value


def improvement_holds(r: int) -> bool:
    return bound_constant("ourb", r) > bound_constant("erdb", r)


BOUND_COLUMNS = ("name", "numerator", "denominator", "radical", "approx",
                 "measured", "holds", "regime")


def bounds_csv(reports: Sequence[BoundReport]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BOUND_COLUMNS, extrasaction="ignore", lineterminator="\n")
    w.writeheader()
    for rep in reports:
        w.writerow(rep.to_dict())
    return buf.getvalue()


def bounds_json(reports: Sequence[BoundReport]) -> str:
    return json.dumps([rep.to_dict() for rep in reports], indent=2)
