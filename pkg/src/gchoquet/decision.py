"""Decision making on top of the integrals: ranking and knapsack selection.

Ranking normalizes raw criteria scores into ``(0, 1]``, calibrates a
capacity from desired Shapley values and orders alternatives by the
standard or the generalized Choquet integral. Knapsack selection reads the
GSF of the sum aggregator at the budget.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import sympy

from gchoquet.aggregators import FCA, SUM, ChoquetAggregator
from gchoquet.classical import choquet_standard
from gchoquet.choquet import choquet_generalized
from gchoquet.core import (
    Collection,
    MonotoneMeasure,
    canonical_key,
    powerset,
    to_rational,
    to_vector,
)
from gchoquet.errors import (
    DomainMismatch,
    InconsistentTargets,
    MeasureNotOnPowerset,
    MonotonicityViolation,
    ValidationError,
    ZeroDivision,
)
from gchoquet.gsf import build_arrangement, check_domains
from gchoquet.index_maps import build_permutations, gsf_via_maps

__all__ = [
    "CriterionSpec",
    "Alternative",
    "normalize_criteria",
    "shapley_weight",
    "shapley_value",
    "shapley_vector",
    "Calibration",
    "calibrate_measure",
    "RankEntry",
    "rank_alternatives",
    "KnapsackResult",
    "knapsack_select",
]


@dataclass(frozen=True)
class CriterionSpec:
    name: str
    direction: str = "maximize"

    def __post_init__(self):
        if self.direction not in ("minimize", "maximize"):
            raise ValueError(f"direction must be minimize or maximize, got {self.direction!r}")


@dataclass(frozen=True)
class Alternative:
    name: str
    scores: tuple

    def __post_init__(self):
        object.__setattr__(self, "scores", to_vector(self.scores))


def normalize_criteria(specs: Sequence[CriterionSpec], alts: Sequence[Alternative]) -> list[Alternative]:
    """Scale each column into ``(0, 1]`` with the best score mapped to 1.

    Minimized columns become ``min / value``, maximized ones ``value / max``.
    """
    names = [s.name for s in specs]
    if len(set(names)) != len(names):
        raise ValidationError("criterion names must be unique")
    for a in alts:
        if len(a.scores) != len(specs):
            raise DomainMismatch(f"{a.name} has {len(a.scores)} scores for {len(specs)} criteria")
    columns = []
    for c, spec in enumerate(specs):
        col = [a.scores[c] for a in alts]
        if spec.direction == "minimize":
            if any(v <= 0 for v in col):
                raise ZeroDivision(f"minimized criterion {spec.name} needs positive scores")
            best = min(col)
            columns.append([best / v for v in col])
        else:
            best = max(col)
            if best <= 0:
                raise ZeroDivision(f"maximized criterion {spec.name} needs a positive maximum")
            columns.append([v / best for v in col])
    return [Alternative(a.name, tuple(col[k] for col in columns)) for k, a in enumerate(alts)]


def shapley_weight(n: int, size: int) -> Fraction:
    """``(n - |A| - 1)! |A|! / n!``."""
    return Fraction(math.factorial(n - size - 1) * math.factorial(size), math.factorial(n))


def _require_powerset(mu: MonotoneMeasure) -> None:
    if not mu.domain.is_powerset:
        raise MeasureNotOnPowerset("Shapley values need a measure on 2^[n]")


def _shapley(n: int, values: Mapping[frozenset, Fraction], i: int) -> Fraction:
    total = Fraction(0)
    for a in powerset(n):
        if i not in a:
            total += shapley_weight(n, len(a)) * (values[a | {i}] - values[a])
    return total


def shapley_value(mu: MonotoneMeasure, i: int) -> Fraction:
    _require_powerset(mu)
    if not 1 <= i <= mu.n:
        raise ValueError(f"criterion {i} outside 1..{mu.n}")
    return _shapley(mu.n, mu.values, i)


def shapley_vector(mu: MonotoneMeasure) -> tuple[Fraction, ...]:
    return tuple(shapley_value(mu, i) for i in range(1, mu.n + 1))


@dataclass(frozen=True)
class Calibration:
    """Outcome of fitting the free set values to Shapley targets.

    ``values`` always holds the solution; ``measure`` is ``None`` when that
    solution is not monotone, in which case ``violation`` names the pair.
    ``selection`` records how the solution was picked: ``min-norm``,
    ``nearest-monotone`` or ``pinned``.
    """

    targets: tuple[Fraction, ...]
    free_sets: tuple[frozenset, ...]
    values: Mapping[frozenset, Fraction]
    nullspace: tuple[tuple[Fraction, ...], ...]
    shapley: tuple[Fraction, ...]
    residuals: tuple[Fraction, ...]
    measure: MonotoneMeasure | None = None
    violation: tuple[frozenset, frozenset] | None = None
    selection: str = "min-norm"

    @property
    def max_residual(self) -> Fraction:
        return max(abs(r) for r in self.residuals)


def _to_fraction(v) -> Fraction:
    v = sympy.nsimplify(v)
    return Fraction(int(v.p), int(v.q))


def _equations(n: int, free: list[frozenset], fixed: Mapping[frozenset, Fraction]):
    """Rows of ``φ_μ(i)`` as affine functions of the free set values."""
    col = {s: k for k, s in enumerate(free)}
    rows, consts = [], []
    for i in range(1, n + 1):
        row = [Fraction(0)] * len(free)
        const = Fraction(0)
        for a in powerset(n):
            if i in a:
                continue
            w = shapley_weight(n, len(a))
            for s, sign in ((a | {i}, 1), (a, -1)):
                if s in col:
                    row[col[s]] += sign * w
                else:
                    const += sign * w * fixed[s]
        rows.append(row)
        consts.append(const)
    return rows, consts


def calibrate_measure(
    targets: Sequence,
    singletons: Sequence | None = None,
    pinned: Mapping | None = None,
    strict: bool = False,
) -> Calibration:
    """Fit ``μ`` on ``2^[n]`` so that ``φ_μ(i) = t_i / Σ t``.

    Singletons default to the raw targets; ``μ(∅) = 0`` and ``μ([n]) = 1``.
    The remaining sets are unknowns. Since ``Σ φ_μ = 1`` always holds the
    system is rank deficient; the minimum-norm solution is returned with a
    basis of the nullspace. If that solution is not monotone and the
    nullspace is a line, the closest monotone point on it is used instead.
    With ``pinned`` values for every free set the system is only evaluated
    (verify mode).
    """
    raw = to_vector(targets)
    n = len(raw)
    if n < 2:
        raise InconsistentTargets("need at least two criteria")
    if any(t <= 0 for t in raw):
        raise InconsistentTargets("Shapley targets must be positive")
    norm = tuple(t / sum(raw) for t in raw)
    single = to_vector(singletons) if singletons is not None else raw
    if len(single) != n:
        raise InconsistentTargets("one singleton value per criterion required")
    ground = frozenset(range(1, n + 1))
    fixed = {frozenset(): Fraction(0), ground: Fraction(1)}
    fixed.update({frozenset({i}): single[i - 1] for i in range(1, n + 1)})
    free = [s for s in powerset(n) if s not in fixed]
    rows, consts = _equations(n, free, fixed)
    rhs = [t - c for t, c in zip(norm, consts)]

    a = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])
    b = sympy.Matrix([sympy.Rational(v.numerator, v.denominator) for v in rhs])
    nullspace = tuple(tuple(_to_fraction(v) for v in vec) for vec in a.nullspace())

    selection = "pinned"
    if pinned is not None:
        pins = {frozenset(k): to_rational(v) for k, v in pinned.items()}
        missing = [s for s in free if s not in pins]
        if missing:
            raise InconsistentTargets(f"verify mode needs a value for every free set, got {len(pins)}")
        solution = [pins[s] for s in free]
    else:
        selection = "min-norm"
        if free:
            u = a.pinv() * b
            if a * u != b:
                raise InconsistentTargets("Shapley equations have no solution for these singletons")
            solution = [_to_fraction(v) for v in u]
            if len(nullspace) == 1 and _violation(n, fixed, free, solution) is not None:
                shifted = _nearest_monotone(n, fixed, free, solution, nullspace[0])
                if shifted is not None:
                    solution, selection = shifted, "nearest-monotone"
        else:
            solution = []
            if any(r != 0 for r in rhs):
                raise InconsistentTargets("Shapley equations have no solution for these singletons")

    values = dict(fixed)
    values.update(zip(free, solution))
    residuals = tuple(
        sum((c * v for c, v in zip(row, solution)), Fraction(0)) - r for row, r in zip(rows, rhs)
    )
    measure = None
    violation = _violation(n, fixed, free, solution)
    if violation is None:
        measure = MonotoneMeasure(Collection(n, tuple(powerset(n))), values)
    elif strict:
        raise MonotonicityViolation(*violation)
    shapley = tuple(_shapley(n, values, i) for i in range(1, n + 1))
    return Calibration(
        targets=norm,
        free_sets=tuple(free),
        values=values,
        nullspace=nullspace,
        shapley=shapley,
        residuals=residuals,
        measure=measure,
        violation=violation,
        selection=selection,
    )


def _covering_pairs(n: int):
    for s in powerset(n):
        for i in range(1, n + 1):
            if i not in s:
                yield s, s | {i}


def _violation(n, fixed, free, solution):
    values = dict(fixed)
    values.update(zip(free, solution))
    for s, t in _covering_pairs(n):
        if values[s] > values[t]:
            return s, t
    return None


def _nearest_monotone(n, fixed, free, solution, direction):
    """Shift along the one-dimensional nullspace to the closest monotone point.

    Each covering pair ``s ⊂ t`` gives a linear constraint on the shift
    ``τ``; the feasible set is an interval and the point nearest ``τ = 0``
    keeps the distance to the minimum-norm solution smallest.
    """
    base = dict(fixed)
    base.update(zip(free, solution))
    step = {s: Fraction(0) for s in base}
    step.update(zip(free, direction))
    lo, hi = None, None
    for s, t in _covering_pairs(n):
        # base[s] + τ step[s] <= base[t] + τ step[t]
        coef = step[s] - step[t]
        gap = base[t] - base[s]
        if coef == 0:
            if gap < 0:
                return None
        elif coef > 0:
            bound = gap / coef
            hi = bound if hi is None else min(hi, bound)
        else:
            bound = gap / coef
            lo = bound if lo is None else max(lo, bound)
    if lo is not None and hi is not None and lo > hi:
        return None
    tau = Fraction(0)
    if lo is not None and tau < lo:
        tau = lo
    if hi is not None and tau > hi:
        tau = hi
    return [v + tau * d for v, d in zip(solution, direction)]


@dataclass(frozen=True)
class RankEntry:
    rank: int
    name: str
    score: Fraction


def rank_alternatives(
    alts: Sequence[Alternative],
    mu: MonotoneMeasure,
    method: str = "standard",
    fca: FCA | None = None,
) -> list[RankEntry]:
    """Order alternatives by descending integral; equal scores share a rank.

    ``generalized`` defaults to the Choquet-based FCA on ``2^[n]`` whose
    inner capacity is ``mu`` itself, with ``mu`` also as outer measure.
    """
    if method == "standard":
        score = lambda x: choquet_standard(x, mu)  # noqa: E731
    elif method == "generalized":
        if fca is None:
            if not mu.domain.is_powerset:
                raise MeasureNotOnPowerset("default generalized ranking needs μ on 2^[n]")
            fca = FCA.uniform(mu.domain, ChoquetAggregator(mu))
        score = lambda x: choquet_generalized(fca, mu, x).value  # noqa: E731
    else:
        raise ValueError(f"unknown method {method!r}")
    scored = sorted(((score(a.scores), k, a.name) for k, a in enumerate(alts)), key=lambda t: (-t[0], t[1]))
    out = []
    for pos, (s, _, name) in enumerate(scored):
        rank = out[-1].rank if out and out[-1].score == s else pos + 1
        out.append(RankEntry(rank, name, s))
    return out


@dataclass(frozen=True)
class KnapsackResult:
    value: Fraction
    chosen: frozenset
    minimizers: tuple[frozenset, ...] = field(default=())


def knapsack_select(volumes, prices: MonotoneMeasure, budget, collection: Collection) -> KnapsackResult:
    """Cheapest complement among sets whose total volume fits the budget.

    The value is the GSF of the sum aggregator at ``budget``. Ties among
    minimizing sets prefer larger sets, then canonical order.
    """
    volumes = to_vector(volumes)
    budget = to_rational(budget)
    if budget < 0:
        raise ValidationError("budget must be nonnegative")
    f = FCA.uniform(collection, SUM)
    check_domains(f, prices)
    arr = build_arrangement(f, prices, volumes)
    pt = build_permutations(arr)
    value = gsf_via_maps(arr, pt, "i")(budget)
    ground = collection.ground
    minimizers = [
        e for e in collection
        if f.evaluate(volumes, e) <= budget and prices[ground - e] == value
    ]
    minimizers.sort(key=lambda e: (-len(e), canonical_key(e)))
    return KnapsackResult(value, minimizers[0], tuple(minimizers))
