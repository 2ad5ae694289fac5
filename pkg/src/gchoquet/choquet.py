"""The generalized Choquet integral ``C_A(x, μ) = ∫_0^inf μ_A(x, α) dα``.

Besides integrating the GSF, four closed formulas are implemented, each in
its direct and its summation-by-parts form. Sums over aggregation indices
stop at ``κ-2``: the last term would multiply ``A_κ = +inf`` by a zero
measure difference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from gchoquet.aggregators import FCA
from gchoquet.classical import choquet_standard, owa, owa_weights
from gchoquet.core import MonotoneMeasure, StepFunction, integrate_step
from gchoquet.gsf import (
    Arrangement,
    check_distribution,
    check_levels,
    require_monotone_powerset,
    ascending_sigma,
    build_arrangement,
    gsf_agg_scan,
)
from gchoquet.index_maps import build_permutations

__all__ = [
    "ROUTES",
    "ChoquetResult",
    "choquet_generalized",
    "choquet_all_routes",
    "choquet_special",
    "choquet_standard",
    "owa",
    "owa_weights",
]

ROUTES = ("integrate", "formula_i", "formula_ii", "formula_iii", "formula_iv")


@dataclass(frozen=True)
class ChoquetResult:
    value: Fraction
    route: str
    gsf: StepFunction


def _formula_i(arr: Arrangement) -> Fraction:
    k = arr.kappa
    i_map = build_permutations(arr).i_map
    m = [arr.mu[i_map[i]] for i in range(k)]
    assert m[k - 1] == 0
    direct = sum((m[i] * (arr.a[i + 1] - arr.a[i]) for i in range(k - 1)), Fraction(0))
    parts = sum((arr.a[i + 1] * (m[i] - m[i + 1]) for i in range(k - 1)), Fraction(0))
    assert direct == parts
    return direct


def _formula_ii(arr: Arrangement) -> Fraction:
    k = arr.kappa
    j_map = build_permutations(arr).j_map
    aj = [arr.a[j_map[i]] for i in range(k)]
    direct = sum((arr.mu[i] * (aj[i - 1] - aj[i]) for i in range(1, k)), Fraction(0))
    parts = sum((aj[i - 1] * (arr.mu[i] - arr.mu[i - 1]) for i in range(1, k)), Fraction(0))
    assert direct == parts
    return direct


def _formula_iii(arr: Arrangement) -> Fraction:
    k = arr.kappa
    m = list(accumulate(arr.complement_measure(), min))
    assert m[k - 1] == 0
    direct = sum((m[i] * (arr.a[i + 1] - arr.a[i]) for i in range(k - 1)), Fraction(0))
    parts = sum((arr.a[i + 1] * (m[i] - m[i + 1]) for i in range(k - 1)), Fraction(0))
    assert direct == parts
    return direct


def _formula_iv(arr: Arrangement) -> Fraction:
    k = arr.kappa
    prefix = list(accumulate(arr.complement_aggregation(), min))  # min_{k<=i} A_⟨k⟩
    direct = sum((arr.mu[i] * (prefix[i - 1] - prefix[i]) for i in range(1, k)), Fraction(0))
    parts = sum((prefix[i - 1] * (arr.mu[i] - arr.mu[i - 1]) for i in range(1, k)), Fraction(0))
    assert direct == parts
    return direct


_FORMULAS = {
    "formula_i": _formula_i,
    "formula_ii": _formula_ii,
    "formula_iii": _formula_iii,
    "formula_iv": _formula_iv,
}


def choquet_generalized(f: FCA, mu: MonotoneMeasure, x, route: str = "integrate") -> ChoquetResult:
    arr = build_arrangement(f, mu, x)
    gsf = gsf_agg_scan(arr)
    if route == "integrate":
        value = integrate_step(gsf)
    elif route in _FORMULAS:
        value = _FORMULAS[route](arr)
    else:
        raise ValueError(f"unknown route {route!r}; expected one of {', '.join(ROUTES)}")
    return ChoquetResult(value, route, gsf)


def choquet_all_routes(f: FCA, mu: MonotoneMeasure, x) -> dict[str, Fraction]:
    arr = build_arrangement(f, mu, x)
    out = {"integrate": integrate_step(gsf_agg_scan(arr))}
    out.update({name: fn(arr) for name, fn in _FORMULAS.items()})
    return out


def choquet_special(kind: str, f: FCA, x, param=None) -> Fraction:
    """Closed-form integral for a special measure on the complement collection."""
    x = f.check_vector(x)
    n = f.n
    ground = f.collection.ground
    if kind == "greatest":
        return f.evaluate(x, ground)
    if kind == "weakest":
        return min(f.evaluate(x, e) for e in f.collection if e)
    require_monotone_powerset(f, x)
    vals = f.values(x)
    if kind == "symmetric":
        levels = check_levels(param, n)
        total = Fraction(0)
        for i in range(1, n + 1):
            low = min(v for e, v in vals.items() if len(e) == n - i + 1)
            total += (levels[i] - levels[i - 1]) * low
        return total
    pi = check_distribution(param, n)
    sigma = ascending_sigma(pi)
    steps = [Fraction(0)] + [pi[s - 1] for s in sigma]  # π(σ(0)) = 0
    if kind == "possibility":
        return sum(
            ((steps[i] - steps[i - 1]) * vals[frozenset(sigma[i - 1:])] for i in range(1, n + 1)),
            Fraction(0),
        )
    if kind == "necessity":
        single = [vals[frozenset({s})] for s in sigma]
        return sum(
            ((steps[i] - steps[i - 1]) * min(single[i - 1:]) for i in range(1, n + 1)),
            Fraction(0),
        )
    raise ValueError(f"unknown special measure {kind!r}")
