"""Integral equivalence of triples ``(μ, A, x)``.

Two triples are integral equivalent when their GSFs coincide. The
structural test matches every attained level of one triple with a level of
the other carrying the same value and the same greatest interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from gchoquet.aggregators import FCA
from gchoquet.core import MonotoneMeasure, StepFunction, to_vector
from gchoquet.gsf import build_arrangement, check_domains, gsf_agg_scan
from gchoquet.index_maps import Interval, build_permutations, greatest_interval, plateau_bounds

__all__ = ["Triple", "integral_equivalent", "Level", "EquivalenceWitness", "equivalence_condition"]


@dataclass(frozen=True)
class Triple:
    measure: MonotoneMeasure
    fca: FCA
    x: tuple

    def __post_init__(self):
        check_domains(self.fca, self.measure)
        object.__setattr__(self, "x", self.fca.check_vector(to_vector(self.x)))

    def gsf(self) -> StepFunction:
        return gsf_agg_scan(build_arrangement(self.fca, self.measure, self.x))


def integral_equivalent(t1: Triple, t2: Triple) -> bool:
    return t1.gsf() == t2.gsf()


@dataclass(frozen=True)
class Level:
    index: int
    value: Fraction
    interval: Interval


def attained_levels(t: Triple) -> list[Level]:
    arr = build_arrangement(t.fca, t.measure, t.x)
    pt = build_permutations(arr)
    pb = plateau_bounds(arr, pt)
    out = []
    for j in range(arr.kappa):
        iv = greatest_interval("measure", j, arr, pt, pb)
        if not iv.empty:
            out.append(Level(j, arr.mu[j], iv))
    return out


@dataclass(frozen=True)
class EquivalenceWitness:
    holds: bool
    matches: tuple = field(default=())
    offending: tuple | None = None  # (side, Level)

    def __bool__(self):
        return self.holds


def equivalence_condition(t1: Triple, t2: Triple) -> EquivalenceWitness:
    """Match attained levels of both triples by value and greatest interval."""
    levels1, levels2 = attained_levels(t1), attained_levels(t2)
    matches = []
    for side, mine, theirs in ((1, levels1, levels2), (2, levels2, levels1)):
        for level in mine:
            partner = next(
                (o for o in theirs if o.value == level.value and o.interval == level.interval), None
            )
            if partner is None:
                return EquivalenceWitness(False, tuple(matches), (side, level))
            if side == 1:
                matches.append((level, partner))
    return EquivalenceWitness(True, tuple(matches))
