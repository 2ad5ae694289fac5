"""Families of conditional aggregation operators (FCA).

An FCA assigns one aggregator to every set of a collection. The built-in
kinds are ``max``, ``min``, ``sum`` and the Choquet-based operator that
integrates the masked vector ``x·1_E`` against an inner capacity on
``2^[n]``. Families may mix kinds set by set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gchoquet.classical import choquet_standard
from gchoquet.core import Collection, MonotoneMeasure, format_set, to_vector
from gchoquet.errors import (
    DomainMismatch,
    MeasureNotOnPowerset,
    NegativeComponent,
    SetNotInCollection,
)

__all__ = [
    "Aggregator",
    "MaxAggregator",
    "MinAggregator",
    "SumAggregator",
    "ChoquetAggregator",
    "MAX",
    "MIN",
    "SUM",
    "FCA",
    "evaluate",
    "AxiomReport",
    "check_axioms",
    "kind_from_name",
]


class Aggregator:
    """Base class; subclasses implement :meth:`aggregate` for nonempty ``e``."""

    name = "custom"
    nondecreasing_wrt_sets = False

    def aggregate(self, x: Sequence[Fraction], e: frozenset) -> Fraction:
        raise NotImplementedError

    def __call__(self, x, e) -> Fraction:
        if not e:
            return Fraction(0)
        return self.aggregate(x, e)


@dataclass(frozen=True)
class MaxAggregator(Aggregator):
    name = "max"
    nondecreasing_wrt_sets = True

    def aggregate(self, x, e):
        return max(x[i - 1] for i in e)


@dataclass(frozen=True)
class MinAggregator(Aggregator):
    name = "min"

    def aggregate(self, x, e):
        return min(x[i - 1] for i in e)


@dataclass(frozen=True)
class SumAggregator(Aggregator):
    name = "sum"
    nondecreasing_wrt_sets = True

    def aggregate(self, x, e):
        return sum((x[i - 1] for i in e), Fraction(0))


@dataclass(frozen=True, eq=False)
class ChoquetAggregator(Aggregator):
    """``A(x|E) = C(x·1_E, inner)`` for an inner measure on the full powerset."""

    inner: MonotoneMeasure = field(repr=False)
    name = "choquet"
    nondecreasing_wrt_sets = True

    def __post_init__(self):
        if not self.inner.domain.is_powerset:
            raise MeasureNotOnPowerset("Choquet-based aggregator needs an inner measure on 2^[n]")

    def aggregate(self, x, e):
        masked = tuple(v if i + 1 in e else Fraction(0) for i, v in enumerate(x))
        return choquet_standard(masked, self.inner)

    def __eq__(self, other):
        return isinstance(other, ChoquetAggregator) and self.inner.values == other.inner.values

    def __hash__(self):
        return hash(("choquet", tuple(sorted((tuple(sorted(k)), v) for k, v in self.inner.values.items()))))


MAX = MaxAggregator()
MIN = MinAggregator()
SUM = SumAggregator()

_BY_NAME = {"max": MAX, "min": MIN, "sum": SUM}


def kind_from_name(name: str, inner: MonotoneMeasure | None = None) -> Aggregator:
    name = name.lower()
    if name == "choquet":
        if inner is None:
            raise ValueError("choquet kind needs an inner measure")
        return ChoquetAggregator(inner)
    try:
        return _BY_NAME[name]
    except KeyError:
        raise ValueError(f"unknown aggregator kind {name!r}") from None


@dataclass(frozen=True, eq=False)
class FCA:
    collection: Collection
    assignment: Mapping[frozenset, Aggregator]

    def __post_init__(self):
        assignment = {frozenset(k): v for k, v in self.assignment.items()}
        for s in self.collection:
            if s not in assignment:
                raise SetNotInCollection(f"no aggregator assigned to {format_set(s)}")
        for s in assignment:
            if s not in self.collection:
                raise SetNotInCollection(f"{format_set(s)} is not in the collection")
        object.__setattr__(self, "assignment", assignment)

    @classmethod
    def uniform(cls, collection: Collection, kind: Aggregator) -> "FCA":
        return cls(collection, {s: kind for s in collection})

    @property
    def n(self) -> int:
        return self.collection.n

    def kind(self, e) -> Aggregator:
        return self.assignment[frozenset(e)]

    def check_vector(self, x) -> tuple[Fraction, ...]:
        x = to_vector(x)
        if len(x) != self.n:
            raise DomainMismatch(f"vector has {len(x)} components, expected {self.n}")
        for i, v in enumerate(x, start=1):
            if v < 0:
                raise NegativeComponent(f"x_{i} = {v} is negative")
        return x

    def evaluate(self, x, e) -> Fraction:
        e = frozenset(e)
        if e not in self.collection:
            raise SetNotInCollection(f"{format_set(e)} is not in the collection")
        return self.assignment[e](self.check_vector(x), e)

    def values(self, x) -> dict[frozenset, Fraction]:
        """``A(x|E)`` for every ``E`` of the collection."""
        x = self.check_vector(x)
        return {e: self.assignment[e](x, e) for e in self.collection}

    def is_uniform(self) -> bool:
        kinds = list(self.assignment.values())
        return all(k == kinds[0] for k in kinds)

    def monotone_in_sets_at(self, x) -> bool:
        """Whether ``E ⊆ F`` implies ``A(x|E) <= A(x|F)`` at this ``x``."""
        vals = self.values(x)
        sets = list(vals)
        return all(vals[a] <= vals[b] for a in sets for b in sets if a < b)


def evaluate(f: FCA, x, e) -> Fraction:
    return f.evaluate(x, e)


@dataclass(frozen=True)
class AxiomReport:
    passed: bool
    checked: int
    condition: str | None = None
    set: frozenset | None = None
    detail: str = ""

    def __str__(self):
        if self.passed:
            return f"pass ({self.checked} checks)"
        return f"fail: condition ({self.condition}) on {format_set(self.set)}: {self.detail}"


def _default_grid(n: int) -> list[tuple[tuple[Fraction, ...], tuple[Fraction, ...]]]:
    levels = (Fraction(0), Fraction(1, 2), Fraction(1))
    pairs = []
    for x in itertools.product(levels, repeat=n):
        for i in range(n):
            if x[i] < 1:
                y = list(x)
                y[i] += Fraction(1, 2)
                pairs.append((x, tuple(y)))
    return pairs


def check_axioms(f: FCA, probes: Iterable[tuple] = (), grid: bool = True) -> AxiomReport:
    """Check monotonicity (i) on probe pairs and the vanishing condition (ii).

    Probe pairs ``(x, y)`` are only used on sets ``E`` where ``x <= y``
    coordinatewise on ``E``. The default grid ``{0, 1/2, 1}^n`` with single
    coordinate bumps is added when ``grid`` is set and ``n <= 6``.
    """
    n = f.n
    pairs = [(to_vector(x), to_vector(y)) for x, y in probes]
    if grid and n <= 6:
        pairs.extend(_default_grid(n))
    checked = 0
    nonempty = [e for e in f.collection if e]
    for e in nonempty:
        agg = f.kind(e)
        indicator = tuple(Fraction(0) if i in e else Fraction(1) for i in range(1, n + 1))
        value = agg(indicator, e)
        checked += 1
        if value != 0:
            return AxiomReport(False, checked, "ii", e, f"A(1_E^c|E) = {value}")
    for x, y in pairs:
        for e in nonempty:
            if any(x[i - 1] > y[i - 1] for i in e):
                continue
            agg = f.kind(e)
            ax, ay = agg(x, e), agg(y, e)
            checked += 1
            if ax > ay:
                return AxiomReport(
                    False, checked, "i", e, f"A(x|E) = {ax} > {ay} = A(y|E) for x={x}, y={y}"
                )
    return AxiomReport(True, checked)
