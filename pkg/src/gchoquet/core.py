"""Exact scalars, index sets, collections, monotone measures and step functions.

Criteria are labelled ``1..n``. An index set is a plain ``frozenset`` of
those labels; vectors are tuples whose position ``i - 1`` holds the score of
criterion ``i``. All scalars are :class:`fractions.Fraction`; the only
non-rational value ever produced is :data:`INF`, which compares greater than
every fraction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence, Union

from gchoquet.errors import (
    DivergentIntegral,
    DomainMismatch,
    GapOrOverlap,
    MissingEmptySet,
    MissingFullSet,
    MonotonicityViolation,
    NegativeValue,
    NonZeroEmptySet,
    OutOfRangeIndex,
    ParseError,
    ZeroFullSet,
)

__all__ = [
    "INF",
    "MAX_N",
    "MAX_KAPPA",
    "IndexSet",
    "Number",
    "to_rational",
    "to_vector",
    "canonical_key",
    "canonical_sort",
    "format_set",
    "format_value",
    "powerset",
    "Collection",
    "validate_collection",
    "complement_collection",
    "MonotoneMeasure",
    "validate_measure",
    "StepFunction",
    "canonicalize_step",
    "integrate_step",
]

INF = math.inf
MAX_N = 24
MAX_KAPPA = 2**16

IndexSet = frozenset
Number = Union[Fraction, int, str]
ExtRational = Union[Fraction, float]  # float only ever as INF


def to_rational(value) -> Fraction:
    """Parse ``value`` into an exact fraction.

    Accepts fractions, integers, decimal or ``p/q`` strings. Floats are read
    through their shortest repr so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a number: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ParseError(f"non-finite value: {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"cannot parse {value!r} as a rational") from exc
    raise ParseError(f"not a number: {value!r}")


def to_vector(values: Iterable) -> tuple[Fraction, ...]:
    return tuple(to_rational(v) for v in values)


def canonical_key(s: frozenset) -> tuple:
    """Sort key: cardinality first, then lexicographic on sorted members."""
    return (len(s), tuple(sorted(s)))


def canonical_sort(sets: Iterable[frozenset]) -> list[frozenset]:
    return sorted(sets, key=canonical_key)


def format_set(s: Iterable[int]) -> str:
    members = sorted(s)
    if not members:
        return "∅"
    return "{" + ",".join(str(m) for m in members) + "}"


def format_value(v, digits: int | None = 6) -> str:
    """Exact rendering, optionally followed by a decimal approximation."""
    if v == INF:
        return "inf"
    v = Fraction(v)
    exact = str(v)
    if digits is None or v.denominator == 1:
        return exact
    return f"{exact} ({float(v):.{digits}g})"


def powerset(n: int) -> list[frozenset]:
    """All subsets of ``{1..n}`` in canonical order."""
    ground = range(1, n + 1)
    return [frozenset(c) for k in range(n + 1) for c in combinations(ground, k)]


def _mask(s: frozenset) -> int:
    m = 0
    for i in s:
        m |= 1 << (i - 1)
    return m


@dataclass(frozen=True)
class Collection:
    """A family of subsets of ``{1..n}`` containing the empty and the full set."""

    n: int
    sets: tuple[frozenset, ...]

    def __post_init__(self):
        if self.n < 1 or self.n > MAX_N:
            raise OutOfRangeIndex(f"n must be in 1..{MAX_N}, got {self.n}")
        ground = self.ground
        seen = set()
        for s in self.sets:
            if not s <= ground:
                raise OutOfRangeIndex(f"{format_set(s)} is not a subset of [{self.n}]")
            if s in seen:
                raise ValueError(f"duplicate set {format_set(s)}")
            seen.add(s)
        if frozenset() not in seen:
            raise MissingEmptySet("collection must contain the empty set")
        if ground not in seen:
            raise MissingFullSet(f"collection must contain [{self.n}]")
        if len(self.sets) > MAX_KAPPA:
            raise OutOfRangeIndex(f"collection larger than {MAX_KAPPA} sets")
        object.__setattr__(self, "_index", {s: k for k, s in enumerate(self.sets)})

    @property
    def ground(self) -> frozenset:
        return frozenset(range(1, self.n + 1))

    @property
    def kappa(self) -> int:
        return len(self.sets)

    @property
    def is_powerset(self) -> bool:
        return self.kappa == 2**self.n

    def __contains__(self, s) -> bool:
        return frozenset(s) in self._index

    def __iter__(self):
        return iter(self.sets)

    def __len__(self) -> int:
        return len(self.sets)

    def position(self, s: frozenset) -> int:
        return self._index[frozenset(s)]

    def complement(self, s: frozenset) -> frozenset:
        return self.ground - s


def validate_collection(n: int, sets: Iterable[Iterable[int]]) -> Collection:
    """Build a :class:`Collection`, deduplicating and sorting canonically."""
    if n < 1:
        raise OutOfRangeIndex(f"n must be positive, got {n}")
    unique = {frozenset(s) for s in sets}
    for s in unique:
        bad = [i for i in s if not (isinstance(i, int) and 1 <= i <= n)]
        if bad:
            raise OutOfRangeIndex(f"index {bad[0]!r} outside [1, {n}]")
    return Collection(n, tuple(canonical_sort(unique)))


def complement_collection(c: Collection) -> Collection:
    ground = c.ground
    return Collection(c.n, tuple(canonical_sort(ground - s for s in c.sets)))


@dataclass(frozen=True)
class MonotoneMeasure:
    """Nonnegative monotone set function on ``domain`` vanishing at the empty set."""

    domain: Collection
    values: Mapping[frozenset, Fraction]

    def __post_init__(self):
        vals = {frozenset(k): to_rational(v) for k, v in self.values.items()}
        missing = [s for s in self.domain.sets if s not in vals]
        extra = [s for s in vals if s not in self.domain]
        if missing:
            raise DomainMismatch(f"no measure value for {format_set(missing[0])}")
        if extra:
            raise DomainMismatch(f"{format_set(extra[0])} is not in the measure domain")
        if vals[frozenset()] != 0:
            raise NonZeroEmptySet(f"μ(∅) must be 0, got {vals[frozenset()]}")
        for s, v in vals.items():
            if v < 0:
                raise NegativeValue(f"μ({format_set(s)}) = {v} is negative")
        if vals[self.domain.ground] <= 0:
            raise ZeroFullSet("μ([n]) must be positive")
        object.__setattr__(self, "values", vals)
        bad = self._first_violation()
        if bad is not None:
            raise MonotonicityViolation(*bad)

    def _first_violation(self):
        vals = self.values
        if self.domain.is_powerset:
            # covering pairs suffice on a powerset
            for s in self.domain.sets:
                for i in range(1, self.domain.n + 1):
                    if i not in s:
                        t = s | {i}
                        if vals[s] > vals[t]:
                            return s, t
            return None
        items = [(s, _mask(s), vals[s]) for s in self.domain.sets]
        for s, ms, vs in items:
            for t, mt, vt in items:
                if ms != mt and ms & mt == ms and vs > vt:
                    return s, t
        return None

    def __call__(self, s) -> Fraction:
        return self.values[frozenset(s)]

    def __getitem__(self, s) -> Fraction:
        return self.values[frozenset(s)]

    @property
    def n(self) -> int:
        return self.domain.n

    @property
    def is_capacity(self) -> bool:
        return self.values[self.domain.ground] == 1

    def items(self):
        return ((s, self.values[s]) for s in self.domain.sets)


def validate_measure(domain: Collection, values: Mapping) -> MonotoneMeasure:
    """Coerce ``values`` (any number-like) and validate against ``domain``."""
    return MonotoneMeasure(domain, {frozenset(k): to_rational(v) for k, v in values.items()})


@dataclass(frozen=True)
class StepFunction:
    """Right-continuous step function on ``[0, inf)`` in canonical form.

    Piece ``k`` is ``values[k]`` on ``[breakpoints[k], breakpoints[k+1])``;
    the last piece extends to infinity. Canonical form (first breakpoint 0,
    strictly ascending breakpoints, adjacent values distinct) makes equality
    of functions the same as ``==`` on instances.
    """

    breakpoints: tuple[Fraction, ...]
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.breakpoints or len(self.breakpoints) != len(self.values):
            raise ValueError("need one value per breakpoint")
        if self.breakpoints[0] != 0:
            raise ValueError("first breakpoint must be 0")
        for a, b in zip(self.breakpoints, self.breakpoints[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly ascending")
        for a, b in zip(self.values, self.values[1:]):
            if a == b:
                raise ValueError("adjacent pieces must differ")

    @classmethod
    def constant(cls, value=0) -> "StepFunction":
        return cls((Fraction(0),), (to_rational(value),))

    def pieces(self) -> list[tuple[Fraction, ExtRational, Fraction]]:
        ends = list(self.breakpoints[1:]) + [INF]
        return list(zip(self.breakpoints, ends, self.values))

    def __call__(self, alpha) -> Fraction:
        if alpha < 0:
            raise ValueError("step functions are defined on [0, inf)")
        value = self.values[0]
        for b, v in zip(self.breakpoints, self.values):
            if b > alpha:
                break
            value = v
        return value

    @property
    def tail(self) -> Fraction:
        return self.values[-1]

    def is_nonincreasing(self) -> bool:
        return all(a >= b for a, b in zip(self.values, self.values[1:]))

    def integral(self) -> Fraction:
        return integrate_step(self)

    def __str__(self) -> str:
        return " + ".join(
            f"{v}·1[{lo},{'inf' if hi == INF else hi})" for lo, hi, v in self.pieces() if v != 0
        ) or "0"


def canonicalize_step(raw: Iterable[Sequence]) -> StepFunction:
    """Turn ``(lo, hi, value)`` pieces into a canonical :class:`StepFunction`.

    Empty pieces (``lo == hi``) are dropped and equal neighbours merged. The
    remaining pieces must tile ``[0, inf)`` exactly.
    """
    pieces = []
    for lo, hi, value in raw:
        if hi < lo:
            raise GapOrOverlap(f"reversed interval [{lo},{hi})")
        if lo == hi:
            continue
        pieces.append((to_rational(lo), hi if hi == INF else to_rational(hi), to_rational(value)))
    if not pieces:
        raise GapOrOverlap("no nonempty pieces")
    pieces.sort(key=lambda p: p[0])
    if pieces[0][0] != 0:
        raise GapOrOverlap(f"gap on [0,{pieces[0][0]})")
    for (_, hi, _), (lo, _, _) in zip(pieces, pieces[1:]):
        if hi != lo:
            kind = "overlap" if lo < hi else "gap"
            raise GapOrOverlap(f"{kind} at {min(lo, hi)}")
    if pieces[-1][1] != INF:
        raise GapOrOverlap(f"gap on [{pieces[-1][1]},inf)")
    breaks, values = [], []
    for lo, _, v in pieces:
        if values and values[-1] == v:
            continue
        breaks.append(lo)
        values.append(v)
    return StepFunction(tuple(breaks), tuple(values))


def integrate_step(f: StepFunction) -> Fraction:
    if f.tail != 0:
        raise DivergentIntegral(f"final value {f.tail} is not 0")
    total = Fraction(0)
    for lo, hi, v in f.pieces()[:-1]:
        total += v * (hi - lo)
    return total
