"""The generalized survival function (GSF).

``μ_A(x, α) = min{ μ(E^c) : A(x|E) <= α, E ∈ 𝓔 }``

Four independent routes are provided: the defining minimum evaluated at
every candidate breakpoint, the scan over sets sorted by aggregation value,
the scan over sets sorted by measure value, and closed forms for special
measures. All return canonical :class:`StepFunction` instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gchoquet.aggregators import FCA
from gchoquet.core import (
    INF,
    Collection,
    MonotoneMeasure,
    StepFunction,
    canonical_key,
    canonicalize_step,
    complement_collection,
    format_set,
    powerset,
    to_vector,
)
from gchoquet.errors import DomainMismatch, PreconditionViolated

__all__ = [
    "Arrangement",
    "build_arrangement",
    "gsf_definition",
    "agg_scan_pieces",
    "measure_scan_pieces",
    "gsf_agg_scan",
    "gsf_measure_scan",
    "SPECIAL_KINDS",
    "special_measure",
    "gsf_special",
    "check_domains",
]

Piece = tuple  # (lo, hi, value)


@dataclass(frozen=True)
class Arrangement:
    """Both sorted enumerations of the collection.

    ``e_sets[i]`` is ``E_i`` with aggregation value ``a[i]`` (ascending);
    ``f_sets[j]`` is ``F_j`` with measure value ``mu[j]`` (ascending).
    """

    n: int
    e_sets: tuple[frozenset, ...]
    a: tuple[Fraction, ...]
    f_sets: tuple[frozenset, ...]
    mu: tuple[Fraction, ...]

    def __post_init__(self):
        k = len(self.e_sets)
        if not (len(self.a) == len(self.f_sets) == len(self.mu) == k) or k < 2:
            raise ValueError("arrangement sequences must share a length >= 2")
        if self.e_sets[0] or self.a[0] != 0:
            raise ValueError("E_0 must be the empty set with A_0 = 0")
        if self.mu[0] != 0:
            raise ValueError("μ_0 must be 0")
        if any(p > q for p, q in zip(self.a, self.a[1:])):
            raise ValueError("aggregation values must be ascending")
        if any(p > q for p, q in zip(self.mu, self.mu[1:])):
            raise ValueError("measure values must be ascending")

    @property
    def kappa(self) -> int:
        return len(self.e_sets)

    @property
    def ground(self) -> frozenset:
        return frozenset(range(1, self.n + 1))

    def a_ext(self, i: int):
        """``A_i`` with ``A_κ = +inf``."""
        return INF if i >= self.kappa else self.a[i]

    def complement_measure(self) -> tuple[Fraction, ...]:
        """``μ_(i) = μ(E_i^c)`` for every aggregation index ``i``."""
        value = dict(zip(self.f_sets, self.mu))
        ground = self.ground
        return tuple(value[ground - e] for e in self.e_sets)

    def complement_aggregation(self) -> tuple[Fraction, ...]:
        """``A_⟨j⟩ = A(x|F_j^c)`` for every measure index ``j``."""
        value = dict(zip(self.e_sets, self.a))
        ground = self.ground
        return tuple(value[ground - f] for f in self.f_sets)


def check_domains(f: FCA, mu: MonotoneMeasure) -> None:
    expected = set(complement_collection(f.collection).sets)
    if f.n != mu.n or set(mu.domain.sets) != expected:
        raise DomainMismatch("measure domain must be the complement collection of the FCA")


def build_arrangement(f: FCA, mu: MonotoneMeasure, x) -> Arrangement:
    """Sort the collection by aggregation value and its complements by measure.

    Measure ties are broken by canonical subset order. Aggregation ties put
    ``∅`` first, then follow the measure order of the complements, so equal
    ``A`` values never introduce a spurious inversion of ``(·)``.
    """
    check_domains(f, mu)
    values = f.values(x)
    f_sets = sorted(mu.domain.sets, key=lambda s: (mu[s], canonical_key(s)))
    f_pos = {s: j for j, s in enumerate(f_sets)}
    ground = f.collection.ground
    e_sets = sorted(values, key=lambda e: (values[e], bool(e), f_pos[ground - e]))
    return Arrangement(
        n=f.n,
        e_sets=tuple(e_sets),
        a=tuple(values[e] for e in e_sets),
        f_sets=tuple(f_sets),
        mu=tuple(mu[s] for s in f_sets),
    )


def gsf_definition(f: FCA, mu: MonotoneMeasure, x) -> StepFunction:
    """Evaluate the defining minimum at every distinct aggregation value."""
    check_domains(f, mu)
    values = f.values(x)
    ground = f.collection.ground
    levels = sorted(set(values.values()))
    pieces = []
    for k, alpha in enumerate(levels):
        best = min(mu[ground - e] for e, v in values.items() if v <= alpha)
        hi = levels[k + 1] if k + 1 < len(levels) else INF
        pieces.append((alpha, hi, best))
    return canonicalize_step(pieces)


def agg_scan_pieces(arr: Arrangement) -> list[Piece]:
    """``min_{k<=i} μ_(k)`` on ``[A_i, A_{i+1})`` for every ``i``, uncanonicalized."""
    pieces = []
    running = None
    for i, m in enumerate(arr.complement_measure()):
        running = m if running is None else min(running, m)
        pieces.append((arr.a[i], arr.a_ext(i + 1), running))
    return pieces


def measure_scan_pieces(arr: Arrangement) -> list[Piece]:
    """``μ_j`` on ``[min_{k<=j} A_⟨k⟩, min_{k<j} A_⟨k⟩)``, uncanonicalized."""
    pieces = []
    before = INF  # min over the empty prefix
    for j, a in enumerate(arr.complement_aggregation()):
        upto = min(before, a)
        pieces.append((upto, before, arr.mu[j]))
        before = upto
    return pieces


def gsf_agg_scan(arr: Arrangement) -> StepFunction:
    return canonicalize_step(agg_scan_pieces(arr))


def gsf_measure_scan(arr: Arrangement) -> StepFunction:
    return canonicalize_step(measure_scan_pieces(arr))


SPECIAL_KINDS = ("greatest", "weakest", "symmetric", "possibility", "necessity")


def check_distribution(pi, n: int) -> tuple[Fraction, ...]:
    pi = to_vector(pi)
    if len(pi) != n:
        raise PreconditionViolated(f"distribution has {len(pi)} entries, expected {n}")
    if any(p < 0 or p > 1 for p in pi):
        raise PreconditionViolated("distribution values must lie in [0, 1]")
    if max(pi) != 1:
        raise PreconditionViolated("distribution must attain 1")
    return pi


def check_levels(levels, n: int) -> tuple[Fraction, ...]:
    levels = to_vector(levels)
    if len(levels) != n + 1:
        raise PreconditionViolated(f"need {n + 1} levels μ^0..μ^n, got {len(levels)}")
    if levels[0] != 0:
        raise PreconditionViolated("μ^0 must be 0")
    if any(p > q for p, q in zip(levels, levels[1:])):
        raise PreconditionViolated("levels must be nondecreasing")
    if levels[-1] <= 0:
        raise PreconditionViolated("μ^n must be positive")
    return levels


def special_measure(kind: str, collection: Collection, param=None) -> MonotoneMeasure:
    """The special measure of ``kind`` on the complement collection.

    ``param`` holds the levels for ``symmetric`` and the distribution ``π``
    for ``possibility`` and ``necessity``.
    """
    domain = complement_collection(collection)
    n = collection.n
    ground = collection.ground
    if kind == "greatest":
        values = {s: Fraction(1 if s else 0) for s in domain}
    elif kind == "weakest":
        values = {s: Fraction(1 if s == ground else 0) for s in domain}
    elif kind == "symmetric":
        levels = check_levels(param, n)
        values = {s: levels[len(s)] for s in domain}
    elif kind == "possibility":
        pi = check_distribution(param, n)
        values = {s: max((pi[i - 1] for i in s), default=Fraction(0)) for s in domain}
    elif kind == "necessity":
        pi = check_distribution(param, n)
        values = {s: 1 - max((pi[i - 1] for i in ground - s), default=Fraction(0)) for s in domain}
    else:
        raise ValueError(f"unknown special measure {kind!r}")
    return MonotoneMeasure(domain, values)


def require_monotone_powerset(f: FCA, x) -> None:
    if not f.collection.is_powerset:
        raise PreconditionViolated("this closed form needs the collection 2^[n]")
    vals = f.values(x)
    for e, v in vals.items():
        for i in f.collection.ground - e:
            w = vals[e | {i}]
            if v > w:
                raise PreconditionViolated(
                    f"FCA is not nondecreasing w.r.t. sets at x: "
                    f"A(x|{format_set(e)}) = {v} > {w} = A(x|{format_set(e | {i})})"
                )


def ascending_sigma(pi: Sequence[Fraction]) -> list[int]:
    """Labels sorted by ``π`` ascending, ties by label."""
    return sorted(range(1, len(pi) + 1), key=lambda i: (pi[i - 1], i))


def special_pieces(kind: str, f: FCA, x, param=None) -> list[Piece]:
    x = f.check_vector(x)
    n = f.n
    ground = f.collection.ground
    if kind == "greatest":
        top = f.evaluate(x, ground)
        return [(0, top, 1), (top, INF, 0)]
    if kind == "weakest":
        low = min(f.evaluate(x, e) for e in f.collection if e)
        return [(0, low, 1), (low, INF, 0)]
    require_monotone_powerset(f, x)
    vals = f.values(x)
    if kind == "symmetric":
        levels = check_levels(param, n)

        def min_card(c):
            if c > n:
                return INF
            return min(v for e, v in vals.items() if len(e) == c)

        return [(min_card(n - i), min_card(n - i + 1), levels[i]) for i in range(n + 1)]
    pi = check_distribution(param, n)
    sigma = ascending_sigma(pi)
    if kind == "possibility":
        # G[i] = {σ(i),...,σ(n)} for i = 1..n+1
        g = {i: frozenset(sigma[i - 1:]) for i in range(1, n + 2)}
        pieces = [(vals[g[i + 1]], vals[g[i]], pi[sigma[i - 1] - 1]) for i in range(1, n + 1)]
        pieces.append((vals[ground], INF, Fraction(0)))
        return pieces
    if kind == "necessity":
        single = [None] + [vals[frozenset({s})] for s in sigma]

        def tail_min(i, strict):
            start = i + 1 if strict else i
            if not strict and i == 0:
                return Fraction(0)
            ks = range(max(start, 1), n + 1)
            return min((single[k] for k in ks), default=INF)

        pis = [Fraction(0)] + [pi[s - 1] for s in sigma]
        return [(tail_min(i, False), tail_min(i, True), 1 - pis[i]) for i in range(n + 1)]
    raise ValueError(f"unknown special measure {kind!r}")


def gsf_special(kind: str, f: FCA, x, param=None) -> StepFunction:
    """Closed-form GSF for a special measure on the complement collection."""
    return canonicalize_step(special_pieces(kind, f, x, param))


def full_powerset(n: int) -> Collection:
    return Collection(n, tuple(powerset(n)))
