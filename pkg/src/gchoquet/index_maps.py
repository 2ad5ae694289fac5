"""Index machinery on top of an :class:`Arrangement`.

``(i) = j`` when ``E_i = F_j^c`` and ``⟨·⟩`` is its inverse. The maps
``i_map`` and ``j_map`` are running minima of ``(·)`` and ``⟨·⟩``; they
remove the crossings of the permutation so the GSF can be read off
directly. Plateau bounds delimit the greatest interval on which a value is
attained. Arrays are 0-based, indexed ``0..κ-1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import accumulate

from gchoquet.core import INF, StepFunction, canonicalize_step
from gchoquet.errors import IndexOutOfRange
from gchoquet.gsf import Arrangement

__all__ = [
    "PermutationTables",
    "build_permutations",
    "gsf_via_maps",
    "i_route_pieces",
    "j_route_pieces",
    "indexed_gsf",
    "indexed_gsf_from_j",
    "relabel",
    "PlateauBounds",
    "plateau_bounds",
    "Interval",
    "greatest_interval",
    "is_value_achieved",
    "gsf_compact",
    "compact_pieces",
    "COMPACT_FORMS",
    "is_decreasing",
    "decreasing_shortcut",
]


@dataclass(frozen=True)
class PermutationTables:
    pi: tuple[int, ...]
    pi_inv: tuple[int, ...]
    i_map: tuple[int, ...]
    j_map: tuple[int, ...]

    @property
    def kappa(self) -> int:
        return len(self.pi)


def build_permutations(arr: Arrangement) -> PermutationTables:
    ground = arr.ground
    f_pos = {f: j for j, f in enumerate(arr.f_sets)}
    pi = tuple(f_pos[ground - e] for e in arr.e_sets)
    pi_inv = [0] * len(pi)
    for i, j in enumerate(pi):
        pi_inv[j] = i
    return PermutationTables(
        pi=pi,
        pi_inv=tuple(pi_inv),
        i_map=tuple(accumulate(pi, min)),
        j_map=tuple(accumulate(pi_inv, min)),
    )


def i_route_pieces(arr: Arrangement, pt: PermutationTables) -> list[tuple]:
    """Loop form of the ``i`` route: the running minimum is taken in place."""
    kappa = arr.kappa
    p = list(pt.pi)
    pieces = []
    for i in range(kappa - 1):
        if p[i + 1] > p[i]:
            p[i + 1] = p[i]
        pieces.append((arr.a[i], arr.a[i + 1], arr.mu[p[i]]))
    pieces.append((arr.a[kappa - 1], INF, arr.mu[p[kappa - 1]]))
    return pieces


def j_route_pieces(arr: Arrangement, pt: PermutationTables) -> list[tuple]:
    """Loop form of the ``j`` route, with ``A_{j(-1)} = +inf``."""
    kappa = arr.kappa
    q = list(pt.pi_inv)
    pieces = [(arr.a[q[0]], INF, arr.mu[0])]
    for j in range(1, kappa):
        if q[j - 1] < q[j]:
            q[j] = q[j - 1]
        pieces.append((arr.a[q[j]], arr.a[q[j - 1]], arr.mu[j]))
    return pieces


def gsf_via_maps(arr: Arrangement, pt: PermutationTables, route: str = "i") -> StepFunction:
    if route in ("i", "i_route"):
        return canonicalize_step(i_route_pieces(arr, pt))
    if route in ("j", "j_route"):
        return canonicalize_step(j_route_pieces(arr, pt))
    raise ValueError(f"unknown route {route!r}")


def indexed_gsf(pt: PermutationTables) -> StepFunction:
    """GSF on the index axis: ``i_map(floor(β))`` below ``κ-1``, ``i_map(κ-1)`` beyond."""
    kappa = pt.kappa
    pieces = [(k, k + 1, pt.i_map[k]) for k in range(kappa - 1)]
    pieces.append((kappa - 1, INF, pt.i_map[kappa - 1]))
    return canonicalize_step(pieces)


def indexed_gsf_from_j(pt: PermutationTables) -> StepFunction:
    """Same function built from the generalized inverse of ``j_map``."""
    j = pt.j_map
    pieces = [(j[0], INF, 0)]
    pieces += [(j[k], j[k - 1], k) for k in range(1, pt.kappa)]
    return canonicalize_step(pieces)


def relabel(indexed: StepFunction, arr: Arrangement) -> StepFunction:
    """Replace breakpoint ``b`` by ``A_b`` and level ``k`` by ``μ_k``."""
    pieces = []
    for lo, hi, v in indexed.pieces():
        pieces.append((arr.a[int(lo)], INF if hi == INF else arr.a_ext(int(hi)), arr.mu[int(v)]))
    return canonicalize_step(pieces)


@dataclass(frozen=True)
class PlateauBounds:
    phi_low: tuple[int, ...]
    phi_high: tuple[int, ...]
    psi_low: tuple[int, ...]
    psi_high: tuple[int, ...]


def _blocks(values) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """First and last index of the run of equal values containing each index."""
    n = len(values)
    low, high = [0] * n, [0] * n
    start = 0
    for k in range(1, n + 1):
        if k == n or values[k] != values[start]:
            for m in range(start, k):
                low[m], high[m] = start, k - 1
            start = k
    return tuple(low), tuple(high)


def running_min_measure(arr: Arrangement) -> tuple[Fraction, ...]:
    return tuple(accumulate(arr.complement_measure(), min))


def plateau_bounds(arr: Arrangement, pt: PermutationTables | None = None) -> PlateauBounds:
    # μ is sorted and the running minima are monotone, so blocks are runs
    phi_low, phi_high = _blocks(arr.mu)
    psi_low, psi_high = _blocks(running_min_measure(arr))
    return PlateauBounds(phi_low, phi_high, psi_low, psi_high)


@dataclass(frozen=True)
class Interval:
    lo: object
    hi: object

    @property
    def empty(self) -> bool:
        return not self.lo < self.hi

    def __contains__(self, alpha) -> bool:
        return self.lo <= alpha < self.hi

    def __str__(self):
        if self.empty:
            return "∅"
        hi = "inf" if self.hi == INF else str(self.hi)
        return f"[{self.lo},{hi})"


def _prefix_min(values, upto: int):
    """``min(values[0..upto])`` with ``+inf`` for a negative bound."""
    return min(values[: upto + 1], default=INF)


def greatest_interval(
    query: str, index: int, arr: Arrangement, pt: PermutationTables, pb: PlateauBounds
) -> Interval:
    """Greatest interval on which the GSF attains the queried value.

    ``query="measure"`` asks for ``μ_index``; ``query="agg"`` asks for the
    running minimum ``min_{k<=index} μ_(k)``. Unattained values yield an
    empty interval.
    """
    if not 0 <= index < arr.kappa:
        raise IndexOutOfRange(f"index {index} outside 0..{arr.kappa - 1}")
    if query in ("measure", "j"):
        a_inv = arr.complement_aggregation()
        return Interval(
            _prefix_min(a_inv, pb.phi_high[index]), _prefix_min(a_inv, pb.phi_low[index] - 1)
        )
    if query in ("agg", "i"):
        return Interval(arr.a[pb.psi_low[index]], arr.a_ext(pb.psi_high[index] + 1))
    raise ValueError(f"unknown query {query!r}")


def is_value_achieved(j: int, arr: Arrangement, pt: PermutationTables, pb: PlateauBounds) -> bool:
    return not greatest_interval("measure", j, arr, pt, pb).empty


COMPACT_FORMS = ("phi_high", "phi_low", "psi_low", "psi_high")


def compact_pieces(
    arr: Arrangement, pt: PermutationTables, pb: PlateauBounds, form: str = "phi_high"
) -> list[tuple]:
    """Summands of the compact formulas, each value attained at most once.

    The zero tail beyond the last summand is appended explicitly.
    """
    kappa = arr.kappa
    if form.startswith("phi"):
        a_inv = arr.complement_aggregation()
        if form == "phi_high":
            bound = [_prefix_min(a_inv, pb.phi_high[j]) for j in range(kappa)]
            pieces = [(bound[j], bound[j - 1], arr.mu[j]) for j in range(1, kappa)]
            pieces.append((bound[0], INF, Fraction(0)))
            return pieces
        if form == "phi_low":
            low = list(pb.phi_low) + [kappa]

            def upper(j):
                return Fraction(0) if j == kappa else _prefix_min(a_inv, low[j] - 1)

            pieces = [(upper(j + 1), upper(j), arr.mu[j]) for j in range(1, kappa)]
            pieces.append((upper(1), INF, Fraction(0)))
            return pieces
    running = running_min_measure(arr)
    if form == "psi_low":
        pieces = [
            (arr.a[pb.psi_low[i]], arr.a[pb.psi_low[i + 1]], running[i]) for i in range(kappa - 1)
        ]
        pieces.append((arr.a[pb.psi_low[kappa - 1]], INF, Fraction(0)))
        return pieces
    if form == "psi_high":
        high = lambda i: -1 if i < 0 else pb.psi_high[i]  # noqa: E731
        pieces = [
            (arr.a_ext(high(i - 1) + 1), arr.a_ext(high(i) + 1), running[i]) for i in range(kappa - 1)
        ]
        last = high(kappa - 2) + 1
        pieces.append((arr.a_ext(last), INF, Fraction(0)))
        return pieces
    raise ValueError(f"unknown compact form {form!r}")


def gsf_compact(
    arr: Arrangement, pt: PermutationTables, pb: PlateauBounds, form: str = "phi_high"
) -> StepFunction:
    return canonicalize_step(compact_pieces(arr, pt, pb, form))


def is_decreasing(pt: PermutationTables) -> bool:
    return all(p > q for p, q in zip(pt.pi, pt.pi[1:]))


def decreasing_shortcut(arr: Arrangement) -> StepFunction:
    """``Σ μ_{κ-1-i} 1[A_i, A_{i+1})``, valid when ``(·)`` is decreasing."""
    kappa = arr.kappa
    return canonicalize_step(
        (arr.a[i], arr.a_ext(i + 1), arr.mu[kappa - 1 - i]) for i in range(kappa)
    )
