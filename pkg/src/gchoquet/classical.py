"""The discrete Choquet integral and OWA weights."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from gchoquet.core import MonotoneMeasure, to_vector
from gchoquet.errors import BadLevels, MeasureNotOnPowerset


def ascending_order(x: Sequence[Fraction]) -> list[int]:
    """Criteria labels sorted by score, ties by label."""
    return sorted(range(1, len(x) + 1), key=lambda i: (x[i - 1], i))


def choquet_standard(x, mu: MonotoneMeasure) -> Fraction:
    """Discrete Choquet integral of ``x`` with respect to ``mu`` on ``2^[n]``.

    Both the increment form and the Möbius-free difference form are
    evaluated; they must agree exactly.
    """
    x = to_vector(x)
    if not mu.domain.is_powerset:
        raise MeasureNotOnPowerset("the standard Choquet integral needs μ on 2^[n]")
    if len(x) != mu.n:
        raise ValueError(f"vector has {len(x)} components, measure has n={mu.n}")
    order = ascending_order(x)
    n = len(order)
    level = [frozenset(order[k:]) for k in range(n + 1)]  # level[n] is empty

    increments = Fraction(0)
    prev = Fraction(0)
    for k, i in enumerate(order):
        increments += mu[level[k]] * (x[i - 1] - prev)
        prev = x[i - 1]

    differences = Fraction(0)
    for k, i in enumerate(order):
        differences += x[i - 1] * (mu[level[k]] - mu[level[k + 1]])

    assert increments == differences
    return increments


def owa_weights(levels) -> tuple[Fraction, ...]:
    """OWA weights of a symmetric capacity given by its levels ``μ^0..μ^n``.

    ``w_i = μ^{n-i+1} - μ^{n-i}`` weights the ``i``-th smallest score.
    """
    levels = to_vector(levels)
    if len(levels) < 2:
        raise BadLevels("need at least μ^0 and μ^1")
    if levels[0] != 0:
        raise BadLevels("μ^0 must be 0")
    if levels[-1] != 1:
        raise BadLevels("μ^n must be 1")
    if any(a > b for a, b in zip(levels, levels[1:])):
        raise BadLevels("levels must be nondecreasing")
    n = len(levels) - 1
    return tuple(levels[n - i + 1] - levels[n - i] for i in range(1, n + 1))


def owa(x, weights) -> Fraction:
    x = sorted(to_vector(x))
    weights = to_vector(weights)
    if len(x) != len(weights):
        raise ValueError("weights and vector differ in length")
    return sum((w * v for w, v in zip(weights, x)), Fraction(0))

