"""Random instance generators and small fixed instances shared by the tests."""

from __future__ import annotations

import json
import random
from itertools import groupby
from fractions import Fraction
from pathlib import Path

from hypothesis import strategies as st

from gchoquet.aggregators import FCA, MAX, MIN, SUM, ChoquetAggregator
from gchoquet.gsf import Arrangement
from gchoquet.core import Collection, MonotoneMeasure, complement_collection, powerset, validate_collection
from gchoquet.io import load_instance, parse_powerset_measure

DATA = Path(__file__).parent / "data"


def data_path(name: str) -> Path:
    return DATA / name


def load(name: str):
    return load_instance(DATA / name)


def load_doc(name: str):
    return json.loads((DATA / name).read_text(encoding="utf-8"))


def load_measure(name: str) -> MonotoneMeasure:
    doc = load_doc(name)
    return parse_powerset_measure(doc["measure"], doc["n"])


F = Fraction


def monotone_values(domain_sets, raw):
    """Monotone hull: each set takes the largest raw value among its subsets."""
    return {
        s: max((raw[t] for t in domain_sets if t and t <= s), default=Fraction(0))
        for s in domain_sets
    }


def random_capacity(rng: random.Random, n: int, denom: int = 5) -> MonotoneMeasure:
    """Monotone measure on 2^[n] with μ([n]) = 1."""
    sets = powerset(n)
    ground = frozenset(range(1, n + 1))
    raw = {s: Fraction(rng.randint(0, denom), denom) for s in sets}
    raw[ground] = Fraction(1)
    vals = monotone_values(sets, raw)
    return MonotoneMeasure(Collection(n, tuple(sets)), vals)


def random_collection(rng: random.Random, n: int) -> Collection:
    middle = [s for s in powerset(n) if s and len(s) < n]
    chosen = [s for s in middle if rng.random() < 0.5]
    return validate_collection(n, [frozenset(), frozenset(range(1, n + 1))] + chosen)


def random_measure(rng: random.Random, collection: Collection, denom: int = 4) -> MonotoneMeasure:
    domain = complement_collection(collection)
    ground = collection.ground
    raw = {s: Fraction(rng.randint(0, 2 * denom), denom) for s in domain.sets}
    raw[ground] = max(raw[ground], Fraction(1, denom))
    return MonotoneMeasure(domain, monotone_values(domain.sets, raw))


def random_vector(rng: random.Random, n: int, denom: int = 2, top: int = 6) -> tuple:
    return tuple(Fraction(rng.randint(0, top * denom), denom) for _ in range(n))


def random_fca(rng: random.Random, collection: Collection, mixed: bool = True) -> FCA:
    n = collection.n
    inner = random_capacity(rng, n)
    kinds = [MAX, MIN, SUM, ChoquetAggregator(inner)]
    if not mixed:
        return FCA.uniform(collection, rng.choice(kinds))
    return FCA(collection, {e: rng.choice(kinds) for e in collection})


def random_instance(rng: random.Random, n: int | None = None):
    """``(fca, measure, x)`` with n in {2,3,4} and kinds chosen per set."""
    n = n if n is not None else rng.choice((2, 3, 4))
    c = random_collection(rng, n)
    return random_fca(rng, c), random_measure(rng, c), random_vector(rng, n)


def corpus(seed: int, size: int):
    rng = random.Random(seed)
    return [random_instance(rng) for _ in range(size)]


@st.composite
def instances(draw, n=None):
    """Hypothesis wrapper around :func:`random_instance`."""
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    rng = random.Random(seed)
    size = n if n is not None else draw(st.sampled_from((1, 2, 3, 4)))
    return random_instance(rng, size)


@st.composite
def capacities(draw, n):
    seed = draw(st.integers(min_value=0, max_value=2**32 - 1))
    return random_capacity(random.Random(seed), n)


def vectors(n, top=8):
    return st.tuples(*[st.fractions(min_value=0, max_value=top, max_denominator=4)] * n)


def shuffle_ties(arr: Arrangement, rng: random.Random) -> Arrangement:
    """Reorder sets inside every tie group; ``∅`` stays first in E."""

    def shuffled(sets, values, keep_first):
        out = []
        pairs = list(zip(sets, values))
        start = 1 if keep_first else 0
        out.extend(pairs[:start])
        for _, grp in groupby(pairs[start:], key=lambda p: p[1]):
            grp = list(grp)
            rng.shuffle(grp)
            out.extend(grp)
        return tuple(s for s, _ in out), tuple(v for _, v in out)

    e_sets, a = shuffled(arr.e_sets, arr.a, True)
    f_sets, mu = shuffled(arr.f_sets, arr.mu, False)
    return Arrangement(arr.n, e_sets, a, f_sets, mu)


def chain_triple(g):
    """A triple on a chain collection whose GSF is the step function ``g``.

    With ``E_k = {1..k}``, the sum aggregator and ``x_k = b_k - b_{k-1}`` the
    aggregation values are the breakpoints; the complement of ``E_k`` gets
    the value ``g`` takes on ``[b_k, b_{k+1})``.
    """
    from gchoquet.aggregators import FCA, SUM
    from gchoquet.equivalence import Triple

    pieces = [(lo, v) for lo, _, v in g.pieces()]
    if len(pieces) == 1:  # the zero function
        c = Collection(1, (frozenset(), frozenset({1})))
        mu = MonotoneMeasure(complement_collection(c), {frozenset(): Fraction(0), frozenset({1}): Fraction(1)})
        return Triple(mu, FCA.uniform(c, SUM), (Fraction(0),))
    m = len(pieces) - 1
    sets = [frozenset(range(1, k + 1)) for k in range(m + 1)]
    c = Collection(m, tuple(sets))
    ground = c.ground
    mu = MonotoneMeasure(complement_collection(c), {ground - sets[k]: pieces[k][1] for k in range(m + 1)})
    x = tuple(pieces[k][0] - pieces[k - 1][0] for k in range(1, m + 1))
    return Triple(mu, FCA.uniform(c, SUM), x)


def accommodation():
    """Criteria, per-person measures and normalized alternative pairs."""
    from gchoquet.decision import Alternative, CriterionSpec, normalize_criteria

    doc = load_doc("accommodation.json")
    specs = [CriterionSpec(c["name"], c["direction"]) for c in doc["criteria"]]
    measures, groups = {}, {}
    for p in doc["profiles"]:
        measures[p["name"]] = parse_powerset_measure(p["measure"], len(specs))
        alts = [Alternative(a["name"], tuple(a["scores"])) for a in p["alternatives"]]
        groups[p["name"]] = normalize_criteria(specs, alts)
    return specs, measures, groups
