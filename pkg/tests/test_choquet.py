import pytest
from hypothesis import given, settings, strategies as st

from gchoquet.aggregators import FCA, MAX, SUM, ChoquetAggregator
from gchoquet.choquet import (
    ROUTES,
    choquet_all_routes,
    choquet_generalized,
    choquet_special,
    choquet_standard,
    owa,
    owa_weights,
)
from gchoquet.core import integrate_step, validate_collection
from gchoquet.errors import BadLevels, MeasureNotOnPowerset
from gchoquet.gsf import full_powerset, gsf_definition, special_measure

from instances import (
    F,
    capacities,
    instances,
    load,
    load_measure,
    random_capacity,
    random_collection,
    random_measure,
    vectors,
)


def test_standard_on_anthony():
    mu = load_measure("anthony_measure.json")
    assert choquet_standard((1, F("0.84"), F("0.875")), mu) == F("0.8943")
    assert choquet_standard((F("0.4"), 1, 1), mu) == F("0.886")


@given(capacities(3), st.fractions(0, 10, max_denominator=7))
def test_standard_of_constant_vector(mu, c):
    assert choquet_standard((c, c, c), mu) == c * mu[frozenset({1, 2, 3})]


def test_standard_needs_powerset():
    inst = load("worked_example.json")
    with pytest.raises(MeasureNotOnPowerset):
        choquet_standard(inst.x, inst.measure)


@pytest.mark.parametrize("route", ROUTES)
def test_worked_example_every_route(route):
    inst = load("worked_example.json")
    res = choquet_generalized(inst.fca, inst.measure, inst.x, route)
    assert res.value == F(7, 2)
    assert res.route == route
    assert integrate_step(res.gsf) == res.value


def test_anthony_generalized():
    mu = load_measure("anthony_measure.json")
    f = FCA.uniform(full_powerset(3), ChoquetAggregator(mu))
    assert choquet_generalized(f, mu, (F("0.4"), 1, 1)).value == F("0.68572")


def test_unknown_route():
    inst = load("worked_example.json")
    with pytest.raises(ValueError):
        choquet_generalized(inst.fca, inst.measure, inst.x, "formula_v")


@settings(max_examples=150, deadline=None)
@given(instances())
def test_routes_agree(case):
    f, mu, x = case
    values = choquet_all_routes(f, mu, x)
    assert len(set(values.values())) == 1
    assert values["integrate"] == integrate_step(gsf_definition(f, mu, x))


@settings(max_examples=60, deadline=None)
@given(instances())
def test_greatest_measure_gives_full_set_aggregate(case):
    f, _, x = case
    mu = special_measure("greatest", f.collection)
    expected = f.evaluate(x, f.collection.ground)
    assert choquet_generalized(f, mu, x).value == expected
    assert choquet_special("greatest", f, x) == expected


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.tuples(capacities(n), vectors(n))))
def test_max_family_embeds_standard_integral(case):
    mu, x = case
    f = FCA.uniform(full_powerset(mu.n), MAX)
    assert choquet_generalized(f, mu, x).value == choquet_standard(x, mu)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.randoms(use_true_random=False))
def test_monotone_in_vector(n, rng):
    c = random_collection(rng, n)
    inner = random_capacity(rng, n)
    f = FCA(c, {e: rng.choice([MAX, SUM, ChoquetAggregator(inner)]) for e in c})
    mu = random_measure(rng, c)
    x = tuple(F(rng.randint(0, 6)) for _ in range(n))
    y = tuple(v + F(rng.randint(0, 2)) for v in x)
    assert choquet_generalized(f, mu, x).value <= choquet_generalized(f, mu, y).value


class TestSpecial:
    def test_weakest_on_worked_example(self):
        inst = load("worked_example.json")
        assert choquet_special("weakest", inst.fca, inst.x) == 1

    def test_symmetric_with_max_is_owa(self):
        f = FCA.uniform(full_powerset(3), MAX)
        levels = (0, F("0.2"), F("0.6"), 1)
        assert choquet_special("symmetric", f, (1, 2, 3), levels) == F("1.8")
        assert owa((1, 2, 3), owa_weights(levels)) == F("1.8")

    @settings(max_examples=60, deadline=None)
    @given(st.integers(1, 4), st.randoms(use_true_random=False))
    def test_closed_forms_match_generic_route(self, n, rng):
        c = full_powerset(n)
        f = FCA.uniform(c, rng.choice([MAX, SUM, ChoquetAggregator(random_capacity(rng, n))]))
        x = tuple(F(rng.randint(0, 8), 2) for _ in range(n))
        grid = [F(k, 4) for k in range(5)]
        levels = [F(0)] + sorted(rng.choice(grid) for _ in range(n))
        levels[-1] = max(levels[-1], F(1, 4))
        pi = [rng.choice(grid) for _ in range(n)]
        pi[rng.randrange(n)] = F(1)
        for kind, param in [("greatest", None), ("weakest", None), ("symmetric", levels),
                            ("possibility", pi), ("necessity", pi)]:
            mu = special_measure(kind, c, param)
            assert choquet_special(kind, f, x, param) == choquet_generalized(f, mu, x).value, kind

    @given(st.integers(1, 4).flatmap(lambda n: st.tuples(st.just(n), vectors(n))), st.randoms(use_true_random=False))
    def test_possibility_with_max_is_standard(self, case, rng):
        n, x = case
        c = full_powerset(n)
        pi = [F(rng.randint(0, 4), 4) for _ in range(n)]
        pi[rng.randrange(n)] = F(1)
        f = FCA.uniform(c, MAX)
        expected = choquet_standard(x, special_measure("possibility", c, pi))
        assert choquet_special("possibility", f, x, pi) == expected


class TestOwa:
    def test_weights_of_example_levels(self):
        assert owa_weights(("0", "0.2", "0.6", "1")) == (F("0.4"), F("0.4"), F("0.2"))

    def test_greatest_symmetric_levels_give_max(self):
        w = owa_weights((0, 1, 1, 1))
        assert w == (0, 0, 1)
        assert owa((3, 1, 2), w) == 3

    def test_weakest_symmetric_levels_give_min(self):
        w = owa_weights((0, 0, 0, 1))
        assert w == (1, 0, 0)
        assert owa((3, 1, 2), w) == 1

    @pytest.mark.parametrize("levels", [(0, F(1, 2)), (F(1, 10), 1), (0, F(3, 4), F(1, 2), 1), (0,)])
    def test_bad_levels(self, levels):
        with pytest.raises(BadLevels):
            owa_weights(levels)

    @given(st.integers(1, 5), st.data())
    def test_symmetric_integral_is_owa(self, n, data):
        inner = sorted(data.draw(st.lists(st.fractions(0, 1, max_denominator=8), min_size=n - 1, max_size=n - 1)))
        levels = [F(0)] + inner + [F(1)]
        x = data.draw(vectors(n))
        w = owa_weights(levels)
        assert sum(w) == 1
        f = FCA.uniform(full_powerset(n), MAX)
        mu = special_measure("symmetric", f.collection, levels)
        assert choquet_generalized(f, mu, x).value == owa(x, w)


def test_decreasing_example_integral():
    inst = load("decreasing_example.json")
    # 1·2 + 0.8·2 + 0.5·1 + 0.3·4
    assert choquet_generalized(inst.fca, inst.measure, inst.x).value == F("5.3")


def test_trivial_collection_integral():
    c = validate_collection(2, [[], [1, 2]])
    mu = special_measure("greatest", c)
    f = FCA.uniform(c, SUM)
    assert choquet_all_routes(f, mu, (2, 5)) == {r: 7 for r in ROUTES}
