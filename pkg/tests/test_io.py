import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from gchoquet.aggregators import MAX, ChoquetAggregator
from gchoquet.core import complement_collection
from gchoquet.errors import MissingEmptySet, MonotonicityViolation, NegativeComponent, ParseError
from gchoquet.gsf import gsf_definition
from gchoquet.io import (
    Instance,
    instance_to_json,
    load_instance,
    load_json,
    measure_to_json,
    parse_instance,
    parse_set,
    rational_str,
)

from instances import F, instances, load, load_doc, random_capacity

S = frozenset


@pytest.mark.parametrize(
    "raw, expected",
    [("{1,3}", S({1, 3})), ("{}", S()), ("∅", S()), ("[2, 1]", S({1, 2})), ([3], S({3})), (" { 4 } ", S({4}))],
)
def test_parse_set(raw, expected):
    assert parse_set(raw) == expected


@pytest.mark.parametrize("raw", ["{a}", [1.5], [True], 7, "{1;2}"])
def test_parse_set_rejects(raw):
    with pytest.raises(ParseError):
        parse_set(raw)


@pytest.mark.parametrize(
    "v, text", [(F(7, 2), "3.5"), (F(1, 3), "1/3"), (F(-1, 8), "-0.125"), (F(6), "6"), (F(1, 20), "0.05"), (F(0), "0")]
)
def test_rational_str(v, text):
    assert rational_str(v) == text
    assert F(text) == v


def test_worked_example_fields():
    inst = load("worked_example.json")
    assert inst.n == 3 and len(inst.collection) == 6
    assert inst.x == (2, 3, 1)
    assert inst.measure[S({2, 3})] == F("0.7")
    assert inst.fca.is_uniform() and inst.budget is None


def test_labels_and_budget():
    inst = load("knapsack.json")
    assert inst.labels == ("a", "b", "c", "d")
    assert inst.budget == 200
    assert inst.format_set(S({1, 3})) == "{a,c}"


@pytest.mark.parametrize("name", ["worked_example.json", "knapsack.json", "decreasing_example.json", "trivial.json"])
def test_fixture_round_trip(name):
    inst = load(name)
    doc = instance_to_json(inst)
    again = parse_instance(json.loads(json.dumps(doc)))
    assert instance_to_json(again) == doc
    assert gsf_definition(again.fca, again.measure, again.x) == gsf_definition(inst.fca, inst.measure, inst.x)


@settings(max_examples=60, deadline=None)
@given(instances())
def test_random_round_trip(case):
    f, mu, x = case
    inst = Instance(f.collection, f, x, mu)
    again = parse_instance(json.loads(json.dumps(instance_to_json(inst))))
    assert again.x == x
    assert dict(again.measure.items()) == dict(mu.items())
    assert all(again.fca.evaluate(x, e) == f.evaluate(x, e) for e in f.collection)


def test_choquet_and_mixed_aggregators_round_trip():
    inner = random_capacity(random.Random(2), 2)
    inst = parse_instance({
        "n": 2,
        "aggregator": {"kind": "mixed", "per_set": {"{1}": "max", "{1,2}": "choquet"}, "default": "sum",
                       "inner": measure_to_json(inner)},
        "vector": [1, 2],
    })
    assert inst.fca.assignment[S({1})] is MAX
    assert isinstance(inst.fca.assignment[S({1, 2})], ChoquetAggregator)
    doc = instance_to_json(inst)
    assert doc["aggregator"]["kind"] == "mixed"
    assert instance_to_json(parse_instance(doc)) == doc


def test_measure_as_pair_list():
    doc = load_doc("worked_example.json")
    doc["measure"] = [[k, v] for k, v in doc["measure"].items()]
    assert parse_instance(doc).measure == load("worked_example.json").measure


@pytest.mark.parametrize(
    "patch, error",
    [
        ({"n": "3"}, ParseError),
        ({"vector": "2,3,1"}, ParseError),
        ({"vector": ["2", "x", "1"]}, ParseError),
        ({"vector": ["2", "-3", "1"]}, NegativeComponent),
        ({"collection": {"sets": []}}, ParseError),
        ({"collection": [[1], [1, 2, 3]]}, MissingEmptySet),
        ({"aggregator": {"kind": "median"}}, ParseError),
        ({"aggregator": {"kind": "mixed", "per_set": {}}}, ParseError),
        ({"labels": ["a"]}, ParseError),
        ({"measure": 3}, ParseError),
        ({"measure": [["{}", "0", "extra"]]}, ParseError),
    ],
)
def test_parse_errors(patch, error):
    doc = load_doc("worked_example.json")
    doc.update(patch)
    with pytest.raises(error):
        parse_instance(doc)


def test_missing_vector():
    doc = load_doc("worked_example.json")
    del doc["vector"]
    with pytest.raises(ParseError, match="vector"):
        parse_instance(doc)


def test_duplicate_measure_entry():
    doc = load_doc("worked_example.json")
    doc["measure"] = [["{}", "0"], ["{}", "0"]]
    with pytest.raises(ParseError, match="duplicate"):
        parse_instance(doc)


def test_tampered_measure_is_rejected():
    with pytest.raises(MonotonicityViolation) as err:
        load("tampered.json")
    assert (err.value.smaller, err.value.larger) == (S({2}), S({2, 3}))


def test_file_errors(tmp_path):
    with pytest.raises(ParseError, match="cannot read"):
        load_json(tmp_path / "absent.json")
    bad = tmp_path / "bad.json"
    bad.write_text("{\"n\": 3,,}")
    with pytest.raises(ParseError, match="invalid JSON"):
        load_instance(bad)


def test_measure_lives_on_complements():
    inst = load("worked_example.json")
    assert inst.measure.domain == complement_collection(inst.collection)
