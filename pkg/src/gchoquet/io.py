"""JSON instance files.

An instance holds a collection, an FCA, a vector and a measure on the
complement collection. Sets are written as 1-based index lists or as
strings like ``"{1,3}"`` and ``"{}"``; numbers as decimal or ``p/q``
strings (plain JSON numbers are accepted on input).

    {
      "n": 3,
      "collection": [[], [1], [2], [3], [1, 3], [1, 2, 3]],
      "aggregator": {"kind": "sum"},
      "vector": ["2", "3", "1"],
      "measure": {"{}": "0", "{2}": "0.5", ...}
    }

Aggregators are ``{"kind": "max" | "min" | "sum"}``, ``{"kind": "choquet",
"inner": <measure on 2^[n]>}`` or ``{"kind": "mixed", "per_set": {"{1}":
"max", ...}, "default": "sum"}`` (``inner`` is shared by per-set
``choquet`` entries).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Any

from gchoquet.aggregators import FCA, Aggregator, ChoquetAggregator, kind_from_name
from gchoquet.core import (
    Collection,
    MonotoneMeasure,
    canonical_sort,
    complement_collection,
    format_set,
    powerset,
    to_rational,
    validate_collection,
)
from gchoquet.errors import ParseError

__all__ = [
    "Instance",
    "parse_set",
    "set_key",
    "rational_str",
    "parse_measure",
    "measure_to_json",
    "parse_instance",
    "instance_to_json",
    "load_json",
    "load_instance",
]

_SET_RE = re.compile(r"^\s*[{\[]?\s*([0-9,\s]*)\s*[}\]]?\s*$")


def parse_set(raw) -> frozenset:
    if isinstance(raw, str):
        if raw.strip() in ("∅", ""):
            return frozenset()
        m = _SET_RE.match(raw)
        if not m:
            raise ParseError(f"cannot parse set {raw!r}")
        body = m.group(1).strip()
        return frozenset(int(t) for t in body.split(",") if t.strip())
    if isinstance(raw, (list, tuple)):
        if not all(isinstance(i, int) and not isinstance(i, bool) for i in raw):
            raise ParseError(f"set members must be integers: {raw!r}")
        return frozenset(raw)
    raise ParseError(f"cannot parse set {raw!r}")


def set_key(s: frozenset) -> str:
    return "{" + ",".join(str(i) for i in sorted(s)) + "}"


def rational_str(v: Fraction) -> str:
    """Exact decimal string when one exists, else ``p/q``."""
    v = Fraction(v)
    d = v.denominator
    twos = fives = 0
    while d % 2 == 0:
        d //= 2
        twos += 1
    while d % 5 == 0:
        d //= 5
        fives += 1
    if d != 1:
        return str(v)
    places = max(twos, fives)
    if places == 0:
        return str(v.numerator)
    scaled = v * 10**places
    sign = "-" if scaled < 0 else ""
    digits = str(abs(scaled.numerator)).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def _number(raw, what: str) -> Fraction:
    try:
        return to_rational(raw)
    except ParseError as exc:
        raise ParseError(f"{what}: {exc}") from None


def _require(doc: dict, key: str):
    if not isinstance(doc, dict):
        raise ParseError("expected a JSON object")
    if key not in doc:
        raise ParseError(f"missing field {key!r}")
    return doc[key]


def parse_measure(raw, domain: Collection) -> MonotoneMeasure:
    """Measure values keyed by set strings, or a list of ``[set, value]`` pairs."""
    if isinstance(raw, dict):
        items = list(raw.items())
    elif isinstance(raw, list):
        try:
            items = [(s, v) for s, v in raw]
        except (TypeError, ValueError):
            raise ParseError("measure list entries must be [set, value] pairs") from None
    else:
        raise ParseError("measure must be an object or a list of pairs")
    values = {}
    for s, v in items:
        key = parse_set(s)
        if key in values:
            raise ParseError(f"duplicate measure entry for {format_set(key)}")
        values[key] = _number(v, f"measure value for {format_set(key)}")
    return MonotoneMeasure(domain, values)


def measure_to_json(mu: MonotoneMeasure) -> dict[str, str]:
    return {set_key(s): rational_str(v) for s, v in mu.items()}


def parse_powerset_measure(raw, n: int) -> MonotoneMeasure:
    return parse_measure(raw, Collection(n, tuple(powerset(n))))


def _parse_aggregator(raw, collection: Collection) -> FCA:
    if isinstance(raw, str):
        raw = {"kind": raw}
    kind = str(_require(raw, "kind")).lower()
    inner = None
    if "inner" in raw:
        inner = parse_powerset_measure(raw["inner"], collection.n)

    def make(name) -> Aggregator:
        try:
            return kind_from_name(str(name), inner)
        except ValueError as exc:
            raise ParseError(str(exc)) from None

    if kind != "mixed":
        return FCA.uniform(collection, make(kind))
    per_set = raw.get("per_set", {})
    default = raw.get("default")
    assignment = {}
    for key, name in per_set.items():
        assignment[parse_set(key)] = make(name)
    for s in collection:
        if s not in assignment:
            if default is None:
                raise ParseError(f"no aggregator for {format_set(s)} and no default")
            assignment[s] = make(default)
    return FCA(collection, assignment)


def _aggregator_to_json(f: FCA) -> dict[str, Any]:
    kinds = list(f.assignment.values())
    inner = next((k.inner for k in kinds if isinstance(k, ChoquetAggregator)), None)
    if f.is_uniform():
        out: dict[str, Any] = {"kind": kinds[0].name}
    else:
        out = {
            "kind": "mixed",
            "per_set": {set_key(s): f.assignment[s].name for s in f.collection},
        }
    if inner is not None:
        out["inner"] = measure_to_json(inner)
    return out


@dataclass(frozen=True)
class Instance:
    collection: Collection
    fca: FCA
    x: tuple
    measure: MonotoneMeasure | None
    labels: tuple[str, ...] | None = None
    budget: Fraction | None = None

    @property
    def n(self) -> int:
        return self.collection.n

    def label(self, i: int) -> str:
        return self.labels[i - 1] if self.labels else str(i)

    def format_set(self, s) -> str:
        if not self.labels:
            return format_set(s)
        return "{" + ",".join(self.label(i) for i in sorted(s)) + "}"


def parse_instance(doc: dict) -> Instance:
    n = _require(doc, "n")
    if not isinstance(n, int) or isinstance(n, bool):
        raise ParseError("n must be an integer")
    raw_sets = doc.get("collection", "powerset")
    if raw_sets == "powerset":
        collection = Collection(n, tuple(powerset(n)))
    else:
        if not isinstance(raw_sets, list):
            raise ParseError("collection must be a list of sets or \"powerset\"")
        collection = validate_collection(n, [parse_set(s) for s in raw_sets])
    fca = _parse_aggregator(doc.get("aggregator", {"kind": "sum"}), collection)
    vector = _require(doc, "vector")
    if not isinstance(vector, list):
        raise ParseError("vector must be a list")
    x = tuple(_number(v, f"vector component {k + 1}") for k, v in enumerate(vector))
    fca.check_vector(x)
    measure = None
    if "measure" in doc:
        measure = parse_measure(doc["measure"], complement_collection(collection))
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n:
            raise ParseError(f"labels must be a list of {n} names")
        labels = tuple(str(v) for v in labels)
    budget = _number(doc["budget"], "budget") if "budget" in doc else None
    return Instance(collection, fca, x, measure, labels, budget)


def instance_to_json(inst: Instance) -> dict[str, Any]:
    out: dict[str, Any] = {
        "n": inst.n,
        "collection": [sorted(s) for s in canonical_sort(inst.collection.sets)],
        "aggregator": _aggregator_to_json(inst.fca),
        "vector": [rational_str(v) for v in inst.x],
    }
    if inst.measure is not None:
        out["measure"] = measure_to_json(inst.measure)
    if inst.labels is not None:
        out["labels"] = list(inst.labels)
    if inst.budget is not None:
        out["budget"] = rational_str(inst.budget)
    return out


def load_json(path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None


def load_instance(path) -> Instance:
    return parse_instance(load_json(path))
