"""Command-line interface.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 precondition
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from gchoquet.aggregators import check_axioms
from gchoquet.choquet import ROUTES, choquet_all_routes, choquet_generalized, choquet_special
from gchoquet.core import INF, StepFunction, format_value, powerset
from gchoquet.decision import (
    Alternative,
    CriterionSpec,
    calibrate_measure,
    knapsack_select,
    normalize_criteria,
    rank_alternatives,
    shapley_vector,
)
from gchoquet.equivalence import Triple, equivalence_condition, integral_equivalent
from gchoquet.errors import GChoquetError, ParseError, PreconditionError
from gchoquet.gsf import (
    SPECIAL_KINDS,
    build_arrangement,
    gsf_agg_scan,
    gsf_definition,
    gsf_measure_scan,
    gsf_special,
    special_measure,
)
from gchoquet.index_maps import (
    build_permutations,
    gsf_compact,
    gsf_via_maps,
    indexed_gsf,
    plateau_bounds,
)
from gchoquet.io import (
    Instance,
    load_instance,
    load_json,
    parse_powerset_measure,
    parse_set,
    rational_str,
    set_key,
)
from gchoquet.plotting import permutation_ascii, permutation_svg, step_ascii, step_svg

GSF_ROUTES = ("def", "agg", "measure", "i", "j", "compact", "compact-psi")

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_PRECONDITION = 0, 2, 3, 4


def exit_code(exc: GChoquetError) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, PreconditionError):
        return EXIT_PRECONDITION
    return EXIT_VALIDATION


class Output:
    def __init__(self, args):
        self.json = args.json
        self.digits = args.digits or None

    def value(self, v) -> str:
        return format_value(v, self.digits)

    def emit(self, text_lines, doc):
        if self.json:
            print(json.dumps(doc, indent=2, ensure_ascii=False))
        else:
            for line in text_lines:
                print(line)


def _bound(v) -> str:
    return "inf" if v == INF else str(Fraction(v))


def _json_num(v) -> str:
    return "inf" if v == INF else rational_str(v)


def step_rows(f: StepFunction, out: Output) -> list[str]:
    return [f"[{_bound(lo)},{_bound(hi)}) -> {out.value(v)}" for lo, hi, v in f.pieces()]


def step_json(f: StepFunction) -> list[dict]:
    return [{"lo": _json_num(lo), "hi": _json_num(hi), "value": _json_num(v)} for lo, hi, v in f.pieces()]


def _parse_param(raw: str | None):
    if raw is None:
        return None
    return [t for t in raw.replace(";", ",").split(",") if t.strip()]


def _measure_for(inst: Instance, args):
    if getattr(args, "special", None):
        return special_measure(args.special, inst.collection, _parse_param(args.param))
    if inst.measure is None:
        raise ParseError("instance has no measure (use --special for a built-in one)")
    return inst.measure


def compute_gsf(inst: Instance, route: str, args) -> StepFunction:
    if getattr(args, "special", None) and route == "special":
        return gsf_special(args.special, inst.fca, inst.x, _parse_param(args.param))
    mu = _measure_for(inst, args)
    if route == "def":
        return gsf_definition(inst.fca, mu, inst.x)
    arr = build_arrangement(inst.fca, mu, inst.x)
    if route == "agg":
        return gsf_agg_scan(arr)
    if route == "measure":
        return gsf_measure_scan(arr)
    pt = build_permutations(arr)
    if route in ("i", "j"):
        return gsf_via_maps(arr, pt, route)
    pb = plateau_bounds(arr, pt)
    if route == "compact":
        return gsf_compact(arr, pt, pb, "phi_high")
    if route == "compact-psi":
        return gsf_compact(arr, pt, pb, "psi_low")
    raise ParseError(f"unknown route {route!r}")


def cmd_gsf(args, out: Output) -> int:
    inst = load_instance(args.instance)
    routes = GSF_ROUTES if args.route == "all" else (args.route,)
    results = {r: compute_gsf(inst, r, args) for r in routes}
    if args.special:
        results["special"] = compute_gsf(inst, "special", args)
    first = next(iter(results.values()))
    if any(g != first for g in results.values()):
        lines = [f"{r}: {g}" for r, g in results.items()]
        print("routes disagree:\n" + "\n".join(lines), file=sys.stderr)
        return 1
    if args.at is not None:
        alpha = Fraction(args.at)
        v = first(alpha)
        out.emit([out.value(v)], {"alpha": rational_str(alpha), "value": rational_str(v)})
        return EXIT_OK
    out.emit(step_rows(first, out), {"routes": list(results), "pieces": step_json(first)})
    return EXIT_OK


def cmd_choquet(args, out: Output) -> int:
    inst = load_instance(args.instance)
    if args.special and not args.route:
        v = choquet_special(args.special, inst.fca, inst.x, _parse_param(args.param))
        out.emit([out.value(v)], {"special": args.special, "value": rational_str(v)})
        return EXIT_OK
    mu = _measure_for(inst, args)
    route = args.route or "integrate"
    if route == "all":
        values = choquet_all_routes(inst.fca, mu, inst.x)
        if len(set(values.values())) != 1:
            print(f"routes disagree: {values}", file=sys.stderr)
            return 1
        lines = [f"{r}: {out.value(v)}" for r, v in values.items()]
        out.emit(lines, {r: rational_str(v) for r, v in values.items()})
        return EXIT_OK
    res = choquet_generalized(inst.fca, mu, inst.x, route)
    lines = [out.value(res.value)]
    if args.show_gsf:
        lines += step_rows(res.gsf, out)
    out.emit(lines, {"route": res.route, "value": rational_str(res.value), "gsf": step_json(res.gsf)})
    return EXIT_OK


def _load_bundle(path):
    doc = load_json(path)
    try:
        specs = [CriterionSpec(c["name"], c.get("direction", "maximize")) for c in doc["criteria"]]
        n = len(specs)
        profiles = []
        for p in doc["profiles"]:
            alts = [Alternative(a["name"], tuple(a["scores"])) for a in p["alternatives"]]
            mu = parse_powerset_measure(p["measure"], n)
            profiles.append((p["name"], mu, alts))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bundle is missing field {exc}") from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    return specs, profiles, bool(doc.get("normalize", True))


def cmd_rank(args, out: Output) -> int:
    specs, profiles, normalize = _load_bundle(args.bundle)
    groups = []
    for name, _, alts in profiles:
        groups.append((name, normalize_criteria(specs, alts) if normalize else alts))
    methods = ("standard", "generalized") if args.method == "both" else (args.method,)
    lines, doc = [], []
    for name, mu, _ in profiles:
        targets = groups if args.cross else [g for g in groups if g[0] == name]
        for method in methods:
            for group_name, alts in targets:
                ranking = rank_alternatives(alts, mu, method)
                head = f"{name} {method}" + (f" on {group_name}" if args.cross else "")
                order = " ".join(
                    ("= " if k and ranking[k - 1].rank == e.rank else "> " if k else "") + e.name
                    for k, e in enumerate(ranking)
                )
                lines.append(f"{head}: {order}")
                for e in ranking:
                    lines.append(f"  {e.rank}. {e.name} {out.value(e.score)}")
                doc.append({
                    "profile": name,
                    "method": method,
                    "alternatives": group_name,
                    "ranking": [{"rank": e.rank, "name": e.name, "score": rational_str(e.score)} for e in ranking],
                })
    out.emit(lines, doc)
    return EXIT_OK


def cmd_knapsack(args, out: Output) -> int:
    inst = load_instance(args.instance)
    if inst.measure is None:
        raise ParseError("knapsack instance needs a price measure")
    budget = Fraction(args.budget) if args.budget is not None else inst.budget
    if budget is None:
        raise ParseError("no budget given (use --budget or a \"budget\" field)")
    res = knapsack_select(inst.x, inst.measure, budget, inst.collection)
    ground = inst.collection.ground
    lines = [
        f"value: {out.value(res.value)}",
        f"take: {inst.format_set(res.chosen)}",
        f"leave: {inst.format_set(ground - res.chosen)}",
    ]
    if args.all:
        lines.append("minimizers: " + " ".join(inst.format_set(e) for e in res.minimizers))
    out.emit(lines, {
        "budget": rational_str(budget),
        "value": rational_str(res.value),
        "take": sorted(res.chosen),
        "leave": sorted(ground - res.chosen),
        "minimizers": [sorted(e) for e in res.minimizers],
    })
    return EXIT_OK


def _triple(path) -> Triple:
    inst = load_instance(path)
    if inst.measure is None:
        raise ParseError(f"{path}: instance has no measure")
    return Triple(inst.measure, inst.fca, inst.x)


def cmd_equiv(args, out: Output) -> int:
    t1, t2 = _triple(args.first), _triple(args.second)
    same = integral_equivalent(t1, t2)
    witness = equivalence_condition(t1, t2)
    if bool(witness) != same:
        print("structural condition disagrees with GSF comparison", file=sys.stderr)
        return 1
    lines = [f"equivalent: {'true' if same else 'false'}"]
    if same:
        lines += ["gsf:"] + ["  " + r for r in step_rows(t1.gsf(), out)]
    else:
        side, level = witness.offending
        lines.append(f"unmatched level of triple {side}: μ_{level.index} = {out.value(level.value)} on {level.interval}")
    doc = {"equivalent": same, "gsf_first": step_json(t1.gsf()), "gsf_second": step_json(t2.gsf())}
    out.emit(lines, doc)
    return EXIT_OK


def _measure_file(doc):
    if not isinstance(doc, dict) or "n" not in doc or "measure" not in doc:
        raise ParseError("expected an object with fields n and measure")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError("n must be a positive integer")
    return parse_powerset_measure(doc["measure"], n)


def cmd_shapley(args, out: Output) -> int:
    mu = _measure_file(load_json(args.file))
    phi = shapley_vector(mu)
    lines = [f"φ({i}) = {out.value(v)}" for i, v in enumerate(phi, start=1)]
    lines.append(f"sum = {out.value(sum(phi))}")
    out.emit(lines, {"shapley": [rational_str(v) for v in phi]})
    return EXIT_OK


def cmd_calibrate(args, out: Output) -> int:
    doc = load_json(args.file)
    if not isinstance(doc, dict) or "targets" not in doc:
        raise ParseError("expected an object with a targets field")
    pinned = None
    if "pinned" in doc:
        pinned = {parse_set(k): v for k, v in doc["pinned"].items()}
    cal = calibrate_measure(doc["targets"], doc.get("singletons"), pinned, strict=args.strict)
    lines = [f"selection: {cal.selection}"]
    lines += [f"μ({set_key(s)}) = {out.value(cal.values[s])}" for s in cal.free_sets]
    lines += [f"target φ({i}) = {out.value(t)}, got {out.value(p)}"
              for i, (t, p) in enumerate(zip(cal.targets, cal.shapley), start=1)]
    lines.append(f"max residual: {out.value(cal.max_residual)}")
    for vec in cal.nullspace:
        lines.append("free direction: (" + ", ".join(str(v) for v in vec) + ")")
    lines.append("monotone: " + ("yes" if cal.violation is None else
                                  f"no, {set_key(cal.violation[0])} ⊆ {set_key(cal.violation[1])}"))
    out.emit(lines, {
        "selection": cal.selection,
        "values": {set_key(s): rational_str(cal.values[s]) for s in powerset(len(cal.targets))},
        "targets": [rational_str(t) for t in cal.targets],
        "shapley": [rational_str(v) for v in cal.shapley],
        "nullspace": [[rational_str(v) for v in vec] for vec in cal.nullspace],
        "monotone": cal.violation is None,
    })
    return EXIT_OK


def cmd_check(args, out: Output) -> int:
    try:
        doc = load_json(args.file)
        if isinstance(doc, dict) and "vector" not in doc and "measure" in doc:
            _measure_file(doc)
            report = None
        else:
            inst = load_instance(args.file)
            report = check_axioms(inst.fca)
    except GChoquetError as exc:
        print(f"{type(exc).__name__}: {exc}")
        return exit_code(exc)
    lines = ["ok"] if report is None else [f"ok; FCA axioms: {report}"]
    out.emit(lines, {"valid": True, "axioms": None if report is None else report.passed})
    return EXIT_OK if report is None or report.passed else EXIT_VALIDATION


def cmd_plot(args, out: Output) -> int:
    inst = load_instance(args.instance)
    mu = _measure_for(inst, args)
    arr = build_arrangement(inst.fca, mu, inst.x)
    pt = build_permutations(arr)
    if args.what == "gsf":
        g = gsf_via_maps(arr, pt, "i")
        y_ticks = sorted(set(arr.mu))
        text = step_svg(g, x_ticks=sorted(set(arr.a)), y_ticks=y_ticks, title="GSF") \
            if args.format == "svg" else step_ascii(g)
    elif args.what == "indexed":
        g = indexed_gsf(pt)
        text = step_svg(g, x_ticks=range(arr.kappa), y_ticks=range(arr.kappa), title="indexed GSF", x_label="β") \
            if args.format == "svg" else step_ascii(g)
    else:
        text = permutation_svg(pt.pi, title="(·)") if args.format == "svg" else permutation_ascii(pt.pi)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def _add_special(p):
    p.add_argument("--special", choices=SPECIAL_KINDS, help="replace the measure by a special one")
    p.add_argument("--param", help="levels or distribution for --special, comma separated")


def _add_common(p, json_default, digits_default):
    p.add_argument("--json", action="store_true", default=json_default, help="print one JSON document")
    p.add_argument("--digits", type=int, default=digits_default,
                   help="significant digits of the decimal rendering (0 for exact only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gchoquet", description=__doc__.splitlines()[0])
    _add_common(parser, json_default=False, digits_default=6)
    # the same options after the subcommand; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, json_default=argparse.SUPPRESS, digits_default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    p = add("gsf", help="generalized survival function")
    p.add_argument("instance")
    p.add_argument("--route", choices=GSF_ROUTES + ("all",), default="agg")
    p.add_argument("--at", help="evaluate at a single α")
    _add_special(p)
    p.set_defaults(func=cmd_gsf)

    p = add("choquet", help="generalized Choquet integral")
    p.add_argument("instance")
    p.add_argument("--route", choices=ROUTES + ("all",))
    p.add_argument("--show-gsf", action="store_true")
    _add_special(p)
    p.set_defaults(func=cmd_choquet)

    p = add("rank", help="rank alternatives of a bundle")
    p.add_argument("bundle")
    p.add_argument("--method", choices=("standard", "generalized", "both"), default="both")
    p.add_argument("--cross", action="store_true", help="score every profile on every group")
    p.set_defaults(func=cmd_rank)

    p = add("knapsack", help="select items under a volume budget")
    p.add_argument("instance")
    p.add_argument("--budget")
    p.add_argument("--all", action="store_true", help="list every minimizing set")
    p.set_defaults(func=cmd_knapsack)

    p = add("equiv", help="integral equivalence of two instances")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equiv)

    p = add("shapley", help="Shapley values of a measure on 2^[n]")
    p.add_argument("file")
    p.set_defaults(func=cmd_shapley)

    p = add("calibrate", help="fit a capacity to Shapley targets")
    p.add_argument("file")
    p.add_argument("--strict", action="store_true", help="fail on a non-monotone solution")
    p.set_defaults(func=cmd_calibrate)

    p = add("check", help="validate an instance or measure file")
    p.add_argument("file")
    p.set_defaults(func=cmd_check)

    p = add("plot", help="render the GSF or index diagrams")
    p.add_argument("instance")
    p.add_argument("--what", choices=("gsf", "indexed", "perm-diagram"), default="gsf")
    p.add_argument("--format", choices=("svg", "ascii"), default="ascii")
    p.add_argument("--out")
    _add_special(p)
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args)
    try:
        return args.func(args, out)
    except GChoquetError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code(exc)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"ParseError: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
