"""Command-line surface.

Subcommands wrap the library one-to-one (chromatic, omega, chambers,
critical-points, chi, kapranov, parse); `verify` runs every route on the
same inputs and cross-checks the results.

Exit codes: 0 all agree, 1 disagreement or solver failure, 2 parse/usage
error, 3 budget exceeded.  JSON goes to stdout (JSON lines for verify),
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import arrangement as arr_mod
from . import critical as crit_mod
from . import digraph_poly as dig_mod
from . import moduli as mod_mod
from . import orientations as ori_mod
from .errors import BudgetExceededError, GraphParseError
from .graphs import Digraph, SimpleGraph, chromatic_polynomial, graph_to_json, load_graph_file

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3

DATA_DIR = Path(__file__).parent / "data"
DEFAULT_SUITE = (DATA_DIR / "paw.txt", DATA_DIR / "instar.txt")


@dataclass(frozen=True)
class Budgets:
    orientations: int = ori_mod.DEFAULT_CANDIDATE_BUDGET
    lp_functionals: int = arr_mod.DEFAULT_LP_FUNCTIONAL_BUDGET
    terms: int = mod_mod.DEFAULT_TERM_CAP


def _emit(obj, pretty=False):
    if pretty:
        print(json.dumps(obj, indent=2, sort_keys=True))
    else:
        print(json.dumps(obj, sort_keys=True, separators=(",", ":")))


def _load(path):
    try:
        return load_graph_file(path)
    except OSError as exc:
        raise GraphParseError(f"cannot read {path}: {exc}") from exc


def _load_weights(path, expected):
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, list) or len(data) != expected:
        raise GraphParseError(f"weights file must hold a JSON array of {expected} numbers")
    return [float(x) for x in data]


def _signed_chromatic(graph: SimpleGraph, x: int) -> int:
    return (-1) ** graph.n * chromatic_polynomial(graph).evaluate(x)


def cmd_parse(args):
    _emit(graph_to_json(_load(args.graph)), args.pretty)
    return EXIT_OK


def cmd_chromatic(args):
    graph = _load(args.graph)
    if not isinstance(graph, SimpleGraph):
        raise GraphParseError("chromatic needs a simple graph file")
    poly = chromatic_polynomial(graph)
    _emit(
        {
            "graph": graph_to_json(graph),
            "coefficients": list(poly.coefficients),
            "degree": poly.degree,
        },
        args.pretty,
    )
    return EXIT_OK


def cmd_omega(args):
    graph = _load(args.graph)
    mode = args.mode
    if isinstance(graph, Digraph) and mode == "undirected":
        raise GraphParseError("digraph input needs --mode in or --mode out")
    g, m = args.g, args.m
    if g < 0 or m < 0 or (2 * g - 2 + m <= 0 and (g, m) != (1, 0)):
        raise GraphParseError(f"need 2g-2+m > 0 (or g=1, m=0), got g={g}, m={m}")
    out = {"g": g, "m": m, "mode": mode, "graph": graph_to_json(graph)}
    if (g, m) == (1, 0):
        if isinstance(graph, SimpleGraph):
            chi = chromatic_polynomial(graph)
        else:
            chi = dig_mod.chi_for(graph, mode, args.budget_terms)
        out["value"] = (-1) ** (graph.n - 1) * chi.derivative_at_zero()
        out["route"] = "chromatic-derivative"
    else:
        engine_m = m + 2 * g
        value, stats = mod_mod.omega_with_stats(graph, engine_m, mode, args.budget_terms)
        out["value"] = value
        out["engine_m"] = engine_m
        out["route"] = "engine" if g == 0 else "engine-genus-reduced"
        out["terms_peak"] = stats["terms_peak"]
        out["terms_final"] = stats["terms_final"]
    _emit(out, args.pretty)
    return EXIT_OK


def cmd_chambers(args):
    graph = _load(args.graph)
    if not isinstance(graph, SimpleGraph):
        raise GraphParseError("chambers needs a simple graph file")
    out = {"graph": graph_to_json(graph), "m": args.m}
    counts = []
    if args.method in ("bijective", "both"):
        cb = arr_mod.bounded_chambers_bijective(graph, args.m, args.budget_orientations)
        out["count_bijective"] = len(cb)
        out["chambers"] = [c.to_json() for c in cb]
        counts.append(len(cb))
    if args.method in ("lp", "both"):
        arr = arr_mod.build_arrangement(graph, args.m)
        cl = arr_mod.bounded_chambers_lp(arr, args.budget_lp)
        out["count_lp"] = len(cl)
        out.setdefault("chambers", [c.to_json() for c in cl])
        counts.append(len(cl))
        if args.method == "both":
            out["sign_vectors_match"] = {c.signs for c in cb} == {c.signs for c in cl}
    _emit(out, args.pretty)
    if len(set(counts)) > 1 or out.get("sign_vectors_match") is False:
        return EXIT_DISAGREE
    return EXIT_OK


def cmd_critical_points(args):
    graph = _load(args.graph)
    if not isinstance(graph, SimpleGraph):
        raise GraphParseError("critical-points needs a simple graph file")
    arr = arr_mod.build_arrangement(graph, args.m)
    if args.weights:
        weights = _load_weights(args.weights, len(arr.functionals))
    else:
        weights = crit_mod.default_weights(arr, args.seed)
    chambers = arr_mod.bounded_chambers_bijective(graph, args.m, args.budget_orientations)
    reports = crit_mod.solve_all_chambers(arr, weights, chambers)
    _emit([r.to_json() for r in reports], args.pretty)
    return EXIT_OK if all(r.converged for r in reports) else EXIT_DISAGREE


def cmd_chi(args):
    graph = _load(args.graph)
    if not isinstance(graph, Digraph):
        raise GraphParseError("chi needs a digraph file (header line 'digraph')")
    report = dig_mod.digraph_polynomial_report(graph, args.budget_terms)
    out = report.to_json()
    if args.mode != "both":
        keep = {"advisories", "consistent", f"chi_{args.mode}", f"route_{args.mode}"}
        out = {k: v for k, v in out.items() if k in keep}
    out["graph"] = graph_to_json(graph)
    _emit(out, args.pretty)
    return EXIT_OK if report.consistent else EXIT_DISAGREE


def cmd_kapranov(args):
    with open(args.constraints, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        raw = data["constraints"]
        markings = data.get("markings")
    else:
        raw = data
        markings = None
    constraints = []
    for item in raw:
        if isinstance(item, dict):
            constraints.append((frozenset(item["subset"]), item["marking"]))
        else:
            subset, mark = item
            constraints.append((frozenset(subset), mark))
    if markings is None:
        markings = frozenset().union(*(s for s, _ in constraints))
    check = mod_mod.cerberus_check(constraints)
    value, stats = mod_mod.kapranov_degree_with_stats(
        constraints, frozenset(markings), term_cap=args.budget_terms
    )
    _emit(
        {
            "degree": value,
            "cerberus": check,
            "terms_peak": stats["terms_peak"],
            "terms_final": stats["terms_final"],
        },
        args.pretty,
    )
    return EXIT_OK


def _verify_simple_row(graph, name, m, args):
    row = {"graph": name, "kind": "simple", "m": m}
    skipped = []
    values = {}
    values["chromatic"] = _signed_chromatic(graph, -(m - 2))
    try:
        values["stanley"] = ori_mod.stanley_pair_count(graph, m - 2, args.budget_orientations)
    except BudgetExceededError:
        skipped.append("stanley")
    try:
        chambers = arr_mod.bounded_chambers_bijective(graph, m, args.budget_orientations)
        values["chambers_bijective"] = len(chambers)
    except BudgetExceededError:
        chambers = None
        skipped.append("chambers_bijective")
    try:
        arr = arr_mod.build_arrangement(graph, m)
        values["chambers_lp"] = len(arr_mod.bounded_chambers_lp(arr, args.budget_lp))
    except BudgetExceededError:
        skipped.append("chambers_lp")
    if chambers is not None:
        arr = arr_mod.build_arrangement(graph, m)
        weights = crit_mod.default_weights(arr, args.seed)
        reports = crit_mod.solve_all_chambers(arr, weights, chambers)
        values["critical_points"] = sum(1 for r in reports if r.converged)
    else:
        skipped.append("critical_points")
    try:
        values["engine_omega"] = mod_mod.omega(graph, m, "undirected", args.budget_terms)
    except BudgetExceededError:
        skipped.append("engine_omega")
    row["values"] = values
    row["skipped"] = sorted(skipped)
    row["agree"] = len(set(values.values())) == 1
    return row


@lru_cache(maxsize=None)
def _digraph_reports(graph, term_cap):
    """The polynomial reports do not depend on m; share them across rows."""
    return (
        dig_mod.digraph_polynomial_report(graph, term_cap),
        dig_mod.digraph_polynomial_report(graph.reverse(), term_cap),
    )


def _verify_digraph_row(graph, name, m, args):
    """Digraph rows check the two engine values against the polynomial routes."""
    row = {"graph": name, "kind": "digraph", "m": m}
    skipped = []
    try:
        report, reversed_report = _digraph_reports(graph, args.budget_terms)
        sign = (-1) ** graph.n
        values = {
            "omega_in": mod_mod.omega(graph, m, "in", args.budget_terms),
            "chi_in_eval": sign * report.chi_in.evaluate(-(m - 2)),
            "omega_out": mod_mod.omega(graph, m, "out", args.budget_terms),
            "chi_out_eval": sign * report.chi_out.evaluate(-(m - 2)),
        }
        row["values"] = values
        row["agree"] = (
            report.consistent
            and values["omega_in"] == values["chi_in_eval"]
            and values["omega_out"] == values["chi_out_eval"]
            and reversed_report.chi_in == report.chi_out
            and reversed_report.chi_out == report.chi_in
        )
    except BudgetExceededError:
        skipped.append("engine")
        row["agree"] = True
    row["skipped"] = skipped
    return row


def _pretty_verify(rows):
    header = f"{'graph':14s} {'m':>2s} {'kind':8s} {'values':40s} {'agree':5s}"
    print(header)
    print("-" * len(header))
    for row in rows:
        vals = row.get("values", {})
        rendered = " ".join(f"{k}={v}" for k, v in sorted(vals.items()))
        print(f"{row['graph']:14s} {row['m']:>2d} {row['kind']:8s} {rendered:40s} {row['agree']}")


def cmd_verify(args):
    paths = [Path(p) for p in args.graph] if args.graph else list(DEFAULT_SUITE)
    ms = [int(tok) for tok in str(args.m).split(",")]
    rows = []
    for path in paths:
        graph = _load(path)
        name = path.name
        for m in ms:
            if isinstance(graph, SimpleGraph):
                rows.append(_verify_simple_row(graph, name, m, args))
            else:
                rows.append(_verify_digraph_row(graph, name, m, args))
    if args.pretty:
        _pretty_verify(rows)
    else:
        for row in rows:
            _emit(row)
    if any(not row["agree"] for row in rows):
        return EXIT_DISAGREE
    if any(row["skipped"] for row in rows):
        return EXIT_BUDGET
    return EXIT_OK


def _add_common(sub, graph_required=True, needs_m=False):
    if graph_required:
        sub.add_argument("--graph", required=True, help="graph file path")
    if needs_m:
        sub.add_argument("--m", type=int, required=True, help="number of extra markings")
    sub.add_argument("--pretty", action="store_true")
    defaults = Budgets()
    sub.add_argument("--budget-orientations", type=int, default=defaults.orientations)
    sub.add_argument("--budget-lp", type=int, default=defaults.lp_functionals)
    sub.add_argument("--budget-terms", type=int, default=defaults.terms)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="chromoduli",
        description="Graph intersection numbers cross-checked through independent routes",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("parse", help="echo a parsed graph file as JSON")
    _add_common(p)
    p.set_defaults(func=cmd_parse)

    p = subs.add_parser("chromatic", help="chromatic polynomial coefficients")
    _add_common(p)
    p.set_defaults(func=cmd_chromatic)

    p = subs.add_parser("omega", help="intersection number of a graph")
    _add_common(p, needs_m=True)
    p.add_argument("--g", type=int, default=0, help="genus (handled by exact reduction)")
    p.add_argument("--mode", choices=["undirected", "in", "out"], default="undirected")
    p.set_defaults(func=cmd_omega)

    p = subs.add_parser("chambers", help="bounded chambers of the graph arrangement")
    _add_common(p, needs_m=True)
    p.add_argument("--method", choices=["bijective", "lp", "both"], default="both")
    p.set_defaults(func=cmd_chambers)

    p = subs.add_parser("critical-points", help="one certified critical point per chamber")
    _add_common(p, needs_m=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--weights", help="JSON array of positive weights, one per functional")
    p.set_defaults(func=cmd_critical_points)

    p = subs.add_parser("chi", help="digraph polynomials (in/out)")
    _add_common(p)
    p.add_argument("--mode", choices=["in", "out", "both"], default="both")
    p.set_defaults(func=cmd_chi)

    p = subs.add_parser("kapranov", help="degree of a constraint system from a JSON file")
    p.add_argument("--constraints", required=True)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--budget-terms", type=int, default=Budgets().terms)
    p.set_defaults(func=cmd_kapranov)

    p = subs.add_parser("verify", help="run all routes and cross-check them")
    p.add_argument("--graph", action="append", help="graph file; repeatable (default: shipped suite)")
    p.add_argument("--m", default="3,4", help="comma-separated list of extra-marking counts")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pretty", action="store_true")
    defaults = Budgets()
    p.add_argument("--budget-orientations", type=int, default=defaults.orientations)
    p.add_argument("--budget-lp", type=int, default=defaults.lp_functionals)
    p.add_argument("--budget-terms", type=int, default=defaults.terms)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (json.JSONDecodeError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceededError as exc:
        print(f"budget: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
