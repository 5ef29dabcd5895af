"""Command-line front end.

Exit codes: 0 ok, 1 negative result, 2 input error, 3 discrepancy found,
4 resource limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path
from typing import List, Optional

from . import closed_form as cf
from .config import DEFAULT_REALIZE_LIMIT, DEFAULT_VERTEX_LIMIT, worker_count
from .errors import InvalidArgumentError, InvalidSpecError, ResourceLimitError
from .graph import INFINITE, analyze, build_mgraph, diameter_bruteforce, export_dot
from .groups import GroupSpec
from .realization import construct_for_diameter, realize_tree
from .sweep import (
    compare_configuration,
    cyclic_configurations,
    product_configurations,
    run_sweep,
)
from .trees import parse_tree_text

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT, EXIT_DISCREPANCY, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _dump(doc) -> str:
    return json.dumps(doc, indent=2) + "\n"


def _json_int(value):
    return "infinite" if value == INFINITE else int(value)


def analysis_document(spec: GroupSpec, m: int, limit_vertices: int) -> dict:
    g = build_mgraph(spec, m, limit_vertices)
    report = analyze(g)
    connected = cf.predict_connected(spec, m)
    predictions = None
    if connected:
        census = cf.predict_degree_census(spec, m)
        diam = cf.predict_diameter(spec, m)
        fixed = cf.predict_diameter(spec, m, corrected=True)
        predictions = {
            "identity_degree": census.identity_degree,
            "degree_census": {str(d): c for d, c in census.as_mapping().items()},
            "edge_count": spec.order - 1,
            "is_tree": True,
            "diameter": diam.value,
            "diameter_case": diam.case_label.value,
            "diameter_corrected": fixed.value,
            "diameter_corrected_case": fixed.case_label.value,
        }
    rows = compare_configuration(spec, m, limit_vertices)
    return {
        "group": str(spec),
        "m": m,
        "k": math.gcd(m, spec.order),
        "connected": connected,
        "predictions": predictions,
        "oracle": report.to_dict(),
        "discrepancies": [r.discrepancy_record() for r in rows if not r.match],
    }


def cmd_analyze(args) -> int:
    doc = analysis_document(GroupSpec.parse(args.group), args.m, args.limit_vertices)
    sys.stdout.write(_dump(doc))
    return EXIT_DISCREPANCY if doc["discrepancies"] else EXIT_OK


def cmd_export_dot(args) -> int:
    g = build_mgraph(GroupSpec.parse(args.group), args.m, args.limit_vertices)
    sys.stdout.write(export_dot(g))
    return EXIT_OK


def cmd_sweep(args) -> int:
    if not (args.cyclic or args.products):
        raise InvalidArgumentError("choose --cyclic and/or --products")
    configs = []
    if args.cyclic:
        if args.max_n is None:
            raise InvalidArgumentError("--cyclic needs --max-n")
        if args.max_n > args.limit_vertices:
            raise ResourceLimitError(f"--max-n {args.max_n} exceeds the vertex limit")
        configs += cyclic_configurations(args.max_n, args.max_m)
    if args.products:
        if args.max_order is None:
            raise InvalidArgumentError("--products needs --max-order")
        if args.max_order > args.limit_vertices:
            raise ResourceLimitError(f"--max-order {args.max_order} exceeds the vertex limit")
        configs += product_configurations(args.max_order, args.max_m)
    result = run_sweep(configs, workers=worker_count(), limit_vertices=args.limit_vertices)
    summary = _dump(result.summary())
    if args.out:
        Path(args.out).write_text(result.to_csv())
        sys.stdout.write(summary)
    else:
        sys.stdout.write(result.to_csv())
        sys.stderr.write(summary)
    return EXIT_OK if not result.discrepancies else EXIT_DISCREPANCY


def cmd_realize(args) -> int:
    try:
        text = Path(args.tree_file).read_text()
    except OSError as exc:
        raise InvalidArgumentError(str(exc)) from None
    tree = parse_tree_text(text)
    found = realize_tree(tree, limit_vertices=args.limit_realize)
    if found is None:
        sys.stdout.write("not realizable\n")
        return EXIT_NEGATIVE
    sys.stdout.write(_dump(found.to_dict()))
    return EXIT_OK


def cmd_diameter_build(args) -> int:
    spec, m = construct_for_diameter(args.d)
    g = build_mgraph(spec, m, args.limit_vertices)
    measured = diameter_bruteforce(g)
    sys.stdout.write(_dump({"group": str(spec), "m": m, "verified_diameter": _json_int(measured)}))
    return EXIT_OK if measured == args.d else EXIT_DISCREPANCY


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mgraph", description="m-graphs of finite abelian groups")
    parser.add_argument("--limit-vertices", type=int, default=DEFAULT_VERTEX_LIMIT)
    # accepted after the subcommand as well; SUPPRESS keeps the global value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--limit-vertices", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="closed forms and oracle for one m-graph (JSON)")
    p.add_argument("--group", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("export-dot", parents=[common], help="DOT text of one m-graph")
    p.add_argument("--group", required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("sweep", parents=[common], help="closed form vs oracle over a range (CSV + summary JSON)")
    p.add_argument("--cyclic", action="store_true")
    p.add_argument("--products", action="store_true")
    p.add_argument("--max-n", type=int)
    p.add_argument("--max-m", type=int, required=True)
    p.add_argument("--max-order", type=int)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("realize", parents=[common], help="realize a tree file as an m-graph")
    p.add_argument("tree_file")
    p.add_argument("--limit-realize", type=int, default=DEFAULT_REALIZE_LIMIT)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("diameter-build", parents=[common], help="build and verify an m-graph of diameter d")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_diameter_build)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "m", None) is not None and args.command in ("analyze", "export-dot") and args.m <= 1:
            raise InvalidArgumentError("--m must exceed 1")
        return args.func(args)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (InvalidSpecError, InvalidArgumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
