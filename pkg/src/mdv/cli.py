"""Command-line front end: ``mdv <check> [options]``.

Exit status is 0 when every check passes, 1 when some check fails or errors
and 2 on usage or input errors.  With ``--json`` each report is printed as one
JSON object per line; ``--timing`` writes wall times to stderr so that the
report stream stays byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, checks
from .lmchain import DEFAULT_LP_BUDGET
from .reports import CheckReport, jsonable


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.replace("+", ",").split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _kernels_file(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise argparse.ArgumentTypeError(f"cannot read kernels file: {exc}") from None
    if isinstance(data, dict):
        data = data.get("kernels")
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise argparse.ArgumentTypeError("kernels file must hold a list of integer vectors")
    return [tuple(int(x) for x in v) for v in data]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON reports")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for independent checks")
    common.add_argument("--timing", action="store_true", help="write wall times to stderr")

    parser = argparse.ArgumentParser(prog="mdv", description="Exact verification checks.")
    parser.add_argument("--version", action="version", version=f"mdv {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gnw-verify", parents=[common], help="GNW identities and memberships")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--p", type=int, help="also build the characteristic-p polynomial")

    p = sub.add_parser("determinant-table", parents=[common], help="6x6 derivative determinants")
    p.add_argument("--m-from", type=int, default=4)
    p.add_argument("--m-to", type=int, default=40)

    p = sub.add_parser("witness-search", parents=[common], help="sections orthogonal to a negative curve")
    p.add_argument("--m", type=int)
    p.add_argument("--triple", type=_int_list)
    p.add_argument("--curve", help="curve equation, e.g. 'y - x^2'")
    p.add_argument("--class", dest="cls", type=_int_list, help="curve class d,l")
    p.add_argument("--k-max", type=int, default=2)

    p = sub.add_parser("symbolic-power", parents=[common], help="differential symbolic-power membership")
    p.add_argument("--m", type=int)
    p.add_argument("--triple", type=_int_list)
    p.add_argument("--poly", required=True, help="g_a, g_b, g_c, d2, d3, d3p, or an expression")
    p.add_argument("--l", type=int, required=True)

    p = sub.add_parser("lm-quotient", parents=[common], help="quotient of the Losev-Manin lattice")
    p.add_argument("--sizes", type=_int_list, required=True, help="part sizes a+2,b+2,c+2")

    p = sub.add_parser("lm-chain", parents=[common], help="fan projection chain")
    p.add_argument("--n", type=int)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--sizes", type=_int_list, help="use the partition kernel vectors")
    group.add_argument("--kernels", type=_kernels_file, help="JSON list of kernel vectors")
    p.add_argument("--budget", type=int, help="maximum cone count per fan")
    p.add_argument("--lp-budget", type=int, default=DEFAULT_LP_BUDGET,
                   help="certify projectivity above rank three up to this cone count")

    p = sub.add_parser("fan-check", parents=[common], help="validate a fan and look for a certificate")
    p.add_argument("fan", help="fixture name or path to a fan JSON file")
    p.add_argument("--budget", type=int, default=-1, help="maximum cone pairs to validate")

    p = sub.add_parser("compatible-sections", parents=[common], help="boundary section combinatorics")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--simulate", action="store_true")

    sub.add_parser("manifest", parents=[common], help="verify fixture checksums")
    sub.add_parser("all", parents=[common], help="run the full suite")
    return parser


def _run(args) -> list[CheckReport]:
    cmd = args.command
    if cmd == "gnw-verify":
        return [checks.gnw_verify(args.m, args.p)]
    if cmd == "determinant-table":
        return [checks.determinant_table(args.m_from, args.m_to)]
    if cmd == "witness-search":
        return [checks.witness_search(args.k_max, args.m, args.triple, args.curve, args.cls, args.jobs)]
    if cmd == "symbolic-power":
        return [checks.symbolic_power(args.l, args.m, args.poly, args.triple)]
    if cmd == "lm-quotient":
        return [checks.lm_quotient(args.sizes)]
    if cmd == "lm-chain":
        n, kernels = args.n, args.kernels
        if args.sizes is not None:
            from .lmchain import LmError, partition_from_sizes

            try:
                part = partition_from_sizes(args.sizes)
            except LmError as exc:
                raise checks.InputError(str(exc)) from None
            if n is not None and n != part.n:
                raise checks.InputError(f"--n {n} does not match sizes (n = {part.n})")
            n, kernels = part.n, part.kernel_generators()
        if n is None:
            raise checks.InputError("--n or --sizes is required")
        return [checks.lm_chain(n, kernels, args.budget, args.lp_budget)]
    if cmd == "fan-check":
        return [checks.fan_check(args.fan, args.budget)]
    if cmd == "compatible-sections":
        return [checks.compatible_sections(args.n, args.simulate)]
    if cmd == "manifest":
        return [checks.manifest_check()]
    if cmd == "all":
        return checks.run_suite(jobs=args.jobs)
    raise checks.InputError(f"unknown command {cmd!r}")


def _summary(value) -> str:
    if isinstance(value, (dict, list)):
        text = json.dumps(value, sort_keys=True)
        return text if len(text) <= 100 else text[:97] + "..."
    return str(value)


def format_text(report: CheckReport) -> str:
    body = report.body()
    inputs = " ".join(f"{k}={_summary(v)}" for k, v in sorted(body["inputs"].items()))
    lines = [f"[{report.status.upper()}] {report.check} {inputs}".rstrip()]
    details = body["details"]
    rows = details.get("rows")
    if isinstance(rows, list) and rows and isinstance(rows[0], dict):
        keys = list(rows[0])
        lines.append("  " + "  ".join(keys))
        for row in rows:
            lines.append("  " + "  ".join(_summary(row[k]) for k in keys))
    for key in sorted(details):
        if key != "rows":
            lines.append(f"  {key}: {_summary(details[key])}")
    return "\n".join(lines)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.jobs < 1:
        print("mdv: --jobs must be positive", file=sys.stderr)
        return 2
    try:
        reports = _run(args)
    except checks.InputError as exc:
        print(f"mdv: {exc}", file=sys.stderr)
        return 2
    for report in reports:
        print(report.dumps() if args.json else format_text(report))
        if args.timing:
            print(json.dumps({"check": report.check, "inputs": jsonable(report.inputs),
                              "wall_time": report.wall_time}, sort_keys=True), file=sys.stderr)
    return 0 if all(r.passed for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
