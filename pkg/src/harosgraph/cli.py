"""Command-line front end.

Subcommands: cf | build | dist | sweep | verify.  Exit codes: 0 success,
1 verification failure, 2 usage or parse error, 3 resource cap, 4 strict
cross-method mismatch.  All output is deterministic; there is no randomness
anywhere in the toolchain.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import re
import sys
from fractions import Fraction
from typing import Sequence

from .distribution import (
    DEFAULT_ROW_CAP,
    cf_form_distribution,
    degree_distribution_oracle,
    interval_form_distribution,
    sweep,
    sweep_row_count,
)
from .errors import ResourceLimitError
from .exact import cf_expand, convergents
from .graphs import build, identify_boundary
from .tree import level_index, symbolic_path
from .verify import MAX_VERIFY_LEVELS, MAX_VERIFY_ORDER, SUITES, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3
EXIT_STRICT_MISMATCH = 4

DEFAULT_ORACLE_CAP = 10**6
ORACLE_CAP_ENV = "HAROS_MAX_Q"

SWEEP_CSV_HEADER = (
    "x_num,x_den,x_float,k,"
    "p_thm1_num,p_thm1_den,p_thm2_num,p_thm2_den,p_oracle_num,p_oracle_den"
)

_FRACTION_RE = re.compile(r"\s*(\d+)\s*/\s*(\d+)\s*\Z")


class _UsageError(Exception):
    pass


def _parse_fraction(text: str) -> Fraction:
    match = _FRACTION_RE.match(text)
    if match is None:
        raise _UsageError(f"expected a fraction literal like 10/23, got {text!r}")
    num, den = int(match.group(1)), int(match.group(2))
    if den == 0:
        raise _UsageError(f"zero denominator in {text!r}")
    x = Fraction(num, den)
    if not 0 <= x <= 1:
        raise _UsageError(f"{text!r} lies outside [0, 1]")
    if (x.numerator, x.denominator) != (num, den):
        print(f"note: {text.strip()} normalised to {x}", file=sys.stderr)
    return x


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text}")
    return value


def _degree_list(text: str) -> list[int]:
    out = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            k = int(token)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad degree {token!r} in {text!r}")
        if k < 5:
            raise argparse.ArgumentTypeError(f"sweep degrees start at 5, got {k}")
        out.append(k)
    if not out:
        raise argparse.ArgumentTypeError(f"no degrees in {text!r}")
    return sorted(set(out))


def _oracle_cap(args: argparse.Namespace) -> int:
    if args.max_q is not None:
        return args.max_q
    env = os.environ.get(ORACLE_CAP_ENV)
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise _UsageError(f"{ORACLE_CAP_ENV} must be an integer, got {env!r}")
    return DEFAULT_ORACLE_CAP


def _fmt(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def _cmd_cf(args: argparse.Namespace) -> int:
    x = _parse_fraction(args.fraction)
    if x == 0:
        report = {
            "fraction": _fmt(x),
            "terms": None,
            "convergents": None,
            "path": None,
            "level": 1,
            "note": "0 has no continued fraction of the unit form",
        }
    elif x == 1:
        report = {
            "fraction": _fmt(x),
            "terms": [1],
            "convergents": ["1/1"],
            "path": None,
            "level": 1,
            "note": "level-1 endpoint: no descent path",
        }
    else:
        cf = cf_expand(x)
        report = {
            "fraction": _fmt(x),
            "terms": list(cf.terms),
            "convergents": [_fmt(c) for c in convergents(cf)],
            "path": symbolic_path(x).word,
            "level": level_index(x),
        }
    if args.format == "json":
        print(json.dumps(report, indent=2))
    else:
        for key, value in report.items():
            if isinstance(value, list):
                value = " ".join(str(v) for v in value)
            print(f"{key}: {value}")
    return EXIT_OK


def _cmd_build(args: argparse.Namespace) -> int:
    x = _parse_fraction(args.fraction)
    cap = _oracle_cap(args)
    if x.denominator > cap:
        raise ResourceLimitError(
            f"denominator {x.denominator} exceeds the build cap {cap} "
            f"(raise it with --max-q or {ORACLE_CAP_ENV})"
        )
    g = build(x)
    interior = 0 < x < 1
    identified = identify_boundary(g) if interior else None
    note = None if interior else "P(k,0) = P(k,1) = 0 by convention"
    if args.format == "json":
        payload = {
            "label": _fmt(x),
            "nodes": g.node_count,
            "edges": g.edge_count,
            "degree_sequence": list(g.degrees),
            "identified_counts": (
                {str(k): m for k, m in identified.counts} if identified else {}
            ),
        }
        if note:
            payload["note"] = note
        print(json.dumps(payload, indent=2))
    else:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(["section", "key", "value"])
        writer.writerow(["summary", "label", _fmt(x)])
        writer.writerow(["summary", "nodes", g.node_count])
        writer.writerow(["summary", "edges", g.edge_count])
        if note:
            writer.writerow(["summary", "note", note])
        for position, degree in enumerate(g.degrees):
            writer.writerow(["sequence", position, degree])
        if identified:
            for degree, multiplicity in identified.counts:
                writer.writerow(["multiset", degree, multiplicity])
    return EXIT_OK


def _cmd_dist(args: argparse.Namespace) -> int:
    x = _parse_fraction(args.fraction)
    if x == 0 or x == 1:
        print("k  P(k)")
        print("(empty distribution: P(k,0) = P(k,1) = 0 by convention)")
        return EXIT_OK
    method = args.method
    columns: dict[str, dict[int, Fraction]] = {}
    if method in ("thm1", "all"):
        columns["thm1"] = cf_form_distribution(x).entries
    if method in ("thm2", "all"):
        columns["thm2"] = interval_form_distribution(x).entries
    if method in ("oracle", "all"):
        cap = _oracle_cap(args)
        if x.denominator > cap:
            raise ResourceLimitError(
                f"denominator {x.denominator} exceeds the oracle cap {cap} "
                f"(raise it with --max-q or {ORACLE_CAP_ENV})"
            )
        columns["oracle"] = degree_distribution_oracle(x).entries
    degrees = sorted(set().union(*columns.values()))
    names = list(columns)
    mismatch = False
    print("  ".join(["k"] + names + (["match"] if method == "all" else [])))
    for k in degrees:
        cells = [str(k)]
        values = [columns[name].get(k, Fraction(0)) for name in names]
        cells.extend(_fmt(v) for v in values)
        if method == "all":
            agree = len(set(values)) == 1
            mismatch = mismatch or not agree
            cells.append("ok" if agree else "MISMATCH")
        print("  ".join(cells))
    if method == "all" and mismatch and args.strict:
        print("error: methods disagree", file=sys.stderr)
        return EXIT_STRICT_MISMATCH
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    rows = sweep_row_count(args.k, args.order)
    if rows > args.max_rows:
        raise ResourceLimitError(
            f"sweep would emit {rows} rows; the cap is {args.max_rows} "
            "(raise it with --max-rows)"
        )
    out_path = args.out
    tmp_path = out_path + ".partial"
    count = 0
    worst = Fraction(0)
    try:
        handle = open(tmp_path, "w", newline="")
    except OSError as exc:
        raise _UsageError(f"cannot write {out_path!r}: {exc}")
    try:
        with handle:
            if args.format == "csv":
                writer = csv.writer(handle, lineterminator="\n")
                writer.writerow(SWEEP_CSV_HEADER.split(","))
                for point in sweep(args.k, args.order, row_cap=None):
                    count += 1
                    worst = max(worst, _spread(point))
                    writer.writerow(
                        [
                            point.x.numerator,
                            point.x.denominator,
                            f"{point.x.numerator / point.x.denominator:.17g}",
                            point.k,
                            point.cf_form.numerator,
                            point.cf_form.denominator,
                            point.interval_form.numerator,
                            point.interval_form.denominator,
                            point.oracle.numerator,
                            point.oracle.denominator,
                        ]
                    )
            else:
                handle.write("[")
                for point in sweep(args.k, args.order, row_cap=None):
                    record = {
                        "x_num": point.x.numerator,
                        "x_den": point.x.denominator,
                        "x_float": point.x.numerator / point.x.denominator,
                        "k": point.k,
                        "p_thm1_num": point.cf_form.numerator,
                        "p_thm1_den": point.cf_form.denominator,
                        "p_thm2_num": point.interval_form.numerator,
                        "p_thm2_den": point.interval_form.denominator,
                        "p_oracle_num": point.oracle.numerator,
                        "p_oracle_den": point.oracle.denominator,
                    }
                    prefix = "\n" if count == 0 else ",\n"
                    handle.write(prefix + json.dumps(record))
                    count += 1
                    worst = max(worst, _spread(point))
                handle.write("\n]" if count else "]")
                handle.write("\n")
        os.replace(tmp_path, out_path)
    except OSError as exc:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise _UsageError(f"cannot write {out_path!r}: {exc}")
    except BaseException:
        if os.path.exists(tmp_path):
            os.unlink(tmp_path)
        raise
    print(
        f"wrote {count} rows to {out_path}; "
        f"max cross-method discrepancy: {_fmt(worst)}"
    )
    return EXIT_OK


def _spread(point) -> Fraction:
    values = (point.cf_form, point.interval_form, point.oracle)
    return max(values) - min(values)


def _cmd_verify(args: argparse.Namespace) -> int:
    manifest, tallies = run_verification(args.suite, args.order, args.levels)
    for tally in tallies:
        print(
            f"{tally.name}: passed={tally.passed} failed={tally.failed}",
            file=sys.stderr,
        )
    print(json.dumps(manifest.to_json_dict(), indent=2))
    return EXIT_VERIFY_FAILED if manifest.checks_failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="haros",
        description=(
            "Haros graphs: exact degree sequences and degree distributions "
            "over the Farey tree"
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_cf = sub.add_parser(
        "cf", help="continued fraction, convergents, descent word and level"
    )
    p_cf.add_argument("fraction", help='fraction literal "p/q" in [0, 1]')
    p_cf.add_argument("--format", choices=("text", "json"), default="text")
    p_cf.set_defaults(handler=_cmd_cf)

    p_build = sub.add_parser(
        "build", help="degree sequence and identified multiset of one graph"
    )
    p_build.add_argument("fraction", help='fraction literal "p/q" in [0, 1]')
    p_build.add_argument("--format", choices=("json", "csv"), default="json")
    p_build.add_argument(
        "--max-q",
        type=_positive_int,
        default=None,
        help=f"override the build denominator cap (default {DEFAULT_ORACLE_CAP})",
    )
    p_build.set_defaults(handler=_cmd_build)

    p_dist = sub.add_parser("dist", help="degree distribution table")
    p_dist.add_argument("fraction", help='fraction literal "p/q" in [0, 1]')
    p_dist.add_argument(
        "--method",
        choices=("thm1", "thm2", "oracle", "all"),
        default="all",
        help=(
            "thm1: continued-fraction closed form; thm2: piecewise-linear "
            "interval form; oracle: explicit graph construction"
        ),
    )
    p_dist.add_argument(
        "--strict",
        action="store_true",
        help="exit 4 if the methods disagree (with --method all)",
    )
    p_dist.add_argument("--max-q", type=_positive_int, default=None)
    p_dist.set_defaults(handler=_cmd_dist)

    p_sweep = sub.add_parser(
        "sweep", help="tabulate P(k, x) over a Farey sequence, three ways"
    )
    p_sweep.add_argument(
        "--k", type=_degree_list, required=True, help="degrees, e.g. 5,6,7,8"
    )
    p_sweep.add_argument("--order", type=_positive_int, required=True)
    p_sweep.add_argument("--out", required=True, help="output file path")
    p_sweep.add_argument("--format", choices=("csv", "json"), default="csv")
    p_sweep.add_argument(
        "--max-rows",
        type=_positive_int,
        default=DEFAULT_ROW_CAP,
        help=f"row cap (default {DEFAULT_ROW_CAP})",
    )
    p_sweep.set_defaults(handler=_cmd_sweep)

    p_verify = sub.add_parser(
        "verify", help="run the exact cross-verification suites"
    )
    p_verify.add_argument(
        "--order",
        type=_positive_int,
        default=50,
        help=f"Farey order for the bulk checks (max {MAX_VERIFY_ORDER})",
    )
    p_verify.add_argument(
        "--levels",
        type=_positive_int,
        default=10,
        help=f"tree depth for the descent recurrences (max {MAX_VERIFY_LEVELS})",
    )
    p_verify.add_argument("--suite", choices=SUITES, default="all")
    p_verify.set_defaults(handler=_cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
