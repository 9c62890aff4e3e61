"""Command line entry point: ``hcmu check | build | verify``.

Exit codes: 0 success, 1 malformed input or unreadable artifacts,
2 inadmissible angle data, 3 verification failure, 4 unwritable output
directory, 5 serialization failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .io import REPORT_FORMAT, ArtifactError, read_problem, report_checks, write_json
from .numbers import parse_number
from .pipeline import (
    OutputError,
    SerializationError,
    assess,
    build,
    report_dict,
    verify_directory,
    write_build,
)
from .report import Tolerances

EXIT_OK = 0
EXIT_MALFORMED = 1
EXIT_INADMISSIBLE = 2
EXIT_VERIFY_FAILED = 3
EXIT_UNWRITABLE = 4
EXIT_SERIALIZATION = 5


def _tol_pair(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    name = name.strip()
    if name not in Tolerances.names():
        raise argparse.ArgumentTypeError(
            f"unknown tolerance {name!r}; choose from {', '.join(Tolerances.names())}")
    try:
        return name, float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance {name} needs a number, got {value!r}") from None


def _positive(text):
    try:
        value = float(parse_number(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text!r}")
    return value


def make_parser():
    parser = argparse.ArgumentParser(
        prog="hcmu", description="Build and verify HCMU spheres glued from footballs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", required=True, help="problem file (JSON)")
        p.add_argument("--tol", action="append", type=_tol_pair, default=[],
                       metavar="NAME=VALUE", help="override a tolerance (repeatable)")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p_check = sub.add_parser("check", help="decide admissibility of the angle data")
    common(p_check)

    p_build = sub.add_parser("build", help="plan, glue, sample and verify; write artifacts")
    common(p_build)
    p_build.add_argument("--out", required=True, help="output directory")
    p_build.add_argument("--samples", type=int, help="samples per football profile")
    p_build.add_argument("--base-area", type=_positive, help="area of an x=1 football")
    p_build.add_argument("--no-plots", action="store_true", help="skip the PNG figures")

    p_verify = sub.add_parser("verify", help="re-read a build directory and re-check it")
    common(p_verify, needs_input=False)
    p_verify.add_argument("--out", required=True, help="directory written by build")
    p_verify.add_argument("--samples", type=int,
                          help="samples for profiles recomputed when a table is absent")
    return parser


def _load(args, out):
    """Parsed problem with command-line overrides, or (None, message)."""
    try:
        pf = read_problem(args.input)
    except ArtifactError as exc:
        message = str(exc)
    else:
        message = None
        if getattr(args, "samples", None) is not None:
            if args.samples < 5:
                message = "--samples must be at least 5"
            pf.samples = args.samples
        if getattr(args, "base_area", None) is not None:
            pf.base_area = args.base_area
    if message is not None:
        _emit_error(args, message, out)
        return None, message
    return pf, None


def _emit_error(args, message, out):
    if args.json:
        print(json.dumps({"status": "malformed", "error": message}), file=out)
    print(f"error: {message}", file=sys.stderr)


def _tolerances(pf, args):
    tol = Tolerances().updated(pf.tolerances) if pf is not None else Tolerances()
    return tol.updated(dict(args.tol))


def cmd_check(args, out=sys.stdout):
    pf, _ = _load(args, out)
    if pf is None:
        return EXIT_MALFORMED
    verdict, _ = assess(pf)
    if args.json:
        print(json.dumps(verdict.to_dict(), sort_keys=True), file=out)
    else:
        status = verdict.to_dict()["status"]
        print(f"verdict: {status.capitalize()}", file=out)
        if verdict.arithmetic:
            print(f"condition: {verdict.arithmetic}", file=out)
        if verdict.admissible and verdict.s is not None:
            print(f"index count: chi = sum(1 - a_saddle) + (n - j) + s gives "
                  f"s={verdict.s}", file=out)
        if verdict.reason:
            print(f"reason: {verdict.reason}", file=out)
    if verdict.malformed:
        print(f"error: {verdict.reason}", file=sys.stderr)
        return EXIT_MALFORMED
    return EXIT_OK if verdict.admissible else EXIT_INADMISSIBLE


def _write_error_report(out_dir, message):
    """Even an unparsable problem leaves a report behind."""
    doc = {"format": REPORT_FORMAT, "problem": None,
           "verdict": {"status": "malformed", "reason": message},
           "plan": None, "footballs": [], "graph": None, "verification": None}
    try:
        Path(out_dir).mkdir(parents=True, exist_ok=True)
        write_json(Path(out_dir) / "report.json", doc)
    except OSError as exc:
        print(f"error: cannot write report into {out_dir}: {exc.strerror or exc}",
              file=sys.stderr)


def cmd_build(args, out=sys.stdout):
    pf, message = _load(args, out)
    if pf is None:
        _write_error_report(args.out, message)
        return EXIT_MALFORMED
    try:
        tol = _tolerances(pf, args)
    except (KeyError, ValueError) as exc:
        _emit_error(args, str(exc), out)
        return EXIT_MALFORMED
    result = build(pf, tol)
    try:
        write_build(result, args.out, plots=not args.no_plots)
    except OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNWRITABLE
    except SerializationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SERIALIZATION

    verdict = result.verdict
    if args.json:
        doc = report_dict(result)
        print(json.dumps({"verdict": doc["verdict"], "plan": doc["plan"],
                          "overall": None if result.report is None else result.report.overall},
                         sort_keys=True), file=out)
    else:
        print(f"verdict: {verdict.to_dict()['status'].capitalize()}", file=out)
        if verdict.reason:
            print(f"reason: {verdict.reason}", file=out)
        if result.graph is not None:
            print(f"footballs: {len(result.graph.footballs)}, saddles: "
                  f"{len(result.graph.saddles)}; artifacts in {args.out}", file=out)
            print(result.report.table(), file=out)
    if verdict.malformed:
        return EXIT_MALFORMED
    if not verdict.admissible:
        return EXIT_INADMISSIBLE
    return EXIT_OK if result.report.overall else EXIT_VERIFY_FAILED


def cmd_verify(args, out=sys.stdout):
    try:
        overrides = dict(args.tol)
        res = verify_directory(args.out, overrides, args.samples)
    except (KeyError, ValueError) as exc:
        _emit_error(args, str(exc), out)
        return EXIT_MALFORMED
    for note in res.notes:
        print(f"note: {note}", file=sys.stderr)
    if res.report is None:
        for err in res.errors:
            print(f"error: {err}", file=sys.stderr)
        if args.json:
            print(json.dumps({"status": "unreadable", "errors": res.errors}), file=out)
        return EXIT_MALFORMED
    report = res.report
    if args.json:
        print(json.dumps({"overall": report.overall, "checks": report_checks(report)},
                         sort_keys=True), file=out)
    else:
        print(report.table(), file=out)
        if report.overall:
            print("all checks passed", file=out)
        else:
            print("failed checks: " + ", ".join(c.name for c in report.failed), file=out)
    return EXIT_OK if report.overall else EXIT_VERIFY_FAILED


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    handler = {"check": cmd_check, "build": cmd_build, "verify": cmd_verify}[args.command]
    return handler(args, out)


if __name__ == "__main__":
    sys.exit(main())
