"""Command-line frontend.

Subcommands: ``compute`` (invariants of one diagram), ``fuzz`` (random-walk
invariance harness), ``sum`` (connected sum of two diagrams with an
additivity check), ``derivative`` (finite-type derivatives of a singular
diagram) and ``gen`` (prescribed-linking-number link generator).

Exit codes: 0 success, 2 parse/validation error, 3 singular input where a
classical diagram is required, 4 fuzz counterexample, 5 gluing
incompatibility.  All output is deterministic given inputs, flags and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .diagram import TangleDiagram, validate
from .gaussio import ParseError, parse, serialize
from .invariants import (
    InvariantReport,
    invariant_report,
    laurent_linking_polynomial,
    linking_polynomial,
    self_crossing_polynomial,
)
from .moves import DEFAULT_CHORD_CAP, random_walk
from .ops import GlueError, check_additivity, connect, is_string_link, link_with_linking_numbers
from .singular import vassiliev_derivative

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_SINGULAR = 3
EXIT_FUZZ_FAIL = 4
EXIT_GLUE = 5


class _CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}")


def _read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _CliError(EXIT_PARSE, f"cannot read {path}: {exc}")


def _load(path: str) -> TangleDiagram:
    try:
        diagram = parse(_read_input(path))
    except ParseError as exc:
        raise _CliError(EXIT_PARSE, f"{path}: {exc}")
    problems = validate(diagram)
    if problems:
        raise _CliError(EXIT_PARSE, f"{path}: {problems[0].message}")
    return diagram


def _matrix_lines(name: str, matrix) -> list[str]:
    lines = [f"{name}:"]
    for i, row in enumerate(matrix):
        cells = [("." if i == j else str(value)) for j, value in enumerate(row)]
        lines.append("  " + " ".join(cells))
    return lines


def _report_lines(report: InvariantReport) -> list[str]:
    lines = [
        f"components: {len(report.vlk)}",
        f"a: {report.a}",
        f"b: {report.b}",
        f"psc: {report.psc.render()}",
        f"plk: {report.plk.render()}",
        f"plkL: {report.plk_laurent.render()}",
    ]
    lines += _matrix_lines("vlk", report.vlk)
    lines += _matrix_lines("wriggle", report.wriggle)
    return lines


def _emit(args, text_lines: list[str], json_obj) -> None:
    if args.format == "json":
        print(json.dumps(json_obj, indent=2))
    else:
        print("\n".join(text_lines))


def _require_classical(diagram: TangleDiagram, path: str) -> None:
    if diagram.has_singular():
        raise _CliError(
            EXIT_SINGULAR,
            f"{path}: diagram has singular chords; use the derivative subcommand")


def _single_input(args) -> str:
    inputs = args.input or []
    if len(inputs) != 1:
        raise _CliError(EXIT_PARSE, "exactly one --input is required")
    return inputs[0]


def _cmd_compute(args) -> int:
    path = _single_input(args)
    diagram = _load(path)
    _require_classical(diagram, path)
    report = invariant_report(diagram, args.a, args.b)
    _emit(args, _report_lines(report), report.to_json_dict())
    return EXIT_OK


def _cmd_fuzz(args) -> int:
    path = _single_input(args)
    diagram = _load(path)
    _require_classical(diagram, path)
    baseline = invariant_report(diagram, args.a, args.b)
    moves_done = 0
    for trial in range(args.trials):
        trail = random_walk(diagram, args.steps, args.seed * 1_000_003 + trial,
                            cap=args.cap)
        for step in range(1, len(trail)):
            moves_done += 1
            if invariant_report(trail[step], args.a, args.b) != baseline:
                failure = {
                    "ok": False,
                    "trial": trial,
                    "step": step,
                    "before": serialize(trail[step - 1]),
                    "after": serialize(trail[step]),
                }
                if args.format == "json":
                    print(json.dumps(failure, indent=2))
                else:
                    print(f"FAIL trial={trial} step={step}")
                    print("--- diagram before the move ---")
                    print(failure["before"], end="")
                    print("--- diagram after the move ---")
                    print(failure["after"], end="")
                return EXIT_FUZZ_FAIL
    summary = {"ok": True, "trials": args.trials, "steps": args.steps,
               "moves": moves_done}
    _emit(args, [f"fuzz ok: trials={args.trials} steps={args.steps} "
                 f"moves={moves_done}"], summary)
    return EXIT_OK


def _cmd_sum(args) -> int:
    inputs = args.input or []
    if len(inputs) != 2:
        raise _CliError(EXIT_PARSE, "sum needs exactly two --input diagrams")
    upper = _load(inputs[0])
    lower = _load(inputs[1])
    _require_classical(upper, inputs[0])
    _require_classical(lower, inputs[1])
    try:
        glue = connect(upper, lower)
    except GlueError as exc:
        raise _CliError(EXIT_GLUE, str(exc))

    verdict = "n/a"
    if is_string_link(upper) and is_string_link(lower):
        checks = check_additivity(upper, lower, glue, args.a, args.b)
        verdict = "PASS" if all(checks.values()) else "FAIL"

    reports = {
        "upper": invariant_report(upper, args.a, args.b),
        "lower": invariant_report(lower, args.a, args.b),
        "sum": invariant_report(glue.diagram, args.a, args.b),
    }
    lines: list[str] = []
    for name, report in reports.items():
        lines.append(f"[{name}]")
        lines += _report_lines(report)
    lines.append("relations: " + " ".join(
        f"t{i}=u{j}" for i, j in glue.relations))
    lines.append(f"additivity: {verdict}")
    json_obj = {name: report.to_json_dict() for name, report in reports.items()}
    json_obj["relations"] = [list(pair) for pair in glue.relations]
    json_obj["additivity"] = verdict
    _emit(args, lines, json_obj)
    return EXIT_OK


def _cmd_derivative(args) -> int:
    path = _single_input(args)
    diagram = _load(path)
    singular_count = sum(1 for c in diagram.chords if not c.is_classical)
    psc = vassiliev_derivative(diagram, self_crossing_polynomial)
    plk = vassiliev_derivative(diagram, lambda d: linking_polynomial(d, args.a, args.b))
    plk_l = vassiliev_derivative(
        diagram, lambda d: laurent_linking_polynomial(d, args.a, args.b))
    lines = [
        f"singular chords: {singular_count}",
        f"a: {args.a}",
        f"b: {args.b}",
        f"psc: {psc.render()}",
        f"plk: {plk.render()}",
        f"plkL: {plk_l.render()}",
    ]
    json_obj = {
        "singular": singular_count,
        "psc": psc.to_json_terms(),
        "plk": {"a": str(args.a), "b": str(args.b), "value": plk.to_json_terms()},
        "plkL": {"a": str(args.a), "b": str(args.b), "value": plk_l.to_json_terms()},
    }
    _emit(args, lines, json_obj)
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.a_count < 0 or args.b_count < 0:
        raise _CliError(EXIT_PARSE, "gen needs nonnegative band sizes")
    print(serialize(link_with_linking_numbers(args.a_count, args.b_count)), end="")
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tanglepoly",
        description="Index-polynomial invariants of virtual tangles")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, inputs=True):
        if inputs:
            p.add_argument("--input", "-i", action="append",
                           help="Gauss-code file, or '-' for stdin")
        p.add_argument("--a", type=_rational, default=Fraction(1),
                       help="coefficient a as 'p/q' or integer (default 1)")
        p.add_argument("--b", type=_rational, default=Fraction(1),
                       help="coefficient b as 'p/q' or integer (default 1)")
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("compute", help="invariants of one diagram")
    common(p)
    p.set_defaults(handler=_cmd_compute)

    p = sub.add_parser("fuzz", help="random-walk invariance harness")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--steps", type=int, default=200)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--cap", type=int, default=DEFAULT_CHORD_CAP,
                   help="chord-count cap during walks")
    p.set_defaults(handler=_cmd_fuzz)

    p = sub.add_parser("sum", help="connected sum of two diagrams")
    common(p)
    p.set_defaults(handler=_cmd_sum)

    p = sub.add_parser("derivative", help="finite-type derivatives")
    common(p)
    p.set_defaults(handler=_cmd_derivative)

    p = sub.add_parser("gen", help="link with prescribed linking numbers")
    p.add_argument("a_count", type=int, metavar="a")
    p.add_argument("b_count", type=int, metavar="b")
    p.set_defaults(handler=_cmd_gen)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "steps", 0) < 0 or getattr(args, "trials", 0) < 0:
        print("steps and trials must be nonnegative", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.handler(args)
    except _CliError as exc:
        print(str(exc), file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
