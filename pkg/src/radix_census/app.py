"""Command-line entry point: ``radix-census <subcommand> ...``.

stdout carries only the command's result, so identical invocations print
identical bytes; progress and errors go to stderr through ``console.print``.
Exit codes: 0 when every check passes, 1 on a failed check, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import sys
from collections.abc import Callable
from contextlib import nullcontext
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Any, TextIO

from .census import census_closed_form, census_of_digits
from .conjectures import CONJECTURES, ConjectureReport, Mode, run_verifications
from .console import print
from .mahler_series import functional_residual
from .radix_core import ReducedFraction, expand, is_prime
from .reports import (
    CONJECTURE_CSV_HEADER,
    census_command_json,
    conjecture_report_json,
    conjecture_report_row,
    conjecture_report_text,
    dumps,
    expansion_json,
    fraction_text,
    mahler_json,
    stoneham_json,
    summary_json,
    write_csv,
    write_digit_csv,
    write_digit_dump,
    write_pdf_report,
)
from .stoneham import DigitStream, Radix, StonehamSpec

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

FORMATS = ("text", "json", "csv")
_MAX_RENDER_BASE = 36  # digits print as 0-9a-z

_DEFAULT_FORMATS = {"verify": "json"}


@dataclass(frozen=True)
class RunConfig:
    """One validated invocation: exactly one subcommand and its parameters."""

    subcommand: str
    params: dict[str, Any] = field(default_factory=dict)
    output_format: str = "text"
    output_path: Path | None = None
    verbosity: int = 0

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> RunConfig:
        values = vars(args).copy()
        subcommand = values.pop("subcommand")
        output_format = values.pop("format") or _DEFAULT_FORMATS.get(subcommand, "text")
        output = values.pop("output")
        verbosity = values.pop("verbose")
        _VALIDATORS[subcommand](values)
        return cls(subcommand, values, output_format, Path(output) if output else None, verbosity)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise ValueError(message)


def _check_render_base(base: int, label: str = "base") -> None:
    _require(2 <= base <= _MAX_RENDER_BASE, f"{label} must be in [2, {_MAX_RENDER_BASE}], got {base}")


def _validate_expand(params: dict) -> None:
    num, den = params["num"], params["den"]
    _require(den >= 2 and 0 < num < den, f"need 0 < num/den < 1, got {num}/{den}")
    _check_render_base(params["base"])
    max_digits = params["max_digits"]
    _require(max_digits is None or max_digits >= 0, f"--max-digits must be nonnegative, got {max_digits}")


def _validate_census(params: dict) -> None:
    p = params["p"]
    _require(p != 2 and is_prime(p), f"p must be an odd prime, got {p}")
    _require(params["m"] >= 1, f"m must be positive, got {params['m']}")
    _check_render_base(params["base"])
    _require(params["base"] % p != 0, f"base {params['base']} must be coprime to p={p}")


def _validate_stoneham(params: dict) -> None:
    b, c = params["b"], params["c"]
    _require(b >= 2 and c >= 2, f"b and c must be at least 2, got b={b}, c={c}")
    _require(gcd(b, c) == 1, f"b={b} and c={c} must be coprime")
    _require(params["digits"] >= 0, f"--digits must be nonnegative, got {params['digits']}")
    _check_render_base(b * b if params["radix"] == Radix.SQUARE.value else b, "digit radix")


def _validate_verify(params: dict) -> None:
    _require(params["max_n"] >= 0, f"--max-n must be nonnegative, got {params['max_n']}")


def _validate_mahler(params: dict) -> None:
    c, degree = params["c"], params["degree"]
    _require(c >= 2, f"c must be at least 2, got {c}")
    _require(degree >= c, f"degree bound {degree} is below c={c}")


_VALIDATORS: dict[str, Callable[[dict], None]] = {
    "expand": _validate_expand,
    "census": _validate_census,
    "stoneham": _validate_stoneham,
    "verify": _validate_verify,
    "mahler": _validate_mahler,
}


def _text_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return "-" if value is None or value == "" else str(value)


def cmd_expand(config: RunConfig, sink: TextIO) -> int:
    params = config.params
    fraction = ReducedFraction(params["num"], params["den"])
    base = params["base"]
    expansion = expand(fraction, base)
    if config.verbosity:
        print(f"[EXPAND] {fraction} in base {base}: preperiod {expansion.preperiod_length}, "
              f"period {expansion.period_length} ✓")
    digits = expansion.digits(params["max_digits"]) if params["max_digits"] is not None else None
    payload = expansion_json(fraction, expansion, digits)
    if config.output_format == "json":
        sink.write(dumps(payload) + "\n")
    elif config.output_format == "csv":
        fields = [key for key in payload if key != "schema"]
        write_csv(sink, fields, [[_text_value(payload[key]) for key in fields]])
    else:
        sink.write(f"expansion: {expansion.render()}\n")
        for key, value in payload.items():
            if key != "schema":
                sink.write(f"{key}: {_text_value(value)}\n")
    return EXIT_OK


def cmd_census(config: RunConfig, sink: TextIO) -> int:
    params = config.params
    p, m, base = params["p"], params["m"], params["base"]
    closed = brute = None
    if params["check"] or not params["brute"]:
        closed = census_closed_form(p, m, base)
    if params["check"] or params["brute"]:
        brute = census_of_digits(expand(ReducedFraction(1, p**m), base).period, base)
    if config.verbosity:
        if closed is not None and brute is not None:
            method = "both"
        else:
            method = "closed-form" if closed is not None else "brute"
        print(f"[CENSUS] 1/{p}^{m} in base {base} ({method})")

    payload = census_command_json(p, m, base, closed, brute)
    if config.output_format == "json":
        sink.write(dumps(payload) + "\n")
    elif config.output_format == "csv":
        rows = [
            (method, digit, count)
            for method, census in (("closed-form", closed), ("brute", brute))
            if census is not None
            for digit, count in census.counts.items()
        ]
        write_csv(sink, ("method", "digit", "count"), rows)
    else:
        sink.write(f"census p={p} m={m} base={base}\n")
        if closed is not None:
            sink.write(f"closed-form: {closed}\n")
        if brute is not None:
            sink.write(f"brute: {brute}\n")
        if payload["match"] is not None:
            sink.write(f"match: {_text_value(payload['match'])}\n")
    if payload["match"] is False:
        print(f"[!] closed-form and brute-force censuses differ for 1/{p}^{m} in base {base}")
        return EXIT_FAILED
    return EXIT_OK


def cmd_stoneham(config: RunConfig, sink: TextIO) -> int:
    params = config.params
    spec = StonehamSpec(params["b"], params["c"])
    radix = Radix(params["radix"])
    count = params["digits"]
    stream = DigitStream(spec, radix, prefer_fast=not params["oracle"])
    if config.verbosity:
        print(f"[STREAM] {spec} radix {radix.value}: {count} digits on the {stream.path} path")
    if config.output_format == "json":
        sink.write(dumps(stoneham_json(stream, count)) + "\n")
    elif config.output_format == "csv":
        write_digit_csv(stream, count, sink)
    else:
        write_digit_dump(stream, count, sink)
    return EXIT_OK


def cmd_verify(config: RunConfig, sink: TextIO) -> int:
    params = config.params
    conjecture = params["conjecture"]
    mode = Mode(params["mode"])

    def progress(report: ConjectureReport) -> None:
        if config.verbosity:
            print(f"[VERIFY] {conjecture} n={report.n} {'✓' if report.passed else '✗'}")

    reports = run_verifications(conjecture, params["max_n"], mode, on_report=progress)

    if config.output_format == "json":
        for report in reports:
            sink.write(dumps(conjecture_report_json(report)) + "\n")
        sink.write(dumps(summary_json(conjecture, mode, reports)) + "\n")
    elif config.output_format == "csv":
        write_csv(sink, CONJECTURE_CSV_HEADER, (conjecture_report_row(report) for report in reports))
    else:
        for report in reports:
            sink.write(conjecture_report_text(report) + "\n")
        passed = sum(report.passed for report in reports)
        sink.write(f"Summary: {passed}/{len(reports)} passed ({conjecture}, {mode.value} mode)\n")

    if params["pdf"] is not None:
        try:
            path = write_pdf_report(conjecture, mode, reports, Path(params["pdf"]) if params["pdf"] else None)
            print(f"[REPORT] PDF report: {path}")
        except Exception as exc:
            print(f"[!] PDF export failed: {exc}")

    return EXIT_OK if all(report.passed for report in reports) else EXIT_FAILED


def cmd_mahler(config: RunConfig, sink: TextIO) -> int:
    c, degree = config.params["c"], config.params["degree"]
    residual = functional_residual(c, degree)
    if config.verbosity:
        print(f"[MAHLER] F_{c}(x^{c}) - {c} F_{c}(x) + x^{c} through degree {degree} "
              f"{'✓' if residual.is_zero() else '✗'}")
    if config.output_format == "json":
        sink.write(dumps(mahler_json(c, residual)) + "\n")
    elif config.output_format == "csv":
        write_csv(sink, ("exponent", "coefficient"), ((e, fraction_text(v)) for e, v in residual.terms()))
    elif residual.is_zero():
        sink.write(f"residual zero through degree {degree}\n")
    else:
        terms = residual.terms()
        sink.write(f"first nonzero coefficient at degree {terms[0][0]}\n")
        for exponent, coeff in terms:
            sink.write(f"{exponent}: {fraction_text(coeff)}\n")
    return EXIT_OK if residual.is_zero() else EXIT_FAILED


_HANDLERS: dict[str, Callable[[RunConfig, TextIO], int]] = {
    "expand": cmd_expand,
    "census": cmd_census,
    "stoneham": cmd_stoneham,
    "verify": cmd_verify,
    "mahler": cmd_mahler,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None, help="output format (verify defaults to json)")
    common.add_argument("--output", "--out", dest="output", metavar="PATH", help="write the result here, not stdout")
    common.add_argument("-v", "--verbose", action="count", default=0, help="progress lines on stderr")

    parser = argparse.ArgumentParser(
        prog="radix-census",
        description="Exact radix expansions, digit censuses and Stoneham-number digit checks.",
    )
    commands = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")

    expand_cmd = commands.add_parser("expand", parents=[common], help="preperiod and period of num/den")
    expand_cmd.add_argument("--num", type=int, required=True)
    expand_cmd.add_argument("--den", type=int, required=True)
    expand_cmd.add_argument("--base", type=int, required=True)
    expand_cmd.add_argument("--max-digits", type=int, default=None, help="also print the first K digits")

    census_cmd = commands.add_parser("census", parents=[common], help="digit census of the period of 1/p^m")
    census_cmd.add_argument("--p", type=int, required=True)
    census_cmd.add_argument("--m", type=int, required=True)
    census_cmd.add_argument("--base", type=int, required=True)
    census_cmd.add_argument("--brute", action="store_true", help="count the digits of the expansion instead")
    census_cmd.add_argument("--check", action="store_true", help="compute both ways and compare")

    stoneham_cmd = commands.add_parser("stoneham", parents=[common], help="dump digits of alpha_{b,c}")
    stoneham_cmd.add_argument("--b", type=int, required=True)
    stoneham_cmd.add_argument("--c", type=int, required=True)
    stoneham_cmd.add_argument("--digits", type=int, required=True)
    stoneham_cmd.add_argument("--radix", choices=[radix.value for radix in Radix], default=Radix.BASE.value)
    stoneham_cmd.add_argument("--oracle", action="store_true", help="long division only, no block layout")

    verify_cmd = commands.add_parser("verify", parents=[common], help="check the digit-sum identities for n <= max-n")
    verify_cmd.add_argument("conjecture", choices=CONJECTURES)
    verify_cmd.add_argument("--max-n", type=int, required=True)
    verify_cmd.add_argument("--mode", choices=[mode.value for mode in Mode], default=Mode.CORRECTED.value)
    verify_cmd.add_argument(
        "--pdf",
        metavar="PATH",
        nargs="?",
        const="",
        default=None,
        help="also export the reports as a PDF (default: a dated file under the reports directory)",
    )

    mahler_cmd = commands.add_parser("mahler", parents=[common], help="residual of F_c(x^c) = c F_c(x) - x^c")
    mahler_cmd.add_argument("--c", type=int, required=True)
    mahler_cmd.add_argument("--degree", type=int, required=True)

    return parser


def _open_sink(path: Path | None):
    if path is None:
        return nullcontext(sys.stdout)
    path.parent.mkdir(parents=True, exist_ok=True)
    return path.open("w", encoding="utf-8", newline="")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    try:
        config = RunConfig.from_args(args)
    except ValueError as exc:
        print(f"[!] {exc}")
        return EXIT_USAGE

    try:
        with _open_sink(config.output_path) as sink:
            return _HANDLERS[config.subcommand](config, sink)
    except ValueError as exc:
        print(f"[!] {exc}")
        return EXIT_USAGE
