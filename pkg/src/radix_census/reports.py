"""Rendering of results as JSON, CSV, text, digit dumps and PDF.

Every JSON document starts with ``"schema"``; keys keep insertion order so
identical runs print identical bytes.
"""

from __future__ import annotations

import csv
import json
from collections.abc import Iterable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import TextIO
from uuid import uuid4

from jsonschema import Draft202012Validator

from .census import DigitCensus
from .config import (
    APPROX_SIGNIFICANT_DIGITS,
    DIGIT_DUMP_LINE_WIDTH,
    JSON_SCHEMA_VERSION,
    REPORTS_DIR,
    STREAM_CHUNK_DIGITS,
)
from .conjectures import ConjectureReport, Mode
from .cyclotomic import CyclotomicInt
from .mahler_series import TruncatedSeries
from .pdf_report import render_report_pdf, report_pdf_filename
from .radix_core import RadixExpansion, ReducedFraction, digits_to_text
from .stoneham import DigitStream

_CYCLOTOMIC_SCHEMA = {
    "type": "object",
    "properties": {
        "order": {"type": "integer", "minimum": 1},
        "coeffs": {"type": "array", "items": {"type": "integer"}},
    },
    "required": ["order", "coeffs"],
    "additionalProperties": False,
}

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "properties": {
        "schema": {"const": JSON_SCHEMA_VERSION},
        "conjecture": {"enum": ["fc1", "fc2"]},
        "n": {"type": "integer", "minimum": 0},
        "mode": {"enum": [mode.value for mode in Mode]},
        "range": {
            "type": "array",
            "prefixItems": [{"type": "integer", "minimum": 1}, {"type": "integer", "minimum": 1}],
            "minItems": 2,
            "maxItems": 2,
        },
        "sum": _CYCLOTOMIC_SCHEMA,
        "expected": _CYCLOTOMIC_SCHEMA,
        "sum_approx": {
            "type": "object",
            "properties": {"re": {"type": "number"}, "im": {"type": "number"}},
            "required": ["re", "im"],
        },
        "part_i_pass": {"type": "boolean"},
        "part_ii_pass": {"type": "boolean"},
        "census": {
            "type": "object",
            "propertyNames": {"pattern": "^[0-9]+$"},
            "additionalProperties": {"type": "integer", "minimum": 1},
        },
        "census_consistent": {"type": "boolean"},
        "first_mismatch": {"type": ["integer", "null"]},
    },
    "required": [
        "schema",
        "conjecture",
        "n",
        "mode",
        "range",
        "sum",
        "expected",
        "sum_approx",
        "part_i_pass",
        "part_ii_pass",
        "census",
    ],
}

_report_validator = Draft202012Validator(REPORT_SCHEMA)


def dumps(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False)


_ROUNDING_NOISE = 1e-12


def _approx(component: float, scale: float) -> float:
    if abs(component) < _ROUNDING_NOISE * scale:
        return 0.0
    # + 0.0 folds -0.0 into 0.0
    return float(f"{component:.{APPROX_SIGNIFICANT_DIGITS}g}") + 0.0


def cyclotomic_json(value: CyclotomicInt) -> dict:
    return {"order": value.order, "coeffs": list(value.coeffs)}


def approx_json(value: CyclotomicInt) -> dict:
    z = value.to_complex()
    scale = max(1.0, abs(z))
    return {"re": _approx(z.real, scale), "im": _approx(z.imag, scale)}


def census_json(census: DigitCensus) -> dict[str, int]:
    return {str(digit): count for digit, count in census.counts.items()}


def conjecture_report_json(report: ConjectureReport) -> dict:
    payload = {
        "schema": JSON_SCHEMA_VERSION,
        "conjecture": report.conjecture,
        "n": report.n,
        "mode": report.mode.value,
        "range": list(report.range),
        "sum": cyclotomic_json(report.sum),
        "expected": cyclotomic_json(report.expected),
        "sum_approx": approx_json(report.sum),
        "part_i_pass": report.part_i_pass,
        "part_ii_pass": report.part_ii_pass,
        "census": census_json(report.census),
        "census_consistent": report.census_consistent,
        "first_mismatch": report.first_mismatch,
    }
    _report_validator.validate(payload)
    return payload


def summary_json(conjecture: str, mode: Mode, reports: Sequence[ConjectureReport]) -> dict:
    return {
        "schema": JSON_SCHEMA_VERSION,
        "summary": {
            "conjecture": conjecture,
            "mode": mode.value,
            "checked": len(reports),
            "passed": sum(report.passed for report in reports),
            "failed": [report.n for report in reports if not report.passed],
        },
    }


def conjecture_report_text(report: ConjectureReport) -> str:
    mark = "✓" if report.passed else "✗"
    start, end = report.range
    line = (
        f"{mark} {report.conjecture} n={report.n} mode={report.mode.value} k={start}..{end} "
        f"sum={report.sum} expected={report.expected} "
        f"part_i={'pass' if report.part_i_pass else 'FAIL'} part_ii={'pass' if report.part_ii_pass else 'FAIL'} "
        f"census={report.census}"
    )
    if not report.census_consistent:
        line += " census_consistent=FAIL"
    if report.first_mismatch is not None:
        line += f" first_mismatch={report.first_mismatch}"
    return line


CONJECTURE_CSV_HEADER = (
    "conjecture",
    "n",
    "mode",
    "start",
    "end",
    "sum",
    "expected",
    "part_i_pass",
    "part_ii_pass",
    "census_consistent",
    "first_mismatch",
)


def conjecture_report_row(report: ConjectureReport) -> tuple:
    return (
        report.conjecture,
        report.n,
        report.mode.value,
        *report.range,
        str(report.sum),
        str(report.expected),
        report.part_i_pass,
        report.part_ii_pass,
        report.census_consistent,
        "" if report.first_mismatch is None else report.first_mismatch,
    )


def write_csv(sink: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)


def expansion_json(fraction: ReducedFraction, expansion: RadixExpansion, digits: bytes | None = None) -> dict:
    payload = {
        "schema": JSON_SCHEMA_VERSION,
        "fraction": str(fraction),
        "base": expansion.base,
        "preperiod": digits_to_text(expansion.preperiod),
        "period": digits_to_text(expansion.period),
        "preperiod_length": expansion.preperiod_length,
        "period_length": expansion.period_length,
        "terminating": expansion.terminating,
    }
    if digits is not None:
        payload["digits"] = digits_to_text(digits)
    return payload


def census_command_json(
    p: int, m: int, base: int, closed_form: DigitCensus | None, brute: DigitCensus | None
) -> dict:
    return {
        "schema": JSON_SCHEMA_VERSION,
        "p": p,
        "m": m,
        "base": base,
        "closed_form": census_json(closed_form) if closed_form is not None else None,
        "brute": census_json(brute) if brute is not None else None,
        "match": closed_form == brute if closed_form is not None and brute is not None else None,
    }


def fraction_text(value: Fraction) -> str:
    """Always p/q, integers included."""
    return f"{value.numerator}/{value.denominator}"


def mahler_json(c: int, residual: TruncatedSeries) -> dict:
    return {
        "schema": JSON_SCHEMA_VERSION,
        "c": c,
        "degree": residual.degree,
        "zero": residual.is_zero(),
        "nonzero": {str(exponent): fraction_text(coeff) for exponent, coeff in residual.terms()},
    }


def dump_header(stream: DigitStream, count: int) -> str:
    return f"stoneham b={stream.spec.b} c={stream.spec.c} radix={stream.radix.value} count={count}"


def write_digit_dump(stream: DigitStream, count: int, sink: TextIO, *, chunk_digits: int = STREAM_CHUNK_DIGITS) -> None:
    """Header, path line, then the digits wrapped at the dump line width."""
    sink.write(dump_header(stream, count) + "\n")
    sink.write(f"# path={stream.path}\n")
    carry = ""
    for chunk in stream.chunks(count, chunk_digits):
        text = carry + digits_to_text(chunk)
        full = len(text) - len(text) % DIGIT_DUMP_LINE_WIDTH
        for offset in range(0, full, DIGIT_DUMP_LINE_WIDTH):
            sink.write(text[offset : offset + DIGIT_DUMP_LINE_WIDTH] + "\n")
        carry = text[full:]
    if carry:
        sink.write(carry + "\n")


def conjecture_reports_markdown(conjecture: str, mode: Mode, reports: Sequence[ConjectureReport]) -> str:
    passed = sum(report.passed for report in reports)
    lines = [
        f"# {conjecture} verification ({mode.value} mode)",
        "",
        f"{passed} of {len(reports)} values of n pass.",
        "",
        "| n | k range | sum | expected | part (i) | part (ii) | census |",
        "|---|---|---|---|---|---|---|",
    ]
    for report in reports:
        start, end = report.range
        lines.append(
            f"| {report.n} | {start}..{end} | {report.sum} | {report.expected} | "
            f"{'pass' if report.part_i_pass else 'fail'} | {'pass' if report.part_ii_pass else 'fail'} | "
            f"`{report.census}` |"
        )
    failures = [report for report in reports if report.first_mismatch is not None]
    if failures:
        lines.extend(["", "## Repetition mismatches", ""])
        lines.extend(f"- n={report.n}: first mismatch at k={report.first_mismatch}" for report in failures)
    return "\n".join(lines) + "\n"


def write_pdf_report(
    conjecture: str, mode: Mode, reports: Sequence[ConjectureReport], output_path: Path | None = None
) -> Path:
    report_id = f"run_{uuid4().hex[:12]}"
    title = f"{conjecture} verification"
    if output_path is None:
        output_path = Path(REPORTS_DIR).expanduser() / report_pdf_filename(report_id, f"{title} {mode.value}")
    return render_report_pdf(
        report_id=report_id,
        title=title,
        report_markdown=conjecture_reports_markdown(conjecture, mode, reports),
        output_path=output_path,
    )


def stoneham_json(stream: DigitStream, count: int) -> dict:
    """Reads ``count`` digits from the stream."""
    digits = stream.read(count)
    return {
        "schema": JSON_SCHEMA_VERSION,
        "b": stream.spec.b,
        "c": stream.spec.c,
        "radix": stream.radix.value,
        "count": count,
        "path": stream.path,
        "digits": digits_to_text(digits),
    }


def write_digit_csv(stream: DigitStream, count: int, sink: TextIO, *, chunk_digits: int = STREAM_CHUNK_DIGITS) -> None:
    writer = csv.writer(sink, lineterminator="\n")
    writer.writerow(("position", "digit"))
    for chunk in stream.chunks(count, chunk_digits):
        first = stream.position - len(chunk) + 1
        writer.writerows((first + offset, digit) for offset, digit in enumerate(chunk))
