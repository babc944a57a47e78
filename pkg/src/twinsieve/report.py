"""Rendering of records to aligned text, RFC-4180-style CSV, and JSON.

CSV is comma-separated with a header row, LF endings, and no quoting (every
field is numeric or a bare identifier). JSON is a single top-level array of
objects whose keys match the CSV headers; integers too large for a double
are emitted as decimal strings so consumers cannot lose precision.
"""

from __future__ import annotations

import json
from fractions import Fraction

from twinsieve.bounds import BoundCheckResult, HLEstimate, ScanSummary
from twinsieve.conjecture import VerificationReport
from twinsieve.ratios import RatioRecord, render_fixed

JSON_INT_MAX = 2**53  # beyond this, ints become strings in JSON

FRACTION_PLACES = 4
DEV_PLACES = 6


def cell(v) -> str:
    """Canonical text form of one field."""
    if v is None:
        return "na"
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, int):
        return str(v)
    if isinstance(v, Fraction):
        return render_fixed(v, FRACTION_PLACES)
    if isinstance(v, float):
        return repr(v)
    return str(v)


def json_value(v):
    if v is None or isinstance(v, (bool, float, str)):
        return v
    if isinstance(v, int):
        return v if abs(v) <= JSON_INT_MAX else str(v)
    if isinstance(v, Fraction):
        return render_fixed(v, FRACTION_PLACES)
    return str(v)


def to_csv(headers: list[str], rows: list[list]) -> str:
    lines = [",".join(headers)]
    lines += [",".join(cell(v) for v in row) for row in rows]
    return "\n".join(lines) + "\n"


def to_json(headers: list[str], rows: list[list]) -> str:
    objs = [{h: json_value(v) for h, v in zip(headers, row)} for row in rows]
    return json.dumps(objs, indent=2) + "\n"


def to_table(headers: list[str], rows: list[list]) -> str:
    """Fixed-width text table; column widths depend only on the data."""
    cells = [[cell(v) for v in row] for row in rows]
    widths = [
        max(len(h), max((len(r[i]) for r in cells), default=0))
        for i, h in enumerate(headers)
    ]
    def fmt(row):
        return "  ".join(s.rjust(w) for s, w in zip(row, widths))
    lines = [fmt(headers), fmt(["-" * w for w in widths])]
    lines += [fmt(r) for r in cells]
    return "\n".join(lines) + "\n"


def emit(headers: list[str], rows: list[list], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(headers, rows)
    if fmt == "json":
        return to_json(headers, rows)
    if fmt == "table":
        return to_table(headers, rows)
    raise ValueError(f"unknown output format {fmt!r}")


# --- record adapters --------------------------------------------------------------

RATIO_HEADERS = ["x", "n", "method", "computed", "paper_value", "abs_dev"]


def ratio_rows(records: list[RatioRecord]) -> list[list]:
    out = []
    for r in records:
        dev = r.abs_dev
        out.append(
            [
                r.x,
                r.n,
                r.method,
                r.value,
                r.paper_value if r.paper_value is not None else None,
                render_fixed(dev, DEV_PLACES) if dev is not None else None,
            ]
        )
    return out


CHECK_HEADERS = ["claim", "index", "lhs", "rhs", "holds", "in_domain"]


def verification_rows(report: VerificationReport) -> list[list]:
    return [
        [report.claim, o.index, o.lhs, o.rhs, o.holds, o.in_domain]
        for o in report.outcomes
    ]


def verification_summary(report: VerificationReport) -> list[str]:
    """Human-readable wrap-up lines (wall time deliberately excluded)."""
    lines = [
        f"claim {report.claim}: scanned [{report.lo}, {report.hi}], "
        f"{sum(o.holds for o in report.outcomes)}/{len(report.outcomes)} pass"
    ]
    if report.first_failure is not None:
        lines.append(f"first failure at index {report.first_failure}")
    if report.threshold_found is not None:
        lines.append(f"threshold found: {report.threshold_found}")
    if report.claimed_threshold is not None:
        if report.threshold_discrepancy:
            lines.append(
                f"DISCREPANCY: claimed threshold {report.claimed_threshold}, "
                f"scan found {report.threshold_found}"
            )
        else:
            lines.append(f"matches claimed threshold {report.claimed_threshold}")
    if report.contradicted:
        lines.append("claim CONTRADICTED inside its asserted domain")
    return lines


def bound_rows(results: list[BoundCheckResult]) -> list[list]:
    return [
        [b.claim, b.point, b.lhs, b.rhs, b.holds, b.in_domain]
        for b in results
    ]


SCAN_HEADERS = ["claim", "domain_lo", "hi", "checked", "failures", "first_failure"]


def scan_rows(summaries: list[ScanSummary]) -> list[list]:
    return [
        [s.claim, s.lo, s.hi, s.checked, s.failures, s.first_failure]
        for s in summaries
    ]


HL_HEADERS = ["m", "integral_value", "simple_value", "c2", "twin_pairs", "rel_err"]


def hl_rows(est: HLEstimate, twin_pairs: int | None) -> list[list]:
    rel = None
    if twin_pairs:
        rel = est.integral_value / twin_pairs - 1.0
    return [[est.m, est.integral_value, est.simple_value, est.c2, twin_pairs, rel]]
