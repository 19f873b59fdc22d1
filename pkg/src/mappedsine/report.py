"""CSV / JSON output for benchmark records."""

from __future__ import annotations

import csv
import io
import json
import math
import sys

from .bench import ConvergenceRecord, Table3DRow
from .exceptions import InvalidInputError

COLUMNS = ("case", "N", "value", "error", "iterations", "wall_time_s")


def _num(v, spec):
    if v is None:
        return ""
    if isinstance(v, float) and math.isnan(v):
        return "nan"
    return format(v, spec)


def to_row(record, *, timing: bool = True) -> dict:
    """Flatten a record into the report columns (strings, blank when absent)."""
    wall = None
    if isinstance(record, ConvergenceRecord):
        row = dict(case=record.case, N=record.N, value=None, error=record.max_norm_error,
                   iterations=None)
        wall = record.wall_time
    elif isinstance(record, Table3DRow):
        row = dict(case=record.case, N=record.N, value=record.energy, error=None,
                   iterations=record.report.iterations)
        wall = record.report.wall_time
    else:
        raise InvalidInputError(f"cannot report a {type(record).__name__}")
    return {
        "case": row["case"],
        "N": str(row["N"]),
        "value": _num(row["value"], ".11g"),
        "error": _num(row["error"], ".11g"),
        "iterations": "" if row["iterations"] is None else str(row["iterations"]),
        "wall_time_s": _num(wall if timing else None, ".6f"),
    }


def _json_value(key, text):
    if text == "":
        return None
    if key in ("N", "iterations"):
        return int(text)
    if key == "case":
        return text
    return None if text == "nan" else float(text)


def render(records, fmt: str = "csv", *, timing: bool = True) -> str:
    records = list(records)
    if not records:
        raise InvalidInputError("nothing to report")
    rows = [to_row(r, timing=timing) for r in records]
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "json":
        data = [{k: _json_value(k, row[k]) for k in COLUMNS} for row in rows]
        return json.dumps(data, indent=2) + "\n"
    raise InvalidInputError(f"unknown format {fmt!r}")


def emit_report(records, fmt: str = "csv", destination=None, *, timing: bool = True) -> None:
    """Write ``records`` as CSV or JSON to ``destination`` (stdout when None).

    Values and errors carry 11 significant digits, i.e. ten decimals for
    energies of order one.  ``timing=False`` blanks the wall-time column so
    repeated runs produce identical bytes.

    Raises:
        InvalidInputError: for an empty record list or unknown format.
        OSError: if ``destination`` cannot be written; the message names the path.
    """
    text = render(records, fmt, timing=timing)
    if destination is None or str(destination) == "-":
        sys.stdout.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {destination}: {exc.strerror or exc}") from exc
