"""
report.py — Render bucket-count rows as text, CSV, JSON or YAML.

Every row type carries ``n``, ``cells`` (s00, s01, s10, s11), ``method``
and ``elapsed`` (seconds). The CSV and JSON schemas are fixed:

    n,s00,s01,s10,s11,method,elapsed_ms
"""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence
from typing import Protocol

import yaml

COLUMNS = ("n", "s00", "s01", "s10", "s11", "method", "elapsed_ms")
FORMATS = ("text", "csv", "json", "yaml")


class CountRow(Protocol):
    n: int

    @property
    def cells(self) -> tuple[int, int, int, int]: ...

    @property
    def method(self) -> str: ...

    @property
    def elapsed(self) -> float: ...


def as_record(row: CountRow) -> dict:
    """Flat dict keyed by COLUMNS."""
    s00, s01, s10, s11 = row.cells
    return {
        "n": row.n,
        "s00": s00,
        "s01": s01,
        "s10": s10,
        "s11": s11,
        "method": row.method,
        "elapsed_ms": round(row.elapsed * 1000, 3),
    }


def to_csv(rows: Iterable[CountRow]) -> str:
    """CSV with a header row; elapsed_ms is fixed to three decimals."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        record = as_record(row)
        record["elapsed_ms"] = f"{record['elapsed_ms']:.3f}"
        writer.writerow(record)
    return buf.getvalue()


def to_json(rows: Iterable[CountRow]) -> str:
    """Indented JSON array of records."""
    return json.dumps([as_record(r) for r in rows], indent=2) + "\n"


def to_yaml(rows: Iterable[CountRow]) -> str:
    """YAML sequence of records in column order."""
    return yaml.safe_dump([as_record(r) for r in rows], sort_keys=False)


def to_text(rows: Iterable[CountRow]) -> str:
    """Right-aligned plain-text table."""
    records = [as_record(r) for r in rows]
    header = ("n", "|S00|", "|S01|", "|S10|", "|S11|", "method", "ms")
    table = [header] + [
        tuple(str(rec[c]) for c in COLUMNS[:-1]) + (f"{rec['elapsed_ms']:.1f}",) for rec in records
    ]
    widths = [max(len(line[i]) for line in table) for i in range(len(header))]
    return "".join(
        "  ".join(cell.rjust(w) for cell, w in zip(line, widths, strict=True)).rstrip() + "\n"
        for line in table
    )


_RENDERERS = {"text": to_text, "csv": to_csv, "json": to_json, "yaml": to_yaml}


def render(rows: Sequence[CountRow], output_format: str = "text") -> str:
    try:
        renderer = _RENDERERS[output_format]
    except KeyError:
        raise ValueError(
            f"unknown format {output_format!r}; choose from {', '.join(FORMATS)}"
        ) from None
    return renderer(rows)


def render_document(document: object, output_format: str = "text") -> str:
    """Render a free-form report (certificates, partitions) as JSON/YAML, or text as-is."""
    if output_format == "json":
        return json.dumps(document, indent=2) + "\n"
    if output_format == "yaml":
        return yaml.safe_dump(document, sort_keys=False)
    if isinstance(document, str):
        return document if document.endswith("\n") else document + "\n"
    return yaml.safe_dump(document, sort_keys=False)
