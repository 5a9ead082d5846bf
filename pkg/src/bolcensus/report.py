"""Census reports and their text / csv / json renderings."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

from .catalog import CatalogEntry
from .census import CensusResult
from .terms import format_identity

FORMATS = ("text", "csv", "json")
CSV_FIELDS = ["name", "abbrev", "identity", "order", "total", "iso", "engine", "elapsed_ms"]


@dataclass
class ReportRow:
    name: str
    abbrev: str
    identity: str
    order: int
    total: int
    iso: Optional[int] = None
    engine: str = ""
    elapsed_ms: Optional[float] = None


@dataclass
class Report:
    rows: list[ReportRow] = field(default_factory=list)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        names = {f.name for f in fields(ReportRow)}
        return cls([ReportRow(**{k: v for k, v in obj.items() if k in names})
                    for obj in json.loads(text)])


def rows_from_result(entries: list[CatalogEntry], result: CensusResult, engine: str,
                     timing: bool = False) -> list[ReportRow]:
    rows = []
    per_row_ms = 1000.0 * result.elapsed / max(1, len(entries))
    for entry, count in zip(entries, result.counts):
        rows.append(ReportRow(
            name=entry.name,
            abbrev=entry.abbrev,
            identity=format_identity(count.identity),
            order=result.order,
            total=count.total_count,
            iso=count.iso_class_count,
            engine=engine,
            elapsed_ms=round(per_row_ms, 3) if timing else None,
        ))
    return rows


def _cell(v) -> str:
    return "" if v is None else str(v)


def _text(report: Report) -> str:
    show_iso = any(r.iso is not None for r in report.rows)
    show_ms = any(r.elapsed_ms is not None for r in report.rows)
    header = ["Name", "Abbreviation", "Identity", "Order", "Number"]
    if show_iso:
        header.append("Iso")
    header.append("Engine")
    if show_ms:
        header.append("ms")
    table = [header]
    for r in report.rows:
        line = [r.name, r.abbrev, r.identity, str(r.order), str(r.total)]
        if show_iso:
            line.append(_cell(r.iso))
        line.append(r.engine)
        if show_ms:
            line.append(_cell(r.elapsed_ms))
        table.append(line)
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    out = []
    for i, row in enumerate(table):
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if i == 0:
            out.append("  ".join("-" * w for w in widths))
    return "\n".join(out) + "\n"


def _csv(report: Report) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\r\n")
    writer.writerow(CSV_FIELDS)
    for r in report.rows:
        writer.writerow([_cell(v) for v in asdict(r).values()])
    return buf.getvalue()


def emit_report(report: Report, fmt: str = "text") -> bytes:
    if fmt == "text":
        return _text(report).encode()
    if fmt == "csv":
        return _csv(report).encode()
    if fmt == "json":
        return (json.dumps([asdict(r) for r in report.rows], indent=2, ensure_ascii=False)
                + "\n").encode()
    raise ValueError(f"unknown format {fmt!r}")
