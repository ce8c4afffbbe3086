"""Byte-stable result tables: JSON, CSV and aligned plain text."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Mapping

from .field import Field

FORMATS = ("table", "json", "csv")


@dataclass
class Table:
    title: str
    columns: List[str]
    rows: List[List[Any]]
    provenance: Dict[str, str] = dc_field(default_factory=dict)
    notes: List[str] = dc_field(default_factory=list)


def provenance(command: str, digest: str | None, window: str) -> Dict[str, str]:
    out = {"command": command}
    if digest:
        out["input_sha256"] = digest
    out["validity"] = window
    return out


def format_tensor(x) -> str:
    if isinstance(x, tuple):
        return "⊗".join(format_tensor(y) for y in x)
    return str(x)


def format_vector(F: Field, vec: Mapping) -> str:
    if not vec:
        return "0"
    parts = []
    for k, a in vec.items():
        s = F.format(a)
        label = format_tensor(k)
        parts.append(label if s == "1" else f"{s}·{label}")
    return " + ".join(parts)


def emit(table: Table, fmt: str) -> str:
    if fmt == "json":
        doc = {"title": table.title, "provenance": table.provenance,
               "columns": table.columns, "rows": table.rows, "notes": table.notes}
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    header = [f"# {table.title}"]
    header += [f"# {k}: {v}" for k, v in table.provenance.items()]
    header += [f"# note: {n}" for n in table.notes]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table.columns)
        for r in table.rows:
            w.writerow(r)
        return "\n".join(header) + "\n" + buf.getvalue()
    if fmt == "table":
        cells = [list(map(str, table.columns))] + [[str(v) for v in r] for r in table.rows]
        widths = [max(len(row[i]) for row in cells) for i in range(len(table.columns))]
        lines = []
        for j, row in enumerate(cells):
            lines.append("  ".join(v.ljust(widths[i]) for i, v in enumerate(row)).rstrip())
            if j == 0:
                lines.append("  ".join("-" * w for w in widths))
        return "\n".join(header + lines) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")
