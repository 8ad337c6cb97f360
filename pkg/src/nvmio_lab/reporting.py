"""Row-oriented report rendering: aligned text tables, canonical JSON, CSV.

CSV output uses a mandatory header row, `.` decimal separator, UTF-8,
and LF line endings. JSON is canonical (sorted keys, fixed separators)
so that parse + re-serialize round-trips byte-identically.
"""

from __future__ import annotations

import csv
import io
import json


def dumps_canonical(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _cell(value) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def render_table(rows: list[dict], columns: list[str] | None = None) -> str:
    if not rows:
        return "(no rows)\n"
    if columns is None:
        columns = list(rows[0].keys())
    table = [[_cell(row.get(c, "")) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in table)) for i, c in enumerate(columns)]
    out = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in table:
        out.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


def render_csv(rows: list[dict], columns: list[str] | None = None) -> str:
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([row.get(c, "") for c in columns])
    return buf.getvalue()


def render(rows: list[dict], fmt: str, columns: list[str] | None = None, json_obj=None) -> str:
    """Render rows in the requested format.

    `json_obj` overrides the JSON payload when the structured document
    should carry more than the flat rows.
    """
    if fmt == "table":
        return render_table(rows, columns)
    if fmt == "csv":
        return render_csv(rows, columns)
    if fmt == "json":
        return dumps_canonical(json_obj if json_obj is not None else rows)
    raise ValueError(f"unknown format {fmt!r}")
