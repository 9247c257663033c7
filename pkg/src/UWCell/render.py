"""CSV and JSON output assembly."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Callable, Mapping, Sequence

FORMATS = ("csv", "json")


def format_length(value: float) -> str:
    return f"{value:.9g}"


def format_probability(value: float) -> str:
    return f"{value:.7f}"


def format_ratio(value: float) -> str:
    """Shortest repr after rounding to 7 decimals (2.0 stays ``2.0``)."""
    return repr(round(float(value), 7))


def _cell(value: object) -> str:
    if value is None:
        return ""
    return str(value)


def render_table(
    header: Sequence[str],
    rows: Sequence[Sequence[object]],
    fmt: str = "csv",
) -> str:
    """Render pre-formatted rows as CSV, or as a JSON list of objects.

    Cells are written as given; None becomes an empty CSV cell or JSON null.
    """
    if fmt == "json":
        records = [
            {name: (None if value is None else str(value)) for name, value in zip(header, row)}
            for row in rows
        ]
        return json.dumps(records, indent=2)
    if fmt != "csv":
        raise ValueError(f"Unknown output format: {fmt!r}")

    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([_cell(v) for v in row] for row in rows)
    return buffer.getvalue().rstrip("\n")



def _json_scalar(value: object) -> object:
    # numpy scalars that json cannot encode itself
    if hasattr(value, "item"):
        return value.item()
    raise TypeError(f"Cannot encode {type(value).__name__} as JSON")


def render_record(
    record: Mapping[str, object],
    fmt: str = "csv",
    formatters: Mapping[str, Callable[[object], str]] | None = None,
) -> str:
    """Render one flat record as ``key,value`` CSV rows, or as a JSON object.

    JSON keeps numbers and booleans native. ``formatters`` apply to CSV cells only.
    """
    if fmt == "json":
        return json.dumps(dict(record), indent=2, default=_json_scalar)
    formatters = formatters or {}
    rows = [
        (key, value if value is None or key not in formatters else formatters[key](value))
        for key, value in record.items()
    ]
    return render_table(("key", "value"), rows, fmt)
