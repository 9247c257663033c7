"""Parsing of point lists, id triples, routing fields and config files."""

from __future__ import annotations

import csv
import io
import re

import numpy as np

from UWCell.models import CellId, NodeState, Point3
from UWCell.routing import Field


class InputParseError(Exception):
    """Raised when user input cannot be parsed."""


_SEPARATOR = re.compile(r"[\s,]+")
_TRUE = {"1", "true", "yes", "alive"}
_FALSE = {"0", "false", "no", "dead"}


def _content_lines(text: str):
    """Yield (line number, stripped line), skipping blanks and # comments."""
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def _fields(text: str, count: int, what: str) -> list[str]:
    parts = [p for p in _SEPARATOR.split(text.strip()) if p]
    if len(parts) != count:
        raise InputParseError(f"Expected {count} values for {what}, got {len(parts)}: {text!r}")
    return parts


def parse_triple(text: str) -> Point3:
    """Parse ``"x,y,z"`` or ``"x y z"``."""
    try:
        return Point3(*(float(p) for p in _fields(text, 3, "a point")))
    except ValueError:
        raise InputParseError(f"Point coordinates must be numbers: {text!r}") from None


def parse_cell_id(text: str) -> CellId:
    """Parse ``"u,v,w"`` with integer components."""
    try:
        return CellId(*(int(p) for p in _fields(text, 3, "a cell id")))
    except ValueError:
        raise InputParseError(f"Cell id components must be integers: {text!r}") from None


def parse_point_lines(text: str) -> np.ndarray:
    """Parse one ``x y z`` triple per line into an (n, 3) array."""
    rows: list[Point3] = []
    for number, line in _content_lines(text):
        try:
            rows.append(parse_triple(line))
        except InputParseError as exc:
            raise InputParseError(f"Line {number}: {exc}") from None
    return np.array(rows, dtype=float).reshape(-1, 3)


def _parse_alive(value: str, number: int) -> bool:
    token = value.strip().lower()
    if token in _TRUE:
        return True
    if token in _FALSE:
        return False
    raise InputParseError(f"Line {number}: alive must be 1/0 or true/false, got {value!r}")


def parse_field_csv(text: str) -> Field:
    """Parse ``u,v,w,alive,energy`` rows; a header row and the energy column are optional."""
    nodes: list[NodeState] = []
    seen: set[CellId] = set()
    reader = csv.reader(io.StringIO(text))
    for number, row in enumerate(reader, start=1):
        cells = [c.strip() for c in row]
        if not any(cells) or cells[0].startswith("#"):
            continue
        if number == 1 and cells[0].lower() == "u":
            continue
        if len(cells) not in (4, 5):
            raise InputParseError(
                f"Line {number}: expected u,v,w,alive[,energy], got {len(cells)} columns"
            )
        try:
            cell = CellId(*(int(c) for c in cells[:3]))
            energy = float(cells[4]) if len(cells) == 5 and cells[4] else 1.0
        except ValueError:
            raise InputParseError(f"Line {number}: malformed row {row!r}") from None
        if energy < 0:
            raise InputParseError(f"Line {number}: energy must be nonnegative, got {energy}")
        if cell in seen:
            raise InputParseError(f"Line {number}: duplicate cell id {tuple(cell)}")
        seen.add(cell)
        nodes.append(NodeState(cell, alive=_parse_alive(cells[3], number), energy=energy))
    return Field(nodes)


def parse_config_text(text: str) -> dict[str, str]:
    """Parse flat ``key = value`` lines; keys are lowercased with ``-`` as ``_``."""
    values: dict[str, str] = {}
    for number, line in _content_lines(text):
        key, sep, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        if not sep or not key:
            raise InputParseError(f"Line {number}: expected key = value, got {line!r}")
        values[key] = value.strip()
    return values
