"""Closed-form constants of the space-filling cell shapes."""

from __future__ import annotations

import math

from UWCell.models import CellShape, ShapeConstants


class UnsupportedShapeError(ValueError):
    """Raised when a shape is not defined for the requested operation."""


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of a formula."""


SQRT2 = math.sqrt(2.0)
SQRT3 = math.sqrt(3.0)
SQRT5 = math.sqrt(5.0)

_CONSTANTS: dict[CellShape, ShapeConstants] = {
    CellShape.CB: ShapeConstants(
        volumetric_quotient=2 / (SQRT3 * math.pi),
        volume_coeff=8 / (3 * SQRT3),
        connectivity_threshold=2 / SQRT3,
        face_neighbors=6,
    ),
    CellShape.HP: ShapeConstants(
        volumetric_quotient=3 / (2 * math.pi),
        volume_coeff=2.0,
        connectivity_threshold=SQRT2,
        face_neighbors=8,
    ),
    CellShape.RD: ShapeConstants(
        volumetric_quotient=3 / (2 * math.pi),
        volume_coeff=2.0,
        connectivity_threshold=SQRT2,
        face_neighbors=12,
    ),
    CellShape.TO: ShapeConstants(
        volumetric_quotient=24 / (5 * SQRT5 * math.pi),
        volume_coeff=32 / (5 * SQRT5),
        connectivity_threshold=4 / SQRT5,
        face_neighbors=14,
    ),
}

_LABELS: dict[str, CellShape] = {
    "cb": CellShape.CB,
    "hp": CellShape.HP,
    "rd": CellShape.RD,
    "to": CellShape.TO,
    "alt-cb": CellShape.ALT_CB,
    "altcb": CellShape.ALT_CB,
    "alt_cb": CellShape.ALT_CB,
    "alt-hp": CellShape.ALT_HP,
    "althp": CellShape.ALT_HP,
    "alt_hp": CellShape.ALT_HP,
}


def parse_shape(label: str) -> CellShape:
    """Parse a shape label such as ``"TO"`` or ``"Alt-HP"`` (case-insensitive)."""
    shape = _LABELS.get(label.strip().lower())
    if shape is None:
        raise UnsupportedShapeError(f"Unknown cell shape: {label!r}")
    return shape


def shape_constants(shape: CellShape) -> ShapeConstants:
    """Return the constants of a base shape.

    Raises:
        UnsupportedShapeError: for Alt-CB and Alt-HP, which only exist in
            the nonhierarchical partition.
    """
    try:
        return _CONSTANTS[shape]
    except KeyError:
        raise UnsupportedShapeError(
            f"{shape.value} has no hierarchical constants; use CB, HP, RD or TO"
        ) from None


def volumetric_quotient(shape: CellShape) -> float:
    return shape_constants(shape).volumetric_quotient


def connectivity_threshold(shape: CellShape) -> float:
    """Minimum r_bb/r_bs that links every face-sharing neighbor at R = r_bs."""
    return shape_constants(shape).connectivity_threshold


def cell_volume(shape: CellShape, radius: float) -> float:
    """Volume of a cell with circumsphere radius ``radius``."""
    if radius < 0:
        raise DomainError(f"Cell radius must be nonnegative, got {radius}")
    return shape_constants(shape).volume_coeff * radius**3


def sphere_volume(radius: float) -> float:
    return 4.0 / 3.0 * math.pi * radius**3
