"""Periodic backbone lattices for the placement models."""

from __future__ import annotations

import math

from UWCell.geometry import UnsupportedShapeError
from UWCell.lattices.base import Lattice
from UWCell.lattices.cubic import CubicLattice
from UWCell.lattices.hexagonal import HexagonalPrismLattice
from UWCell.lattices.octahedral import OctahedralLattice
from UWCell.lattices.rhombic import RhombicLattice
from UWCell.lattices.strip import StripLattice
from UWCell.models import CellDescriptor, CellShape

__all__ = [
    "CubicLattice",
    "HexagonalPrismLattice",
    "Lattice",
    "OctahedralLattice",
    "RhombicLattice",
    "StripLattice",
    "lattice_for",
]


def lattice_for(cell: CellDescriptor) -> Lattice:
    """Return the lattice whose Voronoi cells are ``cell``."""
    if cell.shape is CellShape.CB:
        return CubicLattice(cell.radius)
    if cell.shape is CellShape.RD:
        return RhombicLattice(cell.radius)
    if cell.shape is CellShape.TO:
        return OctahedralLattice(cell.radius)
    if cell.shape is CellShape.HP:
        side = cell.side if cell.side is not None else cell.radius * math.sqrt(2 / 3)
        height = cell.height if cell.height is not None else side * math.sqrt(2)
        return HexagonalPrismLattice(side, height)
    raise UnsupportedShapeError(f"No backbone lattice for {cell.shape.value}")
