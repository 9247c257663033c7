"""Simple cubic lattice (cube cells)."""

from __future__ import annotations

import math

import numpy as np

from UWCell.lattices.base import Lattice


class CubicLattice(Lattice):
    """Cube cells of circumradius R; node spacing 2R/sqrt(3) on every axis."""

    def __init__(self, radius: float):
        self.radius = radius
        self.step = 2 * radius / math.sqrt(3)

    @property
    def label(self) -> str:
        return "CB"

    def basis(self) -> np.ndarray:
        return np.eye(3) * self.step
