"""Stacked triangular lattice (hexagonal prism cells)."""

from __future__ import annotations

import math

import numpy as np

from UWCell.lattices.base import Lattice


class HexagonalPrismLattice(Lattice):
    """Hexagon centers a*sqrt3 apart in each layer, layers ``height`` apart.

    The two in-layer basis vectors are 60 degrees apart.
    """

    def __init__(self, side: float, height: float):
        self.side = side
        self.height = height

    @property
    def label(self) -> str:
        return "HP"

    @property
    def radius(self) -> float:
        return math.hypot(self.side, self.height / 2)

    def basis(self) -> np.ndarray:
        s = self.side * math.sqrt(3)
        return np.array([
            [s * math.sin(math.pi / 3), 0.0, 0.0],
            [s * math.cos(math.pi / 3), s, 0.0],
            [0.0, 0.0, self.height],
        ])
