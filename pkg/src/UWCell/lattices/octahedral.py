"""Body-centered cubic lattice (truncated octahedron cells)."""

from __future__ import annotations

import math

import numpy as np

from UWCell.lattices.base import Lattice


class OctahedralLattice(Lattice):
    """Node (u, v, w) sits at ((2u+w)t, (2v+w)t, wt) with t = 2R/sqrt5."""

    def __init__(self, radius: float):
        self.radius = radius
        self.unit = 2 * radius / math.sqrt(5)

    @property
    def label(self) -> str:
        return "TO"

    def basis(self) -> np.ndarray:
        t = self.unit
        return np.array([
            [2 * t, 0.0, t],
            [0.0, 2 * t, t],
            [0.0, 0.0, t],
        ])
