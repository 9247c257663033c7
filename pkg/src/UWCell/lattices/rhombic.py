"""Face-centered cubic lattice (rhombic dodecahedron cells)."""

from __future__ import annotations

import math

import numpy as np

from UWCell.lattices.base import Lattice


class RhombicLattice(Lattice):
    """Node (u, v, w) sits at ((2u+w)R/sqrt2, (2v+w)R/sqrt2, wR)."""

    def __init__(self, radius: float):
        self.radius = radius

    @property
    def label(self) -> str:
        return "RD"

    def basis(self) -> np.ndarray:
        r = self.radius
        s = r / math.sqrt(2)
        return np.array([
            [2 * s, 0.0, s],
            [0.0, 2 * s, s],
            [0.0, 0.0, r],
        ])
