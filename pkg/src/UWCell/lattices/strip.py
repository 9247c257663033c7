"""Strip lattice for backbone ranges too short for a full tessellation."""

from __future__ import annotations

import math

import numpy as np

from UWCell.lattices.base import Lattice


class StripLattice(Lattice):
    """Nodes alpha apart along x-directed strips.

    Strips in one plane are beta apart; planes are beta/2 apart and each
    plane is shifted by (alpha/2, beta/2) from the one below. Node (u, v, w)
    belongs to strip (v, w).
    """

    def __init__(self, alpha: float, beta: float):
        self.alpha = alpha
        self.beta = beta

    @property
    def label(self) -> str:
        return "strip"

    @property
    def gamma(self) -> float:
        """Distance to the nearest node of an adjacent plane."""
        return math.sqrt(self.beta**2 / 2 + self.alpha**2 / 4)

    def basis(self) -> np.ndarray:
        a, b = self.alpha, self.beta
        return np.array([
            [a, 0.0, a / 2],
            [0.0, b, b / 2],
            [0.0, 0.0, b / 2],
        ])
