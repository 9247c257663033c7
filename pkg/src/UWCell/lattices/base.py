"""Abstract base class for backbone lattices."""

from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Generator

import numpy as np

from UWCell.models import ORIGIN, Point3, Region

# Relative slack on region bounds for points that land on a face.
_BOUNDARY_TOL = 1e-9


class Lattice(ABC):
    """Base class for the node arrangements of the placement models.

    A lattice maps integer indices (u, v, w) to ``reference + B @ (u, v, w)``
    where the columns of ``B`` are the basis vectors.
    """

    @property
    @abstractmethod
    def label(self) -> str:
        """Short model name used in logs and output."""

    @abstractmethod
    def basis(self) -> np.ndarray:
        """Return the 3x3 basis matrix (one basis vector per column)."""

    def points(self, indices: np.ndarray, reference: Point3 = ORIGIN) -> np.ndarray:
        idx = np.asarray(indices, dtype=float).reshape(-1, 3)
        return idx @ self.basis().T + np.asarray(reference, dtype=float)

    def point(self, u: int, v: int, w: int, reference: Point3 = ORIGIN) -> Point3:
        return Point3(*self.points(np.array([u, v, w]), reference)[0].tolist())

    def index_bounds(
        self, region: Region, reference: Point3 = ORIGIN
    ) -> tuple[np.ndarray, np.ndarray]:
        """Index box that contains every lattice point inside ``region``."""
        corners = region.corners() - np.asarray(reference, dtype=float)
        coords = np.linalg.solve(self.basis(), corners.T).T
        lo = np.floor(coords.min(axis=0)).astype(int)
        hi = np.ceil(coords.max(axis=0)).astype(int)
        return lo, hi

    def iter_slabs(
        self, region: Region, reference: Point3 = ORIGIN
    ) -> Generator[tuple[np.ndarray, np.ndarray], None, None]:
        """Yield (indices, points) inside ``region``, one w-slab at a time.

        Within a slab rows are ordered by v, then u.
        """
        lo, hi = self.index_bounds(region, reference)
        tol = _BOUNDARY_TOL * max(1.0, float(np.abs(region.extent).max()))
        vs = np.arange(lo[1], hi[1] + 1)
        us = np.arange(lo[0], hi[0] + 1)
        vv, uu = np.meshgrid(vs, us, indexing="ij")
        for w in range(lo[2], hi[2] + 1):
            idx = np.column_stack([uu.ravel(), vv.ravel(), np.full(uu.size, w)])
            pts = self.points(idx, reference)
            mask = region.contains(pts, tol=tol)
            if mask.any():
                yield idx[mask], pts[mask]

    def fill(
        self, region: Region, reference: Point3 = ORIGIN
    ) -> tuple[np.ndarray, np.ndarray]:
        """Return all (indices, points) inside ``region`` in (w, v, u) order."""
        slabs = list(self.iter_slabs(region, reference))
        if not slabs:
            return np.empty((0, 3), dtype=int), np.empty((0, 3))
        indices = np.vstack([s[0] for s in slabs])
        points = np.vstack([s[1] for s in slabs])
        return indices, points
