"""Nonhierarchical virtual-cell partitioning (GAF in three dimensions).

Every node computes the id of the truncated-octahedron cell it lies in from
its own position, the sink position and the transmission radius r_t. Cells
are small enough that any node can reach any node of every neighboring cell.
"""

from __future__ import annotations

import itertools
import logging
import math

import numpy as np
from scipy.spatial import cKDTree

from UWCell.geometry import SQRT2, SQRT3, SQRT5, DomainError, cell_volume
from UWCell.models import (
    CellId,
    CellIdAccuracy,
    CellShape,
    NeighborType,
    PartitionFrame,
    Point3,
)

logger = logging.getLogger(__name__)

SQRT17 = math.sqrt(17.0)

# First-tier neighbor kinds and the farthest point-to-point distance between
# a cell and such a neighbor, in units of the cell radius.
_NEIGHBOR_REACH: dict[CellShape, tuple[NeighborType, ...]] = {
    CellShape.CB: (
        NeighborType("face", 6, 2 * SQRT2),
        NeighborType("edge", 12, 2 * SQRT3),
        NeighborType("vertex", 8, 4.0),
    ),
    CellShape.ALT_CB: (
        NeighborType("face", 4, 2 * SQRT2),
        NeighborType("edge", 4, 2 * SQRT3),
        NeighborType("staggered", 8, math.sqrt(34 / 3)),
    ),
    CellShape.HP: (
        NeighborType("lateral", 6, math.sqrt(10)),
        NeighborType("vertical", 2, math.sqrt(8)),
        NeighborType("diagonal", 12, math.sqrt(14)),
    ),
    CellShape.ALT_HP: (
        NeighborType("lateral", 6, math.sqrt(10)),
        NeighborType("staggered", 6, math.sqrt(34 / 3)),
    ),
    CellShape.RD: (
        NeighborType("face", 12, math.sqrt(10)),
        NeighborType("vertex", 6, 4.0),
    ),
    CellShape.TO: (
        NeighborType("square", 6, 2 * SQRT17 / SQRT5),
        NeighborType("hexagon", 8, 2 * math.sqrt(14) / SQRT5),
    ),
}

# Alternative layouts keep the cell of their base shape.
_VOLUME_SHAPE = {CellShape.ALT_CB: CellShape.CB, CellShape.ALT_HP: CellShape.HP}


def neighbor_reach(shape: CellShape) -> tuple[NeighborType, ...]:
    return _NEIGHBOR_REACH[shape]


def neighbor_count(shape: CellShape) -> int:
    return sum(n.count for n in _NEIGHBOR_REACH[shape])


def max_cell_radius(shape: CellShape) -> float:
    """Largest cell radius, as a fraction of r_t, that keeps neighbors in range."""
    return 1.0 / max(n.distance for n in _NEIGHBOR_REACH[shape])


def min_sensing_range(shape: CellShape) -> float:
    """Sensing range, as a fraction of r_t, that covers a whole cell from anywhere inside it."""
    return 2.0 * max_cell_radius(shape)


def active_node_ratio(shape: CellShape) -> float:
    """Active nodes needed by ``shape`` relative to TO, from the cell volumes."""
    base = _VOLUME_SHAPE.get(shape, shape)
    to_volume = cell_volume(CellShape.TO, max_cell_radius(CellShape.TO))
    return to_volume / cell_volume(base, max_cell_radius(shape))


def lifetime_ratio(shape: CellShape) -> float:
    """Network lifetime relative to TO, as a fraction (0.42154 for CB)."""
    return 1.0 / active_node_ratio(shape)


# ---------------------------------------------------------------------------
# Cell ids
# ---------------------------------------------------------------------------

def _check_frame(frame: PartitionFrame) -> None:
    if frame.r_t <= 0:
        raise DomainError(f"r_t must be positive, got {frame.r_t}")


def cell_centers(ids: np.ndarray, frame: PartitionFrame) -> np.ndarray:
    _check_frame(frame)
    idx = np.asarray(ids, dtype=float).reshape(-1, 3)
    c = frame.r_t / SQRT17
    u, v, w = idx[:, 0], idx[:, 1], idx[:, 2]
    offsets = np.column_stack([(2 * u + w) * c, (2 * v + w) * c, w * c])
    return offsets + np.asarray(frame.sink, dtype=float)


def cell_center(cell: CellId, frame: PartitionFrame) -> Point3:
    return Point3(*cell_centers(np.array(cell), frame)[0].tolist())


def _continuous_ids(points: np.ndarray, frame: PartitionFrame) -> np.ndarray:
    """Real-valued (u, v, w) at which a cell center would sit on each point."""
    d = np.asarray(points, dtype=float).reshape(-1, 3) - np.asarray(frame.sink, dtype=float)
    c = frame.r_t / SQRT17
    return np.column_stack([
        (d[:, 0] - d[:, 2]) / (2 * c),
        (d[:, 1] - d[:, 2]) / (2 * c),
        d[:, 2] / c,
    ])


# Corner order of the floor/ceiling box: lexicographic in (u, v, w).
_CORNERS = np.array(list(itertools.product((0, 1), repeat=3)), dtype=bool)


def locate_cells(
    points: np.ndarray, frame: PartitionFrame, chunk: int = 200_000
) -> np.ndarray:
    """Vectorized :func:`locate_cell`; returns an (n, 3) integer array."""
    _check_frame(frame)
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    out = np.empty((len(pts), 3), dtype=np.int64)
    for start in range(0, len(pts), chunk):
        block = pts[start:start + chunk]
        cont = _continuous_ids(block, frame)
        low, high = np.floor(cont), np.ceil(cont)
        # (n, 8, 3) candidate ids
        cands = np.where(_CORNERS[None, :, :], high[:, None, :], low[:, None, :])
        centers = cell_centers(cands.reshape(-1, 3), frame).reshape(cands.shape)
        d2 = np.sum((centers - block[:, None, :]) ** 2, axis=2)
        best = np.argmin(d2, axis=1)
        out[start:start + chunk] = cands[np.arange(len(block)), best].astype(np.int64)
    return out


def locate_cell(p: Point3, frame: PartitionFrame) -> CellId:
    """Id of the cell containing ``p``.

    The floor and ceiling of each continuous id coordinate give eight
    candidate cells; the one whose center is nearest wins. Equal distances
    resolve to the lexicographically smallest id.
    """
    return CellId(*locate_cells(np.array(p), frame)[0].tolist())


def nearest_integer_cells(
    points: np.ndarray, frame: PartitionFrame, mode: str = "sequential"
) -> np.ndarray:
    """Rounding baseline for the cell id.

    ``sequential`` rounds w first and derives u and v from the rounded w;
    ``independent`` rounds the three continuous coordinates separately.
    """
    _check_frame(frame)
    cont = _continuous_ids(points, frame)
    if mode == "independent":
        return np.rint(cont).astype(np.int64)
    if mode != "sequential":
        raise DomainError(f"Unknown rounding mode: {mode!r}")
    d = np.asarray(points, dtype=float).reshape(-1, 3) - np.asarray(frame.sink, dtype=float)
    c = frame.r_t / SQRT17
    w = np.rint(cont[:, 2])
    u = np.rint((d[:, 0] / c - w) / 2)
    v = np.rint((d[:, 1] / c - w) / 2)
    return np.column_stack([u, v, w]).astype(np.int64)


def nearest_integer_cell(p: Point3, frame: PartitionFrame, mode: str = "sequential") -> CellId:
    return CellId(*nearest_integer_cells(np.array(p), frame, mode)[0].tolist())


def _center_index(frame: PartitionFrame, half_extent: float) -> tuple[cKDTree, np.ndarray]:
    """KD-tree over every cell center within ``half_extent + r_t`` of the sink."""
    reach = half_extent + frame.r_t
    c = frame.r_t / SQRT17
    span = int(math.ceil(reach / c))
    axis = np.arange(-span, span + 1)
    uu, vv, ww = np.meshgrid(axis, axis, axis, indexing="ij")
    ids = np.column_stack([uu.ravel(), vv.ravel(), ww.ravel()])
    centers = cell_centers(ids, frame)
    keep = np.all(np.abs(centers - np.asarray(frame.sink, dtype=float)) <= reach, axis=1)
    return cKDTree(centers[keep]), ids[keep]


def cell_id_accuracy(
    n_points: int,
    frame: PartitionFrame,
    extent: float = 20.0,
    seed: int = 0,
    chunk: int = 100_000,
    baseline: str = "sequential",
) -> CellIdAccuracy:
    """Compare computed ids with the exhaustively nearest center.

    Points are uniform in a cube of side ``extent * r_t`` around the sink;
    every chunk draws from its own substream of ``seed``.
    """
    _check_frame(frame)
    half = extent * frame.r_t / 2
    tree, ids = _center_index(frame, half)
    n_chunks = max(1, math.ceil(n_points / chunk))
    streams = np.random.SeedSequence(seed).spawn(n_chunks)
    sink = np.asarray(frame.sink, dtype=float)
    report = CellIdAccuracy()
    remaining = n_points
    for stream in streams:
        size = min(chunk, remaining)
        remaining -= size
        rng = np.random.default_rng(stream)
        pts = sink + rng.uniform(-half, half, size=(size, 3))
        _, nearest = tree.query(pts)
        truth = ids[nearest]
        computed = locate_cells(pts, frame)
        rounded = nearest_integer_cells(pts, frame, baseline)
        report.points += size
        report.algorithm_mismatches += int(np.count_nonzero(np.any(computed != truth, axis=1)))
        report.baseline_mismatches += int(np.count_nonzero(np.any(rounded != truth, axis=1)))
    if report.algorithm_mismatches:
        logger.warning(
            "Cell-id algorithm disagreed with the nearest center on %d of %d points",
            report.algorithm_mismatches, report.points,
        )
    return report
