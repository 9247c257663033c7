"""Backbone-node placement for the hierarchical models."""

from __future__ import annotations

import dataclasses
import logging
import math
from collections import defaultdict

import numpy as np

from UWCell.geometry import SQRT2, SQRT3, SQRT5, DomainError, cell_volume, shape_constants
from UWCell.lattices import StripLattice, lattice_for
from UWCell.models import (
    ORIGIN,
    STRIP,
    BackboneParams,
    CellDescriptor,
    CellShape,
    Placement,
    Point3,
    Region,
)
from UWCell.verify import EDGE_TOL

logger = logging.getLogger(__name__)

# Ratios r_bb/r_bs where the best Adjusted model changes.
HP_CROSSOVER = (16 / 9) ** (1 / 3)  # CB -> HP, 1.211414
TO_CROSSOVER = 4 ** (1 / 3)  # HP -> TO, 1.587401


def _check_params(params: BackboneParams) -> None:
    if params.r_bb <= 0 or params.r_bs <= 0:
        raise DomainError(
            f"Ranges must be positive, got r_bb={params.r_bb}, r_bs={params.r_bs}"
        )


def _check_region(region: Region) -> None:
    if not region.is_valid():
        raise DomainError(
            f"Region max corner {region.max_corner} lies below min corner {region.min_corner}"
        )


# ---------------------------------------------------------------------------
# Cells
# ---------------------------------------------------------------------------

def standard_cell(shape: CellShape, radius: float) -> CellDescriptor:
    """Unadjusted cell of circumradius ``radius``.

    HP uses the volume-optimal prism (h = a*sqrt2, R = a*sqrt(3/2)).
    """
    shape_constants(shape)
    if radius <= 0:
        raise DomainError(f"Cell radius must be positive, got {radius}")
    if shape is CellShape.HP:
        side = radius * math.sqrt(2 / 3)
        return CellDescriptor(shape, radius, side=side, height=side * SQRT2)
    return CellDescriptor(shape, radius)


def adjusted_cell(shape: CellShape, params: BackboneParams) -> CellDescriptor:
    """Largest cell of ``shape`` that keeps both coverage and connectivity."""
    _check_params(params)
    r_bb, r_bs = params.r_bb, params.r_bs
    if shape is CellShape.CB:
        return CellDescriptor(shape, min(SQRT3 * r_bb / 2, r_bs))
    if shape is CellShape.RD:
        return CellDescriptor(shape, min(r_bb / SQRT2, r_bs))
    if shape is CellShape.TO:
        return CellDescriptor(shape, min(r_bb * SQRT5 / 4, r_bs))
    shape_constants(shape)
    side = min(r_bb / SQRT3, r_bs * SQRT2 / SQRT3)
    height = min(2 * math.sqrt(max(r_bs**2 - side**2, 0.0)), r_bb)
    return CellDescriptor(shape, math.hypot(side, height / 2), side=side, height=height)


def adjusted_radius(shape: CellShape, params: BackboneParams) -> float:
    """Circumradius of the Adjusted cell (for HP, of the (a, h) prism)."""
    return adjusted_cell(shape, params).radius


def descriptor_volume(cell: CellDescriptor) -> float:
    if cell.shape is CellShape.HP and cell.side is not None and cell.height is not None:
        return 3 * SQRT3 / 2 * cell.side**2 * cell.height
    return cell_volume(cell.shape, cell.radius)


def adjusted_volume(shape: CellShape, ratio: float, r_bs: float = 1.0) -> float:
    return descriptor_volume(adjusted_cell(shape, BackboneParams(ratio * r_bs, r_bs)))


def select_best_model(ratio: float, r_bs: float = 1.0) -> CellDescriptor:
    """Pick the Adjusted model with the largest cell for r_bb/r_bs = ``ratio``.

    Returns the Adjusted cell, so the radius travels with the choice.
    """
    if ratio <= 0:
        raise DomainError(f"Range ratio must be positive, got {ratio}")
    if ratio >= TO_CROSSOVER:
        shape = CellShape.TO
    elif ratio >= HP_CROSSOVER:
        shape = CellShape.HP
    else:
        shape = CellShape.CB
    cell = adjusted_cell(shape, BackboneParams(ratio * r_bs, r_bs))
    logger.info("Ratio %.6f -> Adjusted %s (R=%.6g)", ratio, shape.value, cell.radius)
    return cell


def model_crossover(
    shape_a: CellShape,
    shape_b: CellShape,
    lo: float,
    hi: float,
    tol: float = 1e-10,
) -> float:
    """Bisect for the ratio where Adjusted ``shape_b`` overtakes ``shape_a``.

    The volume difference must change sign exactly once on [lo, hi].
    """

    def gap(ratio: float) -> float:
        return adjusted_volume(shape_b, ratio) - adjusted_volume(shape_a, ratio)

    g_lo, g_hi = gap(lo), gap(hi)
    if g_lo * g_hi > 0:
        raise DomainError(
            f"{shape_a.value}/{shape_b.value} volumes do not cross on [{lo}, {hi}]"
        )
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if (gap(mid) > 0) == (g_hi > 0):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def estimate_node_count(cell: CellDescriptor, volume: float) -> float:
    """Backbone nodes needed for ``volume`` when boundaries are ignored."""
    return volume / descriptor_volume(cell)


# ---------------------------------------------------------------------------
# Lattice placements
# ---------------------------------------------------------------------------

def generate_placement(
    cell: CellDescriptor, region: Region, reference: Point3 = ORIGIN
) -> Placement:
    _check_region(region)
    if cell.radius <= 0:
        raise DomainError(f"Cell radius must be positive, got {cell.radius}")
    lattice = lattice_for(cell)
    indices, points = lattice.fill(region, reference)
    logger.info("%s placement: %d nodes", lattice.label, len(points))
    return Placement(
        model=cell.shape,
        cell_radius=cell.radius,
        points=points,
        indices=indices,
        reference=Point3(*reference),
        region=region,
    )


def generate_lattice(
    shape: CellShape, radius: float, region: Region, reference: Point3 = ORIGIN
) -> Placement:
    """Place one backbone node per cell of ``shape`` with circumradius ``radius``."""
    return generate_placement(standard_cell(shape, radius), region, reference)


# ---------------------------------------------------------------------------
# Strip placement
# ---------------------------------------------------------------------------

def strip_geometry(params: BackboneParams) -> tuple[float, float, float]:
    """Return (alpha, beta, gamma) for the strip placement."""
    _check_params(params)
    alpha = min(params.r_bb, 4 * params.r_bs / SQRT5)
    beta = 2 * math.sqrt(params.r_bs**2 - (alpha / 4) ** 2)
    gamma = math.sqrt(beta**2 / 2 + alpha**2 / 4)
    return alpha, beta, gamma


def generate_strip_placement(
    params: BackboneParams, region: Region, reference: Point3 = ORIGIN
) -> Placement:
    _check_region(region)
    alpha, beta, gamma = strip_geometry(params)
    indices, points = StripLattice(alpha, beta).fill(region, reference)
    logger.info(
        "strip placement: %d nodes (alpha=%.6g beta=%.6g gamma=%.6g)",
        len(points), alpha, beta, gamma,
    )
    return Placement(
        model=STRIP,
        cell_radius=params.r_bs,
        points=points,
        indices=indices,
        reference=Point3(*reference),
        region=region,
        annotations={"alpha": alpha, "beta": beta, "gamma": gamma},
    )


def _relay_chain(a: np.ndarray, b: np.ndarray, r_bb: float) -> list[Point3]:
    """Evenly spaced relays from ``a`` to ``b``, at most ``r_bb`` apart."""
    dist = float(np.linalg.norm(b - a))
    if dist <= r_bb * (1 + EDGE_TOL):
        return []
    n = math.ceil(dist / r_bb) - 1
    return [Point3(*(a + t * (b - a)).tolist()) for t in np.arange(1, n + 1) / (n + 1)]


def strip_auxiliary_nodes(
    placement: Placement, r_bb: float, connectivity: int = 1
) -> list[Point3]:
    """Relay nodes that join every pair of adjacent strips.

    Strips (v, w) and (v', w') are adjacent when they share a plane and
    v' = v + 1, or sit in consecutive planes with v' in {v, v - 1}.

    With ``connectivity=1`` the node of each strip nearest the region center
    is linked to its closest node on the other strip. With ``connectivity=2``
    the two strip endpoints (least and greatest x) are linked to the matching
    endpoints of the other strip, so every pair of adjacent strips closes a
    cycle along the region boundary. Each link is a chain of relays at most
    ``r_bb`` apart.
    """
    if placement.model != STRIP:
        raise DomainError(f"Auxiliary nodes apply to strip placements, not {placement.label}")
    if r_bb <= 0:
        raise DomainError(f"r_bb must be positive, got {r_bb}")
    if connectivity not in (1, 2):
        raise DomainError(f"Strip connectivity must be 1 or 2, got {connectivity}")
    beta = placement.annotations["beta"]
    gamma = placement.annotations["gamma"]
    reach = r_bb * (1 + EDGE_TOL)
    if connectivity == 1 and (beta <= reach or gamma <= reach):
        return []

    strips: dict[tuple[int, int], np.ndarray] = {}
    rows_by_strip: dict[tuple[int, int], list[int]] = defaultdict(list)
    for row, (_, v, w) in enumerate(placement.indices.tolist()):
        rows_by_strip[(v, w)].append(row)
    for key, rows in rows_by_strip.items():
        pts = placement.points[rows]
        strips[key] = pts[np.argsort(pts[:, 0], kind="stable")]

    center = np.asarray(placement.region.center, dtype=float)
    relays: list[Point3] = []
    for (v, w), pts in sorted(strips.items(), key=lambda item: (item[0][1], item[0][0])):
        anchor = pts[np.argmin(np.linalg.norm(pts - center, axis=1))]
        for other in ((v + 1, w), (v, w + 1), (v - 1, w + 1)):
            if other not in strips:
                continue
            partner_pts = strips[other]
            if connectivity == 1:
                partner = partner_pts[np.argmin(np.linalg.norm(partner_pts - anchor, axis=1))]
                relays.extend(_relay_chain(anchor, partner, r_bb))
            else:
                relays.extend(_relay_chain(pts[0], partner_pts[0], r_bb))
                relays.extend(_relay_chain(pts[-1], partner_pts[-1], r_bb))
    logger.info("Added %d auxiliary strip nodes (connectivity %d)", len(relays), connectivity)
    return relays


def with_auxiliary(placement: Placement, relays: list[Point3]) -> Placement:
    aux = np.asarray(relays, dtype=float).reshape(-1, 3)
    return dataclasses.replace(placement, auxiliary=aux)


def placement_rows(placement: Placement) -> list[tuple]:
    """Rows (u, v, w, x, y, z); auxiliary nodes carry no indices."""
    rows: list[tuple] = [
        (*map(int, idx), *map(float, pt))
        for idx, pt in zip(placement.indices, placement.points)
    ]
    rows.extend((None, None, None, *map(float, pt)) for pt in placement.auxiliary)
    return rows
