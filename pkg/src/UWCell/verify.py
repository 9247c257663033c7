"""Brute-force coverage and connectivity checks for placements."""

from __future__ import annotations

import logging
import math

import networkx as nx
import numpy as np
from scipy.spatial import cKDTree

from UWCell.geometry import DomainError
from UWCell.models import BackboneGraph, CoverageReport, Placement, Region

logger = logging.getLogger(__name__)

MAX_ORACLE_NODES = 500

# Relative slack on the link range; lattice spacings equal to r_bb carry rounding error.
EDGE_TOL = 1e-9

# Interior nodes sit at least this many cell diameters inside the region.
INTERIOR_DIAMETERS = 2


class OracleScaleError(ValueError):
    """Raised when an exact graph check is requested on too large a graph."""


def grid_axes(region: Region, grid_step: float) -> list[np.ndarray]:
    """Sample positions per axis, starting at the min corner, never past the max."""
    axes = []
    for lo, hi in zip(region.min_corner, region.max_corner):
        n = int(math.floor((hi - lo) / grid_step + 1e-9)) + 1
        axes.append(lo + grid_step * np.arange(n))
    return axes


def verify_coverage(
    placement: Placement,
    r_bs: float,
    region: Region,
    grid_step: float,
    workers: int = 1,
) -> CoverageReport:
    """Sample ``region`` on a grid and measure distance to the nearest node.

    A sample is covered when some node lies within ``r_bs`` (inclusive).
    Samples are processed one z-slab at a time and the slab reports merged.
    """
    if grid_step <= 0:
        raise DomainError(f"grid_step must be positive, got {grid_step}")
    xs, ys, zs = grid_axes(region, grid_step)
    nodes = placement.all_points
    if len(nodes) == 0:
        return CoverageReport(samples_total=xs.size * ys.size * zs.size)

    tree = cKDTree(nodes)
    yy, xx = np.meshgrid(ys, xs, indexing="ij")
    plane = np.column_stack([xx.ravel(), yy.ravel(), np.zeros(xx.size)])
    report = CoverageReport()
    for z in zs:
        plane[:, 2] = z
        dist, _ = tree.query(plane, k=1, workers=workers)
        report = report.merge(
            CoverageReport(
                samples_total=int(dist.size),
                samples_covered=int(np.count_nonzero(dist <= r_bs)),
                worst_gap=float(dist.max()),
            )
        )
    if report.samples_covered < report.samples_total:
        logger.info(
            "Coverage %.6f, worst gap %.6g", report.coverage_fraction, report.worst_gap
        )
    return report


def interior_mask(placement: Placement, points: np.ndarray | None = None) -> np.ndarray:
    pts = placement.all_points if points is None else points
    margin = INTERIOR_DIAMETERS * 2 * placement.cell_radius
    return placement.region.boundary_distance(pts) >= margin


def build_backbone_graph(placement: Placement, r_bb: float) -> BackboneGraph:
    """Link every pair of backbone nodes at most ``r_bb`` apart, up to EDGE_TOL."""
    if r_bb <= 0:
        raise DomainError(f"r_bb must be positive, got {r_bb}")
    pts = placement.all_points
    graph = nx.Graph()
    graph.add_nodes_from(range(len(pts)))
    if len(pts) > 1:
        pairs = cKDTree(pts).query_pairs(r_bb * (1 + EDGE_TOL), output_type="ndarray")
        graph.add_edges_from(pairs.tolist())
    return BackboneGraph(graph=graph, points=pts, interior=interior_mask(placement, pts), r_bb=r_bb)


def k_connectivity(graph: BackboneGraph | nx.Graph, k: int) -> bool:
    """True iff removing any k - 1 nodes leaves the graph connected."""
    g = graph.graph if isinstance(graph, BackboneGraph) else graph
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    n = g.number_of_nodes()
    if n > MAX_ORACLE_NODES:
        raise OracleScaleError(
            f"k-connectivity oracle is limited to {MAX_ORACLE_NODES} nodes, got {n}"
        )
    if n < 2:
        return False
    if k == 1:
        return nx.is_connected(g)
    return nx.node_connectivity(g) >= k


def _interior_degree_mode(
    tree: cKDTree, points: np.ndarray, r_bb: float
) -> int | None:
    if len(points) == 0:
        return None
    degrees = tree.query_ball_point(points, r_bb, return_length=True) - 1
    return int(np.argmax(np.bincount(degrees)))


def locate_degree_jump(
    placement: Placement, lo: float, hi: float, tol: float = 1e-6
) -> float:
    """Bisect for the r_bb/R ratio where the interior degree mode changes.

    ``lo`` and ``hi`` must bracket exactly one jump.
    """
    pts = placement.all_points
    tree = cKDTree(pts)
    inner = pts[interior_mask(placement, pts)]
    radius = placement.cell_radius

    def mode(ratio: float) -> int | None:
        return _interior_degree_mode(tree, inner, ratio * radius)

    base = mode(lo)
    if base == mode(hi):
        raise DomainError(f"Interior degree does not change on [{lo}, {hi}]")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if mode(mid) == base:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
