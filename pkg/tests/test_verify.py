"""Tests for verify module."""

import math

import networkx as nx
import numpy as np
import pytest

from UWCell.geometry import DomainError
from UWCell.models import CellShape, CoverageReport, Placement, Point3, Region
from UWCell.placement import generate_lattice, generate_placement, select_best_model
from UWCell.verify import (
    MAX_ORACLE_NODES,
    OracleScaleError,
    build_backbone_graph,
    grid_axes,
    k_connectivity,
    locate_degree_jump,
    verify_coverage,
)


def _manual_placement(points, region: Region) -> Placement:
    pts = np.asarray(points, dtype=float).reshape(-1, 3)
    return Placement(
        model=CellShape.TO,
        cell_radius=1.0,
        points=pts,
        indices=np.zeros((len(pts), 3), dtype=int),
        reference=Point3(0.0, 0.0, 0.0),
        region=region,
    )


class TestGrid:
    def test_axes_include_both_ends(self):
        xs, ys, zs = grid_axes(Region(Point3(0, 0, 0), Point3(1, 2, 0)), 0.25)
        assert len(xs) == 5
        assert len(ys) == 9
        assert len(zs) == 1
        assert xs[-1] == pytest.approx(1.0)

    def test_axes_stop_before_max(self):
        (xs, _, _) = grid_axes(Region(Point3(0, 0, 0), Point3(1, 1, 1)), 0.3)
        assert xs[-1] == pytest.approx(0.9)


class TestCoverage:
    def test_adjusted_models_cover_region(self):
        region = Region.cube(1.0)
        for ratio in np.linspace(1.0, 2.5, 20):
            cell = select_best_model(float(ratio))
            placement = generate_placement(cell, region.inflated(cell.radius))
            report = verify_coverage(placement, 1.0, region, 1.0 / 20)
            assert report.coverage_fraction == 1.0, f"ratio {ratio}"
            assert report.worst_gap <= cell.radius + 1e-9

    def test_to_lattice_at_sensor_range(self):
        region = Region.cube(2.0)
        placement = generate_lattice(CellShape.TO, 1.0, region.inflated(1.0))
        report = verify_coverage(placement, 1.0, region, 0.1, workers=2)
        assert report.coverage_fraction == 1.0
        assert report.samples_total == 41**3

    def test_sparse_lattice_leaves_gaps(self):
        region = Region.cube(2.0)
        placement = generate_lattice(CellShape.TO, 1.5, region.inflated(1.5))
        report = verify_coverage(placement, 1.0, region, 0.1)
        assert report.coverage_fraction < 1.0
        assert report.worst_gap > 1.0

    def test_empty_placement(self):
        region = Region.cube(1.0)
        report = verify_coverage(_manual_placement([], region), 1.0, region, 0.5)
        assert report.samples_total == 125
        assert report.samples_covered == 0
        assert report.coverage_fraction == 0.0
        assert math.isinf(report.worst_gap)

    def test_single_node_covers_small_box(self):
        region = Region.cube(1.0)
        report = verify_coverage(_manual_placement([[0, 0, 0]], region), math.sqrt(3), region, 0.25)
        assert report.coverage_fraction == 1.0
        assert report.worst_gap == pytest.approx(math.sqrt(3))

    def test_invalid_step(self):
        region = Region.cube(1.0)
        with pytest.raises(DomainError, match="grid_step"):
            verify_coverage(_manual_placement([[0, 0, 0]], region), 1.0, region, 0.0)


class TestCoverageReport:
    def test_merge_sums_counts(self):
        a = CoverageReport(10, 9, 1.2)
        b = CoverageReport(5, 5, 0.7)
        merged = a.merge(b)
        assert merged.samples_total == 15
        assert merged.samples_covered == 14
        assert merged.worst_gap == 1.2

    def test_merge_with_empty(self):
        a = CoverageReport(10, 9, 1.2)
        assert CoverageReport().merge(a) == a
        assert a.merge(CoverageReport()) == a

    def test_to_dict_infinite_gap(self):
        d = CoverageReport(8, 0).to_dict()
        assert d["worst_gap"] == "inf"
        assert d["coverage_fraction"] == 0.0


class TestBackboneGraph:
    def test_threshold_is_inclusive(self):
        region = Region.cube(2.0)
        graph = build_backbone_graph(_manual_placement([[0, 0, 0], [1.5, 0, 0]], region), 1.5)
        assert graph.graph.number_of_edges() == 1

    def test_no_self_loops(self):
        placement = generate_lattice(CellShape.CB, 1.0, Region.cube(2.0))
        graph = build_backbone_graph(placement, 2.0)
        assert nx.number_of_selfloops(graph.graph) == 0

    def test_to_degree_regimes(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(6.0))
        assert build_backbone_graph(placement, 1.5).interior_degree_mode == 0
        assert build_backbone_graph(placement, 1.6).interior_degree_mode == 8
        assert build_backbone_graph(placement, 1.8).interior_degree_mode == 14

    def test_degree_histogram(self):
        placement = generate_lattice(CellShape.CB, 1.0, Region.cube(1.0))
        graph = build_backbone_graph(placement, 1.2)
        assert sum(graph.degree_histogram.values()) == placement.size

    def test_nonpositive_range(self):
        with pytest.raises(DomainError):
            build_backbone_graph(generate_lattice(CellShape.CB, 1.0, Region.cube(1.0)), 0.0)


class TestDegreeJumps:
    def test_to_jumps(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(6.0))
        first = locate_degree_jump(placement, 1.5, 1.7)
        second = locate_degree_jump(placement, 1.7, 1.85)
        assert first == pytest.approx(2 * math.sqrt(3) / math.sqrt(5), abs=1e-4)
        assert second == pytest.approx(4 / math.sqrt(5), abs=1e-4)

    def test_no_jump_in_bracket(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(6.0))
        with pytest.raises(DomainError, match="does not change"):
            locate_degree_jump(placement, 1.6, 1.7)


class TestKConnectivity:
    def test_complete_graph(self):
        k3 = nx.complete_graph(3)
        assert k_connectivity(k3, 1)
        assert k_connectivity(k3, 2)
        assert not k_connectivity(k3, 3)

    def test_path_graph(self):
        path = nx.path_graph(4)
        assert k_connectivity(path, 1)
        assert not k_connectivity(path, 2)

    def test_tiny_graphs(self):
        assert not k_connectivity(nx.empty_graph(1), 1)
        assert not k_connectivity(nx.empty_graph(0), 1)

    def test_to_lattice_is_well_connected(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(2.5))
        graph = build_backbone_graph(placement, 1.8)
        assert k_connectivity(graph, 3)

    def test_invalid_k(self):
        with pytest.raises(DomainError, match="at least 1"):
            k_connectivity(nx.complete_graph(3), 0)

    def test_oversized_graph(self):
        with pytest.raises(OracleScaleError, match="500"):
            k_connectivity(nx.empty_graph(MAX_ORACLE_NODES + 1), 1)
