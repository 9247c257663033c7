"""Tests for placement module."""

import math

import networkx as nx
import numpy as np
import pytest

from UWCell.geometry import DomainError, connectivity_threshold, shape_constants
from UWCell.models import (
    BASE_SHAPES,
    STRIP,
    BackboneParams,
    CellShape,
    Point3,
    Region,
)
from UWCell.placement import (
    HP_CROSSOVER,
    TO_CROSSOVER,
    adjusted_cell,
    adjusted_radius,
    adjusted_volume,
    descriptor_volume,
    estimate_node_count,
    generate_lattice,
    generate_strip_placement,
    model_crossover,
    placement_rows,
    select_best_model,
    standard_cell,
    strip_auxiliary_nodes,
    strip_geometry,
    with_auxiliary,
)
from UWCell.verify import build_backbone_graph, k_connectivity

STRIP_REGION = Region(Point3(0, 0, 0), Point3(4, 4, 3))


def _sorted_distances_from_origin(shape: CellShape) -> np.ndarray:
    placement = generate_lattice(shape, 1.0, Region.cube(4.0))
    d = np.linalg.norm(placement.points, axis=1)
    return np.sort(d[d > 1e-12])


class TestAdjustedRadius:
    def test_to_connectivity_limited(self):
        r = adjusted_radius(CellShape.TO, BackboneParams(1.0, 1.0))
        assert r == pytest.approx(math.sqrt(5) / 4, abs=1e-12)

    def test_to_coverage_limited(self):
        assert adjusted_radius(CellShape.TO, BackboneParams(2.0, 1.0)) == 1.0

    def test_cb_at_threshold(self):
        r = adjusted_radius(CellShape.CB, BackboneParams(2 / math.sqrt(3), 1.0))
        assert r == pytest.approx(1.0, abs=1e-12)

    def test_rd(self):
        assert adjusted_radius(CellShape.RD, BackboneParams(1.0, 1.0)) == pytest.approx(1 / math.sqrt(2))

    def test_hp_descriptor(self):
        cell = adjusted_cell(CellShape.HP, BackboneParams(1.3, 1.0))
        assert cell.side == pytest.approx(1.3 / math.sqrt(3))
        assert cell.height == pytest.approx(1.3)
        assert cell.radius == pytest.approx(math.hypot(cell.side, cell.height / 2))

    def test_hp_coverage_limited_height(self):
        cell = adjusted_cell(CellShape.HP, BackboneParams(3.0, 1.0))
        assert cell.side == pytest.approx(math.sqrt(2 / 3))
        assert cell.height == pytest.approx(2 / math.sqrt(3))

    def test_nonpositive_ranges(self):
        with pytest.raises(DomainError, match="positive"):
            adjusted_radius(CellShape.TO, BackboneParams(0.0, 1.0))
        with pytest.raises(DomainError):
            adjusted_radius(CellShape.CB, BackboneParams(1.0, -1.0))


class TestSelectBestModel:
    def test_examples(self):
        assert select_best_model(2.0).shape is CellShape.TO
        assert select_best_model(1.3).shape is CellShape.HP
        assert select_best_model(1.0).shape is CellShape.CB

    def test_radius_attached(self):
        cell = select_best_model(2.0, r_bs=3.0)
        assert cell.radius == pytest.approx(3.0)

    def test_agrees_with_volume_argmax(self):
        for ratio in np.linspace(0.8, 2.5, 200):
            chosen = descriptor_volume(select_best_model(float(ratio)))
            best = max(adjusted_volume(s, float(ratio)) for s in BASE_SHAPES)
            assert chosen >= best - 1e-9

    def test_hp_wins_tie_with_rd(self):
        assert adjusted_volume(CellShape.HP, 1.5) == pytest.approx(adjusted_volume(CellShape.RD, 1.5))
        assert select_best_model(1.5).shape is CellShape.HP

    def test_nonpositive_ratio(self):
        with pytest.raises(DomainError):
            select_best_model(0.0)


class TestModelCrossover:
    def test_cb_to_hp(self):
        ratio = model_crossover(CellShape.CB, CellShape.HP, 1.16, 1.3)
        assert ratio == pytest.approx(1.211414, abs=1e-4)
        assert ratio == pytest.approx(HP_CROSSOVER, abs=1e-8)

    def test_hp_to_to(self):
        ratio = model_crossover(CellShape.HP, CellShape.TO, 1.45, 1.75)
        assert ratio == pytest.approx(1.587401, abs=1e-4)
        assert ratio == pytest.approx(TO_CROSSOVER, abs=1e-8)

    def test_no_sign_change(self):
        with pytest.raises(DomainError, match="do not cross"):
            model_crossover(CellShape.CB, CellShape.TO, 2.0, 2.5)


class TestLatticeGeneration:
    def test_to_coordinates(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(2.0))
        rows = {tuple(i): p for i, p in zip(placement.indices.tolist(), placement.points)}
        assert np.allclose(rows[(0, 0, 0)], [0, 0, 0])
        assert np.allclose(rows[(1, 0, 0)], [4 / math.sqrt(5), 0, 0])
        assert np.allclose(rows[(0, 0, 1)], [2 / math.sqrt(5)] * 3)

    def test_reference_offset(self):
        ref = Point3(1.0, -2.0, 0.5)
        region = Region.cube(3.0, center=ref)
        placement = generate_lattice(CellShape.RD, 1.0, region, ref)
        assert np.any(np.all(np.isclose(placement.points, ref), axis=1))

    def test_points_inside_region(self):
        region = Region(Point3(0, 0, 0), Point3(5, 4, 3))
        for shape in BASE_SHAPES:
            placement = generate_lattice(shape, 0.7, region)
            assert placement.size > 0
            assert region.contains(placement.points, tol=1e-9).all()

    def test_points_distinct(self):
        placement = generate_lattice(CellShape.HP, 1.0, Region.cube(3.0))
        assert len(np.unique(np.round(placement.points, 9), axis=0)) == placement.size

    def test_order_is_w_v_u(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(3.0))
        keys = [(w, v, u) for u, v, w in placement.indices.tolist()]
        assert keys == sorted(keys)

    def test_tiny_region_is_empty(self):
        region = Region.cube(0.01, center=Point3(0.3, 0.3, 0.3))
        placement = generate_lattice(CellShape.CB, 1.0, region)
        assert placement.size == 0
        assert placement.points.shape == (0, 3)

    def test_invalid_region(self):
        with pytest.raises(DomainError, match="below"):
            generate_lattice(CellShape.TO, 1.0, Region(Point3(1, 1, 1), Point3(0, 0, 0)))

    def test_standard_hp_cell(self):
        cell = standard_cell(CellShape.HP, 1.0)
        assert cell.height == pytest.approx(cell.side * math.sqrt(2))
        assert math.hypot(cell.side, cell.height / 2) == pytest.approx(1.0)


class TestFaceNeighborInvariant:
    def test_face_neighbors_at_threshold(self):
        for shape in BASE_SHAPES:
            d = _sorted_distances_from_origin(shape)
            n = shape_constants(shape).face_neighbors
            assert d[n - 1] == pytest.approx(connectivity_threshold(shape), abs=1e-9)
            assert d[n] > connectivity_threshold(shape) + 1e-6

    def test_nearest_neighbor_for_cb_and_rd(self):
        for shape in (CellShape.CB, CellShape.RD):
            d = _sorted_distances_from_origin(shape)
            assert d[0] == pytest.approx(connectivity_threshold(shape), abs=1e-9)

    def test_to_two_shells(self):
        d = _sorted_distances_from_origin(CellShape.TO)
        assert np.allclose(d[:8], 2 * math.sqrt(3) / math.sqrt(5))
        assert np.allclose(d[8:14], 4 / math.sqrt(5))

    def test_node_count_estimate(self):
        region = Region.cube(20.0)
        placement = generate_lattice(CellShape.TO, 1.0, region)
        estimate = estimate_node_count(standard_cell(CellShape.TO, 1.0), region.volume)
        assert placement.size == pytest.approx(estimate, rel=0.05)


class TestStripPlacement:
    def test_geometry_unit_ranges(self):
        alpha, beta, gamma = strip_geometry(BackboneParams(1.0, 1.0))
        assert alpha == 1.0
        assert beta == pytest.approx(1.93649, abs=1e-5)
        assert gamma == pytest.approx(1.45774, abs=1e-5)

    def test_geometry_long_backbone_range(self):
        alpha, beta, _ = strip_geometry(BackboneParams(100.0, 1.0))
        assert alpha == pytest.approx(4 / math.sqrt(5))
        assert beta == pytest.approx(4 / math.sqrt(5))

    def test_annotations(self):
        placement = generate_strip_placement(BackboneParams(1.0, 1.0), Region.cube(2.0))
        assert placement.model == STRIP
        assert placement.label == "strip"
        assert placement.annotations["beta"] == pytest.approx(1.93649, abs=1e-5)

    def test_degenerates_to_to_density(self):
        region = Region.cube(10.3)
        strip = generate_strip_placement(BackboneParams(2.0, 1.0), region)
        to = generate_lattice(CellShape.TO, 1.0, region)
        assert strip.size == pytest.approx(to.size, rel=0.02)

    def test_no_auxiliary_when_strips_linked(self):
        placement = generate_strip_placement(BackboneParams(1.0, 1.0), Region.cube(2.0))
        assert strip_auxiliary_nodes(placement, 2.0) == []

    def test_auxiliary_nodes_connect_strips(self):
        region = Region(Point3(0, 0, 0), Point3(4, 4, 3))
        placement = generate_strip_placement(BackboneParams(1.0, 1.0), region)
        assert placement.size == 46
        assert not k_connectivity(build_backbone_graph(placement, 1.0), 1)

        relays = strip_auxiliary_nodes(placement, 1.0)
        assert relays
        joined = with_auxiliary(placement, relays)
        assert joined.size == 46 + len(relays)
        assert k_connectivity(build_backbone_graph(joined, 1.0), 1)

    def test_relays_connect_strips_across_ranges(self):
        for r_bb in np.linspace(0.3, 1.2, 19):
            r_bb = float(r_bb)
            placement = generate_strip_placement(BackboneParams(r_bb, 1.0), STRIP_REGION)
            strips = {(v, w) for _, v, w in placement.indices.tolist()}
            bare = build_backbone_graph(placement, r_bb).graph
            assert nx.number_connected_components(bare) == len(strips), r_bb

            joined = with_auxiliary(placement, strip_auxiliary_nodes(placement, r_bb))
            assert nx.is_connected(build_backbone_graph(joined, r_bb).graph), r_bb

            ends = with_auxiliary(placement, strip_auxiliary_nodes(placement, r_bb, connectivity=2))
            assert nx.is_biconnected(build_backbone_graph(ends, r_bb).graph), r_bb

    def test_endpoint_relays_give_two_connectivity(self):
        placement = generate_strip_placement(BackboneParams(1.0, 1.0), STRIP_REGION)
        relays = strip_auxiliary_nodes(placement, 1.0, connectivity=2)
        assert relays
        joined = with_auxiliary(placement, relays)
        assert k_connectivity(build_backbone_graph(joined, 1.0), 2)

    def test_unknown_strip_connectivity(self):
        placement = generate_strip_placement(BackboneParams(1.0, 1.0), STRIP_REGION)
        with pytest.raises(DomainError, match="1 or 2"):
            strip_auxiliary_nodes(placement, 1.0, connectivity=3)

    def test_auxiliary_needs_strip_placement(self):
        placement = generate_lattice(CellShape.TO, 1.0, Region.cube(2.0))
        with pytest.raises(DomainError, match="strip"):
            strip_auxiliary_nodes(placement, 1.0)

    def test_rows_leave_relay_indices_empty(self):
        region = Region(Point3(0, 0, 0), Point3(4, 4, 3))
        placement = generate_strip_placement(BackboneParams(1.0, 1.0), region)
        joined = with_auxiliary(placement, strip_auxiliary_nodes(placement, 1.0))
        rows = placement_rows(joined)
        assert len(rows) == joined.size
        assert rows[0][:3] == (0, 0, 0)
        assert rows[-1][:3] == (None, None, None)
