"""Energy ratios of the hierarchical models, relative to TO."""

from __future__ import annotations

import math

from UWCell.geometry import DomainError, connectivity_threshold, volumetric_quotient
from UWCell.models import BASE_SHAPES, CellShape, EnergyReport


def _check_exponent(exponent: float) -> None:
    if exponent < 1:
        raise DomainError(f"Path-loss exponent must be at least 1, got {exponent}")


def hop_count(distance: float, r_bb: float) -> int:
    """Transmissions needed to carry a packet ``distance`` with hops of ``r_bb``."""
    if distance < 0 or r_bb <= 0:
        raise DomainError(f"Need distance >= 0 and r_bb > 0, got {distance}, {r_bb}")
    return math.ceil(distance / r_bb)


def hop_estimate(distance: float, r_bb: float) -> float:
    if distance < 0 or r_bb <= 0:
        raise DomainError(f"Need distance >= 0 and r_bb > 0, got {distance}, {r_bb}")
    return distance / r_bb


def spacing_ratio(model: CellShape) -> float:
    """Backbone spacing of ``model`` over TO spacing at the same cell radius."""
    return connectivity_threshold(model) / connectivity_threshold(CellShape.TO)


def per_packet_ratio(model: CellShape, exponent: float = 2.0) -> float:
    """Energy to carry one packet a fixed distance, relative to TO.

    Per-hop power grows as range**exponent while the hop count falls as
    1/range, so the ratio is spacing_ratio**(exponent - 1).
    """
    _check_exponent(exponent)
    return spacing_ratio(model) ** (exponent - 1)


def network_ratio(model: CellShape, exponent: float = 2.0) -> float:
    """Energy of the whole backbone per aggregated report, relative to TO."""
    cells = volumetric_quotient(CellShape.TO) / volumetric_quotient(model)
    return per_packet_ratio(model, exponent) * cells


def per_node_ratio(model: CellShape, exponent: float = 2.0) -> float:
    _check_exponent(exponent)
    return spacing_ratio(model) ** exponent


def energy_table(exponent: float = 2.0) -> list[EnergyReport]:
    return [
        EnergyReport(
            model=shape,
            per_packet_ratio=per_packet_ratio(shape, exponent),
            network_ratio=network_ratio(shape, exponent),
            per_node_ratio=per_node_ratio(shape, exponent),
        )
        for shape in BASE_SHAPES
    ]
