"""k-coverage of GAF-style sleep scheduling with one active node per cell.

The number of active nodes inside a sensing sphere is modeled as Poisson
with mean ``lambda_k``, the sphere volume over the cell volume of the
grid that guarantees k-coverage.
"""

from __future__ import annotations

import logging
import math

import numpy as np
from scipy.spatial import cKDTree
from scipy.stats import poisson

from UWCell.geometry import DomainError, sphere_volume
from UWCell.models import KCoverageRow

logger = logging.getLogger(__name__)

CONVENTIONS = ("poisson", "published")

# Box side of the Monte Carlo torus, in sensing ranges.
TORUS_SIDE = 10.0


def _check(k: int, dimension: int) -> None:
    if k < 1:
        raise DomainError(f"k must be at least 1, got {k}")
    if dimension not in (2, 3):
        raise DomainError(f"dimension must be 2 or 3, got {dimension}")


def _band(k: int, dimension: int) -> int:
    """Cells per sensing disc (2D) or sphere (3D) come in bands of 4 or 8."""
    return math.ceil(k / 4) if dimension == 2 else math.ceil(k / 8)


def lambda_k(k: int, dimension: int = 3) -> float:
    _check(k, dimension)
    if dimension == 2:
        return 8 * math.pi * _band(k, 2) / (3 * math.sqrt(3))
    return 5 * math.sqrt(5) * math.pi * _band(k, 3) / 3


def coverage_probability(k: int, dimension: int = 3, convention: str = "poisson") -> float:
    """P(K >= k) for K ~ Poisson(lambda_k).

    ``published`` drops the i = 0 term from the subtracted sum, which is
    the form common 2D k-coverage tables are tabulated in.
    """
    lam = lambda_k(k, dimension)
    if convention == "poisson":
        return float(poisson.sf(k - 1, lam))
    if convention == "published":
        return float(1.0 - (poisson.cdf(k - 1, lam) - poisson.pmf(0, lam)))
    raise DomainError(f"Unknown convention {convention!r}; use one of {CONVENTIONS}")


def overhead_vs_optimal(k: int, dimension: int = 3) -> float:
    """Active nodes used relative to an optimal k-coverage schedule."""
    _check(k, dimension)
    per_band = 4 if dimension == 2 else 8
    return per_band * _band(k, dimension) / k


def kcoverage_table(
    k_max: int, dimension: int = 3, convention: str = "poisson"
) -> list[KCoverageRow]:
    return [
        KCoverageRow(
            k=k,
            lambda_k=lambda_k(k, dimension),
            p_geq_k=coverage_probability(k, dimension, convention),
            overhead=overhead_vs_optimal(k, dimension),
        )
        for k in range(1, k_max + 1)
    ]


def poisson_sum_distribution(lambda1: float, lambda2: float, k: int) -> tuple[float, float]:
    """Mass at ``k`` of K1 + K2, directly and by explicit convolution."""
    if lambda1 < 0 or lambda2 < 0 or k < 0:
        raise DomainError(f"Rates and k must be nonnegative, got {lambda1}, {lambda2}, {k}")
    direct = float(poisson.pmf(k, lambda1 + lambda2))
    i = np.arange(k + 1)
    convolved = float(np.sum(poisson.pmf(k - i, lambda1) * poisson.pmf(i, lambda2)))
    return direct, convolved


def _ball_volume(r: float, dimension: int) -> float:
    return math.pi * r**2 if dimension == 2 else sphere_volume(r)


def cell_radius_for_k_coverage(k: int, r_s: float, dimension: int = 3) -> float:
    """Circumradius of the GAF cell (hexagon or TO) whose grid gives lambda_k."""
    _check(k, dimension)
    if r_s <= 0:
        raise DomainError(f"r_s must be positive, got {r_s}")
    if dimension == 2:
        return r_s / (2 * math.sqrt(_band(k, 2)))
    return r_s / (2 * _band(k, 3) ** (1 / 3))


def gaf_active_density(k: int, dimension: int = 3, r_s: float = 1.0) -> float:
    """Active nodes per unit area or volume, one per cell."""
    if r_s <= 0:
        raise DomainError(f"r_s must be positive, got {r_s}")
    return lambda_k(k, dimension) / _ball_volume(r_s, dimension)


def monte_carlo_k_coverage(
    density: float,
    r_s: float,
    k: int,
    trials: int,
    seed: int = 0,
    dimension: int = 3,
    samples_per_field: int = 2000,
    workers: int = 1,
) -> float:
    """Fraction of random points with at least ``k`` active nodes within ``r_s``.

    Active nodes are a Poisson process of intensity ``density`` on a torus of
    side 10 r_s. A fresh field is drawn for every ``samples_per_field``
    points, each from its own substream of ``seed``.
    """
    _check(k, dimension)
    if density <= 0 or r_s <= 0 or trials <= 0 or samples_per_field <= 0:
        raise DomainError("density, r_s, trials and samples_per_field must be positive")
    side = TORUS_SIDE * r_s
    mean_nodes = density * side**dimension
    n_fields = math.ceil(trials / samples_per_field)
    covered = 0
    remaining = trials
    for stream in np.random.SeedSequence(seed).spawn(n_fields):
        size = min(samples_per_field, remaining)
        remaining -= size
        rng = np.random.default_rng(stream)
        nodes = rng.uniform(0.0, side, size=(rng.poisson(mean_nodes), dimension))
        samples = rng.uniform(0.0, side, size=(size, dimension))
        if len(nodes) == 0:
            continue
        tree = cKDTree(nodes, boxsize=side)
        counts = tree.query_ball_point(samples, r_s, return_length=True, workers=workers)
        covered += int(np.count_nonzero(counts >= k))
    logger.info(
        "Monte Carlo %dD k=%d: %d of %d samples over %d fields",
        dimension, k, covered, trials, n_fields,
    )
    return covered / trials
