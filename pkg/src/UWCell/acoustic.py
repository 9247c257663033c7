"""Frequency reuse and interference in 3D cells, radio and underwater acoustic.

All distances in this module are kilometers, matching the per-kilometer
absorption of Thorp's formula. Frequencies are Hz.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Iterable, Sequence

import numpy as np

from UWCell.geometry import SQRT2, SQRT3, SQRT5, DomainError, UnsupportedShapeError
from UWCell.models import (
    AcousticParams,
    CellShape,
    ClusterIndex,
    ClusterSize,
    RadiusChoice,
    RadiusInterval,
    UserConstraints,
)
from UWCell.quadrature import QuadratureError, simpson_refined

logger = logging.getLogger(__name__)

__all__ = [
    "QuadratureError",
    "UnsupportedCombinationError",
    "absorption_coeff",
    "acoustic_sir",
    "band_integral",
    "cluster_size",
    "feasible_radius_range",
    "hexagonal_reference_sir",
    "is_valid_cluster_size",
    "max_users_radius",
    "radio_sir",
    "received_power",
    "reuse_distance",
    "sir_db",
    "sir_from_distances",
    "sir_sweep",
    "thorp_db_per_km",
]

# Equidistant co-channel cells around a rhombic dodecahedron.
CO_CHANNELS: dict[CellShape, int] = {CellShape.RD: 12}


class UnsupportedCombinationError(ValueError):
    """Raised when a shape has no cluster or co-channel model for the request."""


def db_to_linear(db: float | np.ndarray) -> float | np.ndarray:
    return 10.0 ** (np.asarray(db) / 10.0)


def sir_db(sir: float) -> float:
    return 10.0 * math.log10(sir)


# ---------------------------------------------------------------------------
# Cluster geometry
# ---------------------------------------------------------------------------

def _quadratic_form(shape: CellShape, idx: ClusterIndex) -> float:
    i, j, k = idx
    if shape is CellShape.RD:
        return i * i + j * j + k * k + i * j + j * k + k * i
    if shape is CellShape.CB:
        return i * i + j * j + k * k
    if shape is CellShape.TO:
        return i * i + j * j + i * k + j * k + 0.75 * k * k
    if shape is CellShape.HP:
        return i * i + j * j + 2 / 3 * k * k + i * j
    raise UnsupportedShapeError(f"No reuse geometry for {shape.value}")


# Distance per unit of sqrt(quadratic form), in cell radii.
_REUSE_SCALE = {
    CellShape.RD: SQRT2,
    CellShape.CB: 2 / SQRT3,
    CellShape.TO: 4 / SQRT5,
    CellShape.HP: SQRT2,
}


def reuse_distance(shape: CellShape, idx: ClusterIndex, radius: float) -> float:
    """Distance between two cell centers whose lattice indices differ by ``idx``."""
    if not any(idx):
        raise DomainError("Cluster index must not be (0, 0, 0)")
    if radius < 0:
        raise DomainError(f"Cell radius must be nonnegative, got {radius}")
    q = _quadratic_form(shape, ClusterIndex(*idx))
    return _REUSE_SCALE[shape] * radius * math.sqrt(q)


def cluster_size(shape: CellShape, idx: ClusterIndex) -> ClusterSize:
    """Cells per cluster when co-channel cells are ``idx`` apart.

    Only integer sizes are realizable; others come back with ``n=None``.
    """
    if shape not in (CellShape.RD, CellShape.CB, CellShape.TO):
        raise UnsupportedShapeError(f"No cluster-size formula for {shape.value}")
    if not any(idx):
        raise DomainError("Cluster index must not be (0, 0, 0)")
    value = _quadratic_form(shape, ClusterIndex(*idx)) ** 1.5
    n = round(value)
    if abs(value - n) <= 1e-9:
        return ClusterSize(value, int(n))
    return ClusterSize(value, None)


def is_valid_cluster_size(n: float) -> bool:
    """True for positive perfect cubes (1, 8, 27, ...)."""
    if n < 1 or n != int(n):
        return False
    root = round(n ** (1 / 3))
    return root**3 == int(n)


def _check_cluster(n: float) -> None:
    if not is_valid_cluster_size(n):
        raise DomainError(f"Cluster size must be a perfect cube >= 1, got {n}")


def reuse_ratio(shape: CellShape, n: int) -> float:
    """Co-channel reuse ratio D/R for cluster size ``n``."""
    _check_cluster(n)
    cube_root = n ** (1 / 3)
    if shape is CellShape.RD:
        return SQRT2 * cube_root
    if shape is CellShape.CB:
        return 2 * cube_root / SQRT3
    if shape is CellShape.TO:
        return 4 * cube_root / SQRT5
    raise UnsupportedCombinationError(f"No cluster model for {shape.value}")


# ---------------------------------------------------------------------------
# Radio SIR
# ---------------------------------------------------------------------------

def sir_from_distances(radius: float, distances: Iterable[float], exponent: float) -> float:
    """Signal at ``radius`` over the summed interference from ``distances``."""
    interference = sum(d ** (-exponent) for d in distances)
    if interference <= 0:
        raise DomainError("At least one interferer distance is required")
    return radius ** (-exponent) / interference


def radio_sir(
    shape: CellShape,
    n: int,
    path_loss_exponent: float,
    co_channels: int | None = None,
) -> float:
    """SIR at the cell edge with equidistant first-tier co-channel cells.

    RD has 12 co-channel cells; CB and TO need ``co_channels`` explicitly.
    """
    count = co_channels if co_channels is not None else CO_CHANNELS.get(shape)
    if count is None:
        raise UnsupportedCombinationError(
            f"Co-channel count for {shape.value} must be given explicitly"
        )
    if count < 1:
        raise DomainError(f"co_channels must be positive, got {count}")
    ratio = reuse_ratio(shape, n)
    return sir_from_distances(1.0, [ratio] * count, path_loss_exponent)


def hexagonal_reference_sir(n: int, path_loss_exponent: float = 4.0) -> float:
    """Planar hexagonal-cell SIR, Q^n / 6 with Q = sqrt(3N)."""
    if n < 1:
        raise DomainError(f"Cluster size must be positive, got {n}")
    return math.sqrt(3 * n) ** path_loss_exponent / 6


# ---------------------------------------------------------------------------
# Underwater acoustic channel
# ---------------------------------------------------------------------------

def thorp_db_per_km(f_khz: float | np.ndarray) -> float | np.ndarray:
    """Thorp absorption in dB/km for a frequency in kHz."""
    f = np.asarray(f_khz, dtype=float)
    f2 = f**2
    high = 0.11 * f2 / (1 + f2) + 44 * f2 / (4100 + f2) + 2.75e-4 * f2 + 0.003
    low = 0.002 + 0.11 * f2 / (1 + f2) + 0.011 * f2
    db = np.where(f <= 1.0, low, high)
    return float(db) if db.ndim == 0 else db


def absorption_coeff(f: float | np.ndarray) -> float | np.ndarray:
    """Linear absorption factor a(f) per kilometer, ``f`` in Hz."""
    if np.any(np.asarray(f) <= 0):
        raise DomainError("Frequency must be positive")
    a = db_to_linear(thorp_db_per_km(np.asarray(f, dtype=float) / 1000.0))
    return float(a) if np.ndim(a) == 0 else a


def _check_params(params: AcousticParams) -> None:
    if params.f_min <= 0 or params.bandwidth <= 0 or params.a0 <= 0 or params.p_t <= 0:
        raise DomainError(f"Acoustic parameters must be positive: {params}")
    if not 1.0 <= params.spreading_factor <= 2.0:
        raise DomainError(
            f"Spreading factor must lie in [1, 2], got {params.spreading_factor}"
        )


def band_integral(
    d: float,
    params: AcousticParams,
    min_intervals: int = 8,
    rtol: float = 1e-8,
) -> float:
    """Integral of a(f)^(-d) over [f_min, f_min + bandwidth]."""
    if not params.absorption:
        return params.bandwidth

    def integrand(f: np.ndarray) -> np.ndarray:
        # a(f)^(-d) evaluated in the dB domain.
        return 10.0 ** (-d * thorp_db_per_km(f / 1000.0) / 10.0)

    value, _ = simpson_refined(
        integrand,
        params.f_min,
        params.f_min + params.bandwidth,
        rtol=rtol,
        min_intervals=min_intervals,
    )
    return value


def received_power(
    d: float,
    params: AcousticParams,
    min_intervals: int = 8,
    rtol: float = 1e-8,
) -> float:
    """Power received at ``d`` km from a flat-spectrum transmitter."""
    _check_params(params)
    if d <= 0:
        raise DomainError(f"Distance must be positive, got {d}")
    density = params.p_t / params.bandwidth
    spreading = d ** (-params.spreading_factor)
    return density / params.a0 * spreading * band_integral(d, params, min_intervals, rtol)


def acoustic_sir(
    radius: float,
    n: int,
    shape: CellShape = CellShape.RD,
    params: AcousticParams | None = None,
    min_intervals: int = 8,
    rtol: float = 1e-8,
) -> float:
    """Cell-edge SIR against the 12 nearest co-channel cells, P(R) / 12 P(D)."""
    if shape is not CellShape.RD:
        raise UnsupportedCombinationError(
            f"Acoustic SIR is modeled for RD cells only, not {shape.value}"
        )
    params = params or AcousticParams()
    distance = reuse_ratio(shape, n) * radius
    signal = received_power(radius, params, min_intervals, rtol)
    interference = received_power(distance, params, min_intervals, rtol)
    return signal / (CO_CHANNELS[shape] * interference)


def sir_sweep(
    radii: Sequence[float],
    cluster_sizes: Sequence[int],
    f_mins: Sequence[float],
    params: AcousticParams | None = None,
) -> list[tuple[float, float, int, float]]:
    """Rows (f_min, R, N, SIR) over every combination, f_min outermost."""
    base = params or AcousticParams()
    rows = []
    for f_min in f_mins:
        p = AcousticParams(
            f_min=f_min,
            bandwidth=base.bandwidth,
            spreading_factor=base.spreading_factor,
            a0=base.a0,
            p_t=base.p_t,
            absorption=base.absorption,
        )
        for n in cluster_sizes:
            for r in radii:
                rows.append((f_min, r, n, acoustic_sir(r, n, params=p)))
    return rows


# ---------------------------------------------------------------------------
# Cell radius selection
# ---------------------------------------------------------------------------

def _check_constraints(c: UserConstraints) -> None:
    if c.rho <= 0 or c.bandwidth <= 0 or c.w0 <= 0 or c.sir0 < 0:
        raise DomainError(f"User constraints must be positive: {c}")


def feasible_radius_range(c: UserConstraints, n: int) -> RadiusInterval:
    """Radii with at least one user per cell and at least W0 of bandwidth each.

    A cell of radius R holds 2 R^3 rho users and gets B/N of the bandwidth.
    """
    _check_constraints(c)
    if n < 1:
        raise DomainError(f"Cluster size must be positive, got {n}")
    lo = (2 * c.rho) ** (-1 / 3)
    hi = lo * (c.bandwidth / (n * c.w0)) ** (1 / 3)
    return RadiusInterval(lo, hi)


def _monotonicity(values: np.ndarray) -> str:
    steps = np.diff(values)
    if np.all(steps > 0):
        return "increasing"
    if np.all(steps < 0):
        return "decreasing"
    return "mixed"


def max_users_radius(
    c: UserConstraints,
    n: int,
    params: AcousticParams | None = None,
    samples: int = 256,
    tol: float = 1e-10,
) -> RadiusChoice:
    """Largest feasible radius that also meets SIR >= SIR0.

    Users per cell grow with R, so the answer is the top of the set
    {R in feasible interval : SIR(R) >= SIR0}. The SIR profile is sampled
    first and the last crossing refined by bisection, so the search holds
    whichever way SIR trends with R.
    """
    params = params or AcousticParams()
    interval = feasible_radius_range(c, n)
    if interval.empty:
        return RadiusChoice(None, binding="bandwidth")

    def margin(r: float) -> float:
        return acoustic_sir(r, n, params=params) - c.sir0

    radii = np.linspace(interval.lo, interval.hi, max(2, samples))
    values = np.array([margin(r) for r in radii])
    trend = _monotonicity(values)
    if trend == "mixed":
        logger.warning("SIR is not monotone in R for N=%d; using the last crossing", n)
    else:
        logger.info("SIR is %s in R for N=%d", trend, n)

    ok = np.flatnonzero(values >= 0)
    if ok.size == 0:
        return RadiusChoice(None, binding="sir")
    last = int(ok[-1])
    if last == len(radii) - 1:
        radius = interval.hi
        binding = "bandwidth"
    else:
        lo, hi = float(radii[last]), float(radii[last + 1])
        while hi - lo > tol * max(1.0, hi):
            mid = (lo + hi) / 2
            if margin(mid) >= 0:
                lo = mid
            else:
                hi = mid
        radius = lo
        binding = "sir"
    return RadiusChoice(radius, users_per_cell=2 * radius**3 * c.rho, binding=binding)
