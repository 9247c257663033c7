"""Data classes for UWCell."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple

import networkx as nx
import numpy as np


class CellShape(Enum):
    CB = "CB"
    HP = "HP"
    RD = "RD"
    TO = "TO"
    ALT_CB = "Alt-CB"
    ALT_HP = "Alt-HP"

    @property
    def is_base(self) -> bool:
        return self in BASE_SHAPES


BASE_SHAPES: tuple[CellShape, ...] = (
    CellShape.CB,
    CellShape.HP,
    CellShape.RD,
    CellShape.TO,
)

ALL_SHAPES: tuple[CellShape, ...] = (
    CellShape.CB,
    CellShape.ALT_CB,
    CellShape.HP,
    CellShape.ALT_HP,
    CellShape.RD,
    CellShape.TO,
)

STRIP = "strip"


class Point3(NamedTuple):
    x: float
    y: float
    z: float


ORIGIN = Point3(0.0, 0.0, 0.0)


class CellId(NamedTuple):
    u: int
    v: int
    w: int


class ClusterIndex(NamedTuple):
    i: int
    j: int
    k: int


# ---------------------------------------------------------------------------
# Geometry and placement
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ShapeConstants:
    volumetric_quotient: float
    volume_coeff: float
    connectivity_threshold: float
    face_neighbors: int


@dataclass(frozen=True)
class BackboneParams:
    r_bb: float
    r_bs: float

    @property
    def ratio(self) -> float:
        return self.r_bb / self.r_bs


@dataclass(frozen=True)
class Region:
    min_corner: Point3
    max_corner: Point3

    @classmethod
    def cube(cls, half_side: float, center: Point3 = ORIGIN) -> Region:
        lo = Point3(*(c - half_side for c in center))
        hi = Point3(*(c + half_side for c in center))
        return cls(lo, hi)

    @property
    def center(self) -> Point3:
        return Point3(*((a + b) / 2 for a, b in zip(self.min_corner, self.max_corner)))

    @property
    def extent(self) -> np.ndarray:
        return np.subtract(self.max_corner, self.min_corner, dtype=float)

    @property
    def volume(self) -> float:
        return float(np.prod(self.extent))

    def is_valid(self) -> bool:
        return bool(np.all(self.extent >= 0))

    def inflated(self, margin: float) -> Region:
        lo = Point3(*(c - margin for c in self.min_corner))
        hi = Point3(*(c + margin for c in self.max_corner))
        return Region(lo, hi)

    def corners(self) -> np.ndarray:
        lo, hi = self.min_corner, self.max_corner
        return np.array(
            [[x, y, z] for z in (lo.z, hi.z) for y in (lo.y, hi.y) for x in (lo.x, hi.x)],
            dtype=float,
        )

    def contains(self, points: np.ndarray, tol: float = 0.0) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        lo = np.asarray(self.min_corner, dtype=float) - tol
        hi = np.asarray(self.max_corner, dtype=float) + tol
        return np.all((pts >= lo) & (pts <= hi), axis=1)

    def boundary_distance(self, points: np.ndarray) -> np.ndarray:
        pts = np.asarray(points, dtype=float).reshape(-1, 3)
        below = pts - np.asarray(self.min_corner, dtype=float)
        above = np.asarray(self.max_corner, dtype=float) - pts
        return np.minimum(below, above).min(axis=1)


@dataclass(frozen=True)
class CellDescriptor:
    shape: CellShape
    radius: float  # circumsphere radius
    side: float | None = None  # HP only
    height: float | None = None  # HP only


@dataclass
class Placement:
    model: CellShape | str
    cell_radius: float
    points: np.ndarray
    indices: np.ndarray
    reference: Point3
    region: Region
    annotations: dict[str, float] = field(default_factory=dict)
    auxiliary: np.ndarray = field(default_factory=lambda: np.empty((0, 3)))

    @property
    def size(self) -> int:
        return len(self.points) + len(self.auxiliary)

    @property
    def all_points(self) -> np.ndarray:
        if len(self.auxiliary) == 0:
            return self.points
        return np.vstack([self.points, self.auxiliary])

    @property
    def label(self) -> str:
        return self.model.value if isinstance(self.model, CellShape) else self.model


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------

@dataclass
class CoverageReport:
    samples_total: int = 0
    samples_covered: int = 0
    worst_gap: float = float("inf")

    @property
    def coverage_fraction(self) -> float:
        if self.samples_total == 0:
            return 0.0
        return self.samples_covered / self.samples_total

    def merge(self, other: CoverageReport) -> CoverageReport:
        if not self.samples_total:
            return other
        if not other.samples_total:
            return self
        return CoverageReport(
            samples_total=self.samples_total + other.samples_total,
            samples_covered=self.samples_covered + other.samples_covered,
            worst_gap=max(self.worst_gap, other.worst_gap),
        )

    def to_dict(self) -> dict[str, float | int | str]:
        gap: float | str = self.worst_gap if np.isfinite(self.worst_gap) else "inf"
        return {
            "samples_total": self.samples_total,
            "samples_covered": self.samples_covered,
            "worst_gap": gap,
            "coverage_fraction": self.coverage_fraction,
        }


@dataclass
class BackboneGraph:
    graph: nx.Graph
    points: np.ndarray
    interior: np.ndarray
    r_bb: float

    @property
    def degrees(self) -> np.ndarray:
        return np.array([self.graph.degree(n) for n in range(len(self.points))], dtype=int)

    @property
    def degree_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.degrees.tolist()).items()))

    @property
    def interior_degree_mode(self) -> int | None:
        inner = self.degrees[self.interior]
        if inner.size == 0:
            return None
        counts = np.bincount(inner)
        return int(np.argmax(counts))


# ---------------------------------------------------------------------------
# Partitioning
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PartitionFrame:
    sink: Point3
    r_t: float


@dataclass(frozen=True)
class NeighborType:
    name: str
    count: int
    distance: float  # in units of the cell radius


@dataclass
class CellIdAccuracy:
    points: int = 0
    algorithm_mismatches: int = 0
    baseline_mismatches: int = 0

    @property
    def algorithm_mismatch_rate(self) -> float:
        return self.algorithm_mismatches / self.points if self.points else 0.0

    @property
    def baseline_mismatch_rate(self) -> float:
        return self.baseline_mismatches / self.points if self.points else 0.0


# ---------------------------------------------------------------------------
# Acoustic channel
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AcousticParams:
    f_min: float = 10_000.0  # Hz
    bandwidth: float = 7_000.0  # Hz
    spreading_factor: float = 1.5
    a0: float = 1.0
    p_t: float = 1.0  # W
    absorption: bool = True


@dataclass(frozen=True)
class UserConstraints:
    rho: float
    bandwidth: float
    w0: float
    sir0: float


@dataclass(frozen=True)
class ClusterSize:
    value: float
    n: int | None

    @property
    def valid(self) -> bool:
        return self.n is not None


@dataclass(frozen=True)
class RadiusInterval:
    lo: float
    hi: float

    @property
    def empty(self) -> bool:
        return self.hi < self.lo


@dataclass(frozen=True)
class RadiusChoice:
    radius: float | None
    users_per_cell: float | None = None
    binding: str | None = None

    @property
    def feasible(self) -> bool:
        return self.radius is not None


# ---------------------------------------------------------------------------
# Energy and coverage tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EnergyReport:
    model: CellShape
    per_packet_ratio: float
    network_ratio: float
    per_node_ratio: float


@dataclass(frozen=True)
class KCoverageRow:
    k: int
    lambda_k: float
    p_geq_k: float
    overhead: float


# ---------------------------------------------------------------------------
# Routing
# ---------------------------------------------------------------------------

class TieBreak(Enum):
    LEAST_LOADED = "least_loaded"
    HIGHEST_ENERGY = "highest_energy"
    UNIFORM_RANDOM = "uniform_random"


@dataclass
class RoutePolicy:
    tie_break: TieBreak = TieBreak.LEAST_LOADED
    seed: int | None = None
    rng: np.random.Generator = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.rng = np.random.default_rng(self.seed)


@dataclass
class NodeState:
    id: CellId
    alive: bool = True
    load: int = 0
    energy: float = 1.0


class RouteOutcome(Enum):
    DELIVERED = "delivered"
    DEAD_END = "dead_end"


@dataclass
class RouteResult:
    outcome: RouteOutcome
    path: list[CellId] = field(default_factory=list)
    at: CellId | None = None
    reason: str = ""

    @property
    def hops(self) -> int:
        return max(0, len(self.path) - 1)

    @property
    def delivered(self) -> bool:
        return self.outcome is RouteOutcome.DELIVERED


# ---------------------------------------------------------------------------
# Command line
# ---------------------------------------------------------------------------

@dataclass
class RunConfig:
    seed: int = 0
    output_format: str = "csv"
    units: str = "meters"
    threads: int = 1
