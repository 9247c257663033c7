"""Greedy geographic routing over truncated-octahedron cell ids."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Iterator

import networkx as nx

from UWCell.geometry import DomainError
from UWCell.models import (
    CellId,
    NodeState,
    RouteOutcome,
    RoutePolicy,
    RouteResult,
    TieBreak,
)

logger = logging.getLogger(__name__)

# The 6 square-face and 8 hexagon-face neighbors of a TO cell, in id space.
NEIGHBOR_OFFSETS: tuple[CellId, ...] = (
    CellId(1, 0, 0), CellId(-1, 0, 0),
    CellId(0, 1, 0), CellId(0, -1, 0),
    CellId(0, 0, 1), CellId(0, 0, -1),
    CellId(-1, -1, 2), CellId(1, 1, -2),
    CellId(-1, 0, 1), CellId(1, 0, -1),
    CellId(0, -1, 1), CellId(0, 1, -1),
    CellId(-1, -1, 1), CellId(1, 1, -1),
)

DEAD_END = "no improving neighbor"
HOP_LIMIT = "hop limit"


def neighbors_of(cell: CellId) -> list[CellId]:
    u, v, w = cell
    return [CellId(u + du, v + dv, w + dw) for du, dv, dw in NEIGHBOR_OFFSETS]


def id_metric(a: CellId, b: CellId) -> int:
    """Squared Euclidean distance in id space."""
    return sum((x - y) ** 2 for x, y in zip(a, b))


class Field:
    """Active nodes of a routing experiment, one per cell id.

    Ids missing from the field behave like dead cells.
    """

    def __init__(self, nodes: Iterable[NodeState] = ()) -> None:
        self._nodes: dict[CellId, NodeState] = {}
        for node in nodes:
            self._nodes[CellId(*node.id)] = node

    @classmethod
    def full_box(cls, lo: int, hi: int, energy: float = 1.0) -> Field:
        """Every id with all coordinates in [lo, hi], alive."""
        span = range(lo, hi + 1)
        return cls(
            NodeState(CellId(u, v, w), energy=energy)
            for u in span for v in span for w in span
        )

    def __contains__(self, cell: object) -> bool:
        return cell in self._nodes

    def __getitem__(self, cell: CellId) -> NodeState:
        return self._nodes[cell]

    def __iter__(self) -> Iterator[NodeState]:
        return iter(self._nodes.values())

    def __len__(self) -> int:
        return len(self._nodes)

    def alive(self, cell: CellId) -> bool:
        node = self._nodes.get(cell)
        return node is not None and node.alive

    def kill(self, cells: Iterable[CellId]) -> None:
        for cell in cells:
            if cell in self._nodes:
                self._nodes[cell].alive = False

    def copy(self) -> Field:
        return Field(
            NodeState(n.id, alive=n.alive, load=n.load, energy=n.energy)
            for n in self._nodes.values()
        )


# ---------------------------------------------------------------------------
# Greedy forwarding
# ---------------------------------------------------------------------------

def _policy_key(node: NodeState, policy: RoutePolicy) -> float:
    if policy.tie_break is TieBreak.LEAST_LOADED:
        return node.load
    if policy.tie_break is TieBreak.HIGHEST_ENERGY:
        return -node.energy
    return 0.0


def greedy_next_hop(
    current: CellId,
    dest: CellId,
    field: Field,
    policy: RoutePolicy,
    forwarding: bool = True,
) -> CellId | None:
    """Pick an alive neighbor strictly closer to ``dest`` in id space.

    Candidates are ordered by the policy key, then by their metric to
    ``dest``, then by id. ``uniform_random`` draws from the policy's RNG
    instead. Returns None at a dead end. When ``forwarding`` is set the
    current node's load counts the packet.
    """
    here = id_metric(current, dest)
    candidates = [
        field[n] for n in neighbors_of(current)
        if field.alive(n) and id_metric(n, dest) < here
    ]
    if not candidates:
        return None
    if policy.tie_break is TieBreak.UNIFORM_RANDOM:
        candidates.sort(key=lambda node: tuple(node.id))
        chosen = candidates[int(policy.rng.integers(len(candidates)))]
    else:
        chosen = min(
            candidates,
            key=lambda node: (_policy_key(node, policy), id_metric(node.id, dest), tuple(node.id)),
        )
    if forwarding:
        field[current].load += 1
    return chosen.id


def route(
    src: CellId,
    dest: CellId,
    field: Field,
    policy: RoutePolicy,
    max_hops: int | None = None,
) -> RouteResult:
    """Forward greedily from ``src`` until ``dest`` or a dead end.

    The metric strictly decreases at every hop, so no route can loop.
    """
    src, dest = CellId(*src), CellId(*dest)
    for end, name in ((src, "source"), (dest, "destination")):
        if not field.alive(end):
            raise DomainError(f"The {name} cell {tuple(end)} is not alive")
    if max_hops is None:
        max_hops = 4 * id_metric(src, dest)

    path = [src]
    current = src
    while current != dest:
        if len(path) - 1 >= max_hops:
            logger.warning("Route %s -> %s cut off after %d hops", src, dest, max_hops)
            return RouteResult(RouteOutcome.DEAD_END, path, at=current, reason=HOP_LIMIT)
        nxt = greedy_next_hop(current, dest, field, policy, forwarding=current != src)
        if nxt is None:
            logger.info("Dead end at %s routing %s -> %s", current, src, dest)
            return RouteResult(RouteOutcome.DEAD_END, path, at=current, reason=DEAD_END)
        path.append(nxt)
        current = nxt
    return RouteResult(RouteOutcome.DELIVERED, path, at=dest)


def alive_graph(field: Field) -> nx.Graph:
    """14-neighbor adjacency between alive cells."""
    graph = nx.Graph()
    for node in field:
        if not node.alive:
            continue
        graph.add_node(node.id)
        for n in neighbors_of(node.id):
            if field.alive(n):
                graph.add_edge(node.id, n)
    return graph


def bfs_oracle(src: CellId, dest: CellId, field: Field) -> int | None:
    """Shortest hop count over alive cells, or None when unreachable."""
    src, dest = CellId(*src), CellId(*dest)
    if not (field.alive(src) and field.alive(dest)):
        return None
    try:
        return nx.shortest_path_length(alive_graph(field), src, dest)
    except nx.NetworkXNoPath:
        return None
