"""Per-node temporal and structural statistics, and rule-based role labels.

Each node gets its degree, the characteristic time of its density profile
and its tau-clustering coefficient (the delta-clustering coefficient taken
at that characteristic time).  Ordered rules turn these into a role:

1. star-hub: many neighbors that almost never talk to each other
   (the backup-server signature);
2. dense-group-member: neighbors that interact regularly;
3. periodic-service: short characteristic time;
4. ephemeral: no characteristic time, or one close to the capture length.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from enum import Enum
from typing import NamedTuple

from .density import delta_clustering, neighbor_pairs
from .profile import (
    DEFAULT_PER_RATIO,
    DEFAULT_THRESHOLD,
    CharacteristicTime,
    DeltaGrid,
    node_characteristic_times,
)
from .stream import InducedGraph, LinkStream, NodeId


class Role(str, Enum):
    STAR_HUB = "star-hub"
    DENSE_GROUP_MEMBER = "dense-group-member"
    PERIODIC_SERVICE = "periodic-service"
    EPHEMERAL = "ephemeral"
    UNCLASSIFIED = "unclassified"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class RuleParams:
    star_degree: int = 20
    star_cc: float = 0.05
    dense_cc: float = 0.5
    periodic_frac: float = 0.1
    ephemeral_frac: float = 0.5


@dataclass(frozen=True)
class NodeStats:
    node: NodeId
    degree: int
    char_time: CharacteristicTime | None
    tau_cc: float | None
    nonzero_cc: bool


@dataclass(frozen=True)
class NodeRole:
    stats: NodeStats
    role: Role
    rule: str


@dataclass(frozen=True)
class RoleReport:
    nodes: list[NodeRole]
    summary: dict[str, int]
    nonzero_cc_count: int
    params: RuleParams
    threshold: float
    alpha: float
    omega: float
    bounds_from_data: bool
    dropped_self_loops: int
    grid: dict = field(default_factory=dict)

    def role_of(self, v: NodeId) -> Role:
        for r in self.nodes:
            if r.stats.node == v:
                return r.role
        raise KeyError(v)

    def to_dict(self) -> dict:
        return {
            "capture": {
                "alpha": self.alpha,
                "omega": self.omega,
                "duration": self.omega - self.alpha,
                "bounds": "observed min/max timestamp" if self.bounds_from_data else "given",
            },
            "dropped_self_loops": self.dropped_self_loops,
            "grid": self.grid,
            "threshold": self.threshold,
            "rules": asdict(self.params),
            "summary": dict(self.summary),
            "nonzero_cc_nodes": self.nonzero_cc_count,
            "nodes": [
                {
                    "node": r.stats.node,
                    "degree": r.stats.degree,
                    "char_time": None if r.stats.char_time is None else {
                        "tau": r.stats.char_time.tau,
                        "variation": r.stats.char_time.variation,
                        "grid_index": r.stats.char_time.grid_index,
                    },
                    "tau_cc": r.stats.tau_cc,
                    "nonzero_cc": r.stats.nonzero_cc,
                    "role": r.role.value,
                    "rule": r.rule,
                }
                for r in self.nodes
            ],
        }


class ClusteringPoint(NamedTuple):
    node: NodeId
    degree: int
    tau_cc: float


def tau_clustering(L: LinkStream, v: NodeId, char_time: CharacteristicTime) -> float:
    return delta_clustering(L, v, char_time.tau)


def count_nonzero_cc_nodes(G: InducedGraph) -> int:
    """Nodes with at least one edge between two of their neighbors."""
    count = 0
    for v, nbrs in G.adjacency.items():
        if any(len(G.adjacency[w] & nbrs) for w in nbrs):
            count += 1
    return count


def node_stats(
    L: LinkStream,
    grid: DeltaGrid,
    threshold: float = DEFAULT_THRESHOLD,
    per_ratio: float | None = DEFAULT_PER_RATIO,
    workers: int = 1,
) -> dict[NodeId, NodeStats]:
    times = node_characteristic_times(L, grid, threshold, per_ratio, workers)
    out = {}
    for v, ct in times.items():
        i = L.index[v]
        degree = len(L.adjacency[i])
        tau_cc = None
        if ct is not None and degree >= 2:
            tau_cc = tau_clustering(L, v, ct)
        out[v] = NodeStats(v, degree, ct, tau_cc, bool(neighbor_pairs(L, i)))
    return out


def degree_vs_tau_cc(
    L: LinkStream,
    grid: DeltaGrid,
    threshold: float = DEFAULT_THRESHOLD,
    per_ratio: float | None = DEFAULT_PER_RATIO,
    workers: int = 1,
) -> list[ClusteringPoint]:
    """(degree, tau-cc) of nodes with a linked neighbor pair and a characteristic time."""
    return [
        ClusteringPoint(s.node, s.degree, s.tau_cc)
        for s in node_stats(L, grid, threshold, per_ratio, workers).values()
        if s.nonzero_cc and s.tau_cc is not None
    ]


def _fmt(x: float) -> str:
    return f"{x:.6g}"


def assign_role(s: NodeStats, duration: float, params: RuleParams) -> tuple[Role, str]:
    ct, cc = s.char_time, s.tau_cc
    if s.degree >= params.star_degree and cc is not None and cc <= params.star_cc:
        return Role.STAR_HUB, (
            f"degree {s.degree} >= {params.star_degree} and tau_cc {_fmt(cc)} <= {_fmt(params.star_cc)}"
        )
    if s.degree >= 2 and cc is not None and cc >= params.dense_cc:
        return Role.DENSE_GROUP_MEMBER, (
            f"degree {s.degree} >= 2 and tau_cc {_fmt(cc)} >= {_fmt(params.dense_cc)}"
        )
    if ct is not None and ct.tau <= params.periodic_frac * duration:
        return Role.PERIODIC_SERVICE, (
            f"tau {_fmt(ct.tau)} <= {_fmt(params.periodic_frac)} * duration"
        )
    if ct is None:
        return Role.EPHEMERAL, "no characteristic time"
    if ct.tau > params.ephemeral_frac * duration:
        return Role.EPHEMERAL, f"tau {_fmt(ct.tau)} > {_fmt(params.ephemeral_frac)} * duration"
    return Role.UNCLASSIFIED, "no rule matched"


def classify_roles(
    L: LinkStream,
    grid: DeltaGrid,
    params: RuleParams = RuleParams(),
    threshold: float = DEFAULT_THRESHOLD,
    per_ratio: float | None = DEFAULT_PER_RATIO,
    workers: int = 1,
) -> RoleReport:
    stats = node_stats(L, grid, threshold, per_ratio, workers)
    summary = {r.value: 0 for r in Role}
    nodes = []
    for s in stats.values():
        role, rule = assign_role(s, L.duration, params)
        summary[role.value] += 1
        nodes.append(NodeRole(s, role, rule))
    return RoleReport(
        nodes=nodes,
        summary=summary,
        nonzero_cc_count=sum(s.nonzero_cc for s in stats.values()),
        params=params,
        threshold=threshold,
        alpha=L.alpha,
        omega=L.omega,
        bounds_from_data=L.bounds_from_data,
        dropped_self_loops=L.dropped_self_loops,
        grid={"min": grid.min, "max": grid.max, "ratio": grid.ratio, "points": len(grid),
              "variation_per_ratio": per_ratio},
    )
