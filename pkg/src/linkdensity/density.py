"""Delta-density of pairs, link sets, streams, nodes and neighborhoods.

The density of a pair for a window length ``delta`` is the probability that a
uniformly placed window of that length inside the capture contains at least
one occurrence of the pair::

    density = 1 - sum(max(gap - delta, 0)) / (duration - delta)

At ``delta == duration`` the ratio is 0/0; the limit is 1 for an occurring
pair and 0 otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegenerateStreamError, DomainError
from .stream import (
    ContactSeries,
    InducedGraph,
    LinkStream,
    NodeId,
    PairKey,
    gaps_from_times,
    pair_key,
)


def _clamp(x: float) -> float:
    return 0.0 if x < 0.0 else 1.0 if x > 1.0 else x


def check_delta(delta: float, duration: float) -> None:
    if not duration > 0:
        raise DegenerateStreamError(f"stream duration must be positive, got {duration}")
    if not 0 <= delta <= duration:
        raise DomainError(f"delta={delta} outside [0, {duration}]")


def pair_density(series: ContactSeries, delta: float, duration: float) -> float:
    """Delta-density of one pair from its contact series."""
    check_delta(delta, duration)
    if delta == duration:
        return 1.0 if series.k else 0.0
    excess = math.fsum(g - delta for g in series.gaps if g > delta)
    return _clamp(1.0 - excess / (duration - delta))


def _density_from_times(times: np.ndarray, L: LinkStream, delta: float) -> float:
    duration = L.duration
    if delta == duration:
        return 1.0 if times.size else 0.0
    gaps = gaps_from_times(times, L.alpha, L.omega)
    excess = float(np.sum(gaps[gaps > delta] - delta))
    return _clamp(1.0 - excess / (duration - delta))


@dataclass(frozen=True)
class GapSummary:
    """Gaps sorted in descending order with their running sums.

    ``cumulative[j]`` is the sum of the ``j`` largest gaps, so the excess
    ``sum(max(gap - delta, 0))`` costs one binary search per ``delta``.
    """

    sorted_gaps: np.ndarray
    cumulative: np.ndarray
    occurs: bool

    @classmethod
    def from_gaps(cls, gaps: np.ndarray, occurs: bool = True) -> GapSummary:
        desc = np.sort(np.asarray(gaps, dtype=np.float64))[::-1]
        cum = np.concatenate([[0.0], np.cumsum(desc)])
        return cls(desc, cum, occurs)

    @classmethod
    def from_times(cls, times: np.ndarray, alpha: float, omega: float) -> GapSummary:
        return cls.from_gaps(gaps_from_times(times, alpha, omega), occurs=times.size > 0)

    def excess(self, deltas: np.ndarray) -> np.ndarray:
        deltas = np.asarray(deltas, dtype=np.float64)
        # number of gaps strictly larger than each delta
        m = np.searchsorted(-self.sorted_gaps, -deltas, side="left")
        return np.maximum(self.cumulative[m] - m * deltas, 0.0)

    def densities(self, deltas: np.ndarray, duration: float) -> np.ndarray:
        """Vectorized pair density over ``deltas`` (each within ``[0, duration]``)."""
        deltas = np.asarray(deltas, dtype=np.float64)
        if not duration > 0:
            raise DegenerateStreamError(f"stream duration must be positive, got {duration}")
        if deltas.size and (deltas.min() < 0 or deltas.max() > duration):
            raise DomainError(f"deltas must lie within [0, {duration}]")
        full = deltas == duration
        denom = np.where(full, 1.0, duration - deltas)
        out = 1.0 - self.excess(deltas) / denom
        out[full] = 1.0 if self.occurs else 0.0
        return np.clip(out, 0.0, 1.0)


def set_density(L: LinkStream, S: Iterable[PairKey | tuple[object, object]], delta: float) -> float:
    """Mean pair density over the link set ``S``; absent pairs count 0."""
    keys = {pair_key(*p) for p in S}
    if not keys:
        raise DomainError("density of an empty link set is undefined")
    check_delta(delta, L.duration)
    terms = []
    for key in sorted(keys):
        idx = L.resolve(key)
        times = L.pair_times.get(idx) if idx is not None else None
        if times is not None:
            terms.append(_density_from_times(times, L, delta))
    total = math.fsum(terms)
    return _clamp(total / len(keys))


def stream_density(L: LinkStream, delta: float, nodes: Iterable[object] | None = None) -> float:
    """Mean pair density over all unordered pairs of ``nodes``.

    ``nodes`` defaults to the nodes of ``L``.  Pairs that never interact
    count 0, so at ``delta == duration`` this is the induced graph density.
    """
    labels = L.nodes if nodes is None else {str(v) for v in nodes}
    if len(labels) < 2:
        raise DomainError("stream density needs at least two nodes")
    check_delta(delta, L.duration)
    members = {L.index[v] for v in labels if v in L.index}
    n = len(labels)
    total = math.fsum(
        _density_from_times(times, L, delta)
        for (a, b), times in L.pair_times.items()
        if a in members and b in members
    )
    return _clamp(total / (n * (n - 1) // 2))


def node_density(L: LinkStream, v: NodeId, delta: float) -> float:
    """Mean density of the links between ``v`` and its neighbors."""
    i = L.node_index(v)
    check_delta(delta, L.duration)
    nbrs = L.adjacency[i]
    terms = [
        _density_from_times(L.pair_times[(min(i, j), max(i, j))], L, delta) for j in nbrs
    ]
    return _clamp(math.fsum(terms) / len(nbrs))


def neighbor_pairs(L: LinkStream, i: int) -> list[tuple[int, int]]:
    """Occurring pairs whose endpoints are both neighbors of node index ``i``."""
    nbrs = L.adjacency.get(i, ())
    nbr_set = set(nbrs)
    out = []
    for a in nbrs:
        for b in L.adjacency[a]:
            if b > a and b in nbr_set:
                out.append((a, b))
    return out


def delta_clustering(L: LinkStream, v: NodeId, delta: float) -> float:
    """Delta-clustering coefficient: stream density among the neighbors of ``v``.

    Every unordered neighbor pair counts, including pairs that never
    interact.  Nodes with fewer than two neighbors get 0.
    """
    i = L.node_index(v)
    check_delta(delta, L.duration)
    k = len(L.adjacency[i])
    if k < 2:
        return 0.0
    total = math.fsum(
        _density_from_times(L.pair_times[p], L, delta) for p in neighbor_pairs(L, i)
    )
    return _clamp(total / (k * (k - 1) // 2))


def graph_density(G: InducedGraph) -> float:
    n = len(G.vertices)
    if n < 2:
        raise DomainError("graph density needs at least two vertices")
    return 2 * len(G.edges) / (n * (n - 1))

