"""Density profiles over geometric delta grids and characteristic times.

A profile is the density of one target (pair, link set, stream, node or
neighborhood) evaluated at every point of a geometric grid of window
lengths.  The characteristic time of a target is the grid point where its
profile rises the most.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from ._pool import keyed_map
from .density import GapSummary, neighbor_pairs
from .errors import DomainError
from .stream import LinkStream, NodeId, PairKey, pair_key

DEFAULT_RATIO = 1.01
DEFAULT_THRESHOLD = 0.15
# Variations are expressed as density gained per doubling of delta.
DEFAULT_PER_RATIO = 2.0
# Float noise allowed when asserting monotone profiles and comparing jumps.
MONOTONE_TOL = 1e-9
TIE_TOL = 1e-9


@dataclass(frozen=True)
class DeltaGrid:
    min: float
    max: float
    ratio: float
    points: np.ndarray

    def __len__(self) -> int:
        return int(self.points.size)


def geometric_grid(min: float = 1.0, max: float | None = None,
                   ratio: float = DEFAULT_RATIO) -> DeltaGrid:
    """``min * ratio**i`` for every ``i`` with a value below ``max``, then ``max``.

    >>> geometric_grid(1, 10, 2).points.tolist()
    [1.0, 2.0, 4.0, 8.0, 10.0]
    """
    if max is None:
        raise DomainError("grid maximum is required (usually the stream duration)")
    if not (0 < min < max and math.isfinite(max)):
        raise DomainError(f"need 0 < min < max, got min={min}, max={max}")
    if not ratio > 1:
        raise DomainError(f"ratio must exceed 1, got {ratio}")
    n = math.ceil(math.log(max / min) / math.log(ratio)) + 1
    pts = min * np.power(float(ratio), np.arange(n, dtype=np.float64))
    pts = pts[pts < max]
    points = np.append(pts, float(max))
    points.setflags(write=False)
    return DeltaGrid(float(min), float(max), float(ratio), points)


def stream_grid(L: LinkStream, min: float = 1.0, ratio: float = DEFAULT_RATIO,
                max: float | None = None) -> DeltaGrid:
    """Grid from ``min`` up to the stream duration (or ``max``)."""
    return geometric_grid(min, L.duration if max is None else max, ratio)


class Target(NamedTuple):
    kind: str  # pair | links | stream | node | neighborhood | custom
    label: str = ""

    def __str__(self) -> str:
        return f"{self.kind}:{self.label}" if self.label else self.kind


@dataclass(frozen=True)
class DensityProfile:
    """Density values aligned with a grid; non-decreasing by construction.

    Decreases up to ``MONOTONE_TOL`` are float noise and get flattened;
    larger ones raise :class:`DomainError`.
    """

    target: Target
    grid: DeltaGrid
    values: np.ndarray

    def __post_init__(self) -> None:
        v = np.array(self.values, dtype=np.float64)
        if v.shape != self.grid.points.shape:
            raise DomainError("profile values must align with grid points")
        if v.size > 1:
            drop = float(np.max(v[:-1] - v[1:]))
            if drop > MONOTONE_TOL:
                raise DomainError(f"profile for {self.target} decreases by {drop}")
            if drop > 0:
                v = np.maximum.accumulate(v)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True)
class CharacteristicTime:
    tau: float
    variation: float
    grid_index: int


class Ccdf(NamedTuple):
    """``(x, y)`` breakpoints where ``y`` counts items strictly above ``x``."""

    points: list[tuple[float, int]]

    def at(self, x: float) -> int:
        xs = [p[0] for p in self.points]
        i = np.searchsorted(xs, x, side="right") - 1
        if i < 0:
            raise DomainError(f"x={x} lies before the first breakpoint")
        return self.points[i][1]


def density_profile(evaluate: Callable[[float], float], grid: DeltaGrid,
                    target: Target = Target("custom")) -> DensityProfile:
    values = np.array([evaluate(float(d)) for d in grid.points], dtype=np.float64)
    return DensityProfile(target, grid, values)


def _pair_values(L: LinkStream, idx: tuple[int, int] | None, points: np.ndarray) -> np.ndarray:
    times = L.pair_times.get(idx, np.empty(0)) if idx is not None else np.empty(0)
    return GapSummary.from_times(times, L.alpha, L.omega).densities(points, L.duration)


def _check_grid(L: LinkStream, grid: DeltaGrid) -> None:
    if grid.max > L.duration:
        raise DomainError(f"grid maximum {grid.max} exceeds stream duration {L.duration}")


def pair_profile(L: LinkStream, pair: PairKey | tuple[object, object], grid: DeltaGrid) -> DensityProfile:
    key = pair_key(*pair)
    _check_grid(L, grid)
    return DensityProfile(Target("pair", str(key)), grid, _pair_values(L, L.resolve(key), grid.points))


def set_profile(L: LinkStream, S: Iterable[PairKey | tuple[object, object]], grid: DeltaGrid) -> DensityProfile:
    keys = sorted({pair_key(*p) for p in S})
    if not keys:
        raise DomainError("density of an empty link set is undefined")
    _check_grid(L, grid)
    total = np.zeros(len(grid))
    for key in keys:
        idx = L.resolve(key)
        if idx is not None and idx in L.pair_times:
            total += _pair_values(L, idx, grid.points)
    return DensityProfile(Target("links", f"{len(keys)} pairs"), grid, total / len(keys))


def stream_profile(L: LinkStream, grid: DeltaGrid, nodes: Iterable[object] | None = None) -> DensityProfile:
    labels = L.nodes if nodes is None else {str(v) for v in nodes}
    n = len(labels)
    if n < 2:
        raise DomainError("stream density needs at least two nodes")
    _check_grid(L, grid)
    members = {L.index[v] for v in labels if v in L.index}
    total = np.zeros(len(grid))
    for idx in L.pair_times:
        if idx[0] in members and idx[1] in members:
            total += _pair_values(L, idx, grid.points)
    label = "" if nodes is None else f"{n} nodes"
    return DensityProfile(Target("stream", label), grid, total / (n * (n - 1) // 2))


def _node_values(L: LinkStream, i: int, points: np.ndarray) -> np.ndarray:
    nbrs = L.adjacency[i]
    total = np.zeros(points.size)
    for j in nbrs:
        total += _pair_values(L, (min(i, j), max(i, j)), points)
    return total / len(nbrs)


def node_profile(L: LinkStream, v: NodeId, grid: DeltaGrid) -> DensityProfile:
    i = L.node_index(v)
    _check_grid(L, grid)
    return DensityProfile(Target("node", L.labels[i]), grid, _node_values(L, i, grid.points))


def neighborhood_profile(L: LinkStream, v: NodeId, grid: DeltaGrid) -> DensityProfile:
    """Delta-clustering coefficient of ``v`` over the grid."""
    i = L.node_index(v)
    _check_grid(L, grid)
    k = len(L.adjacency[i])
    total = np.zeros(len(grid))
    if k >= 2:
        for idx in neighbor_pairs(L, i):
            total += _pair_values(L, idx, grid.points)
        total /= k * (k - 1) // 2
    return DensityProfile(Target("neighborhood", L.labels[i]), grid, total)


def characteristic_time(profile: DensityProfile, threshold: float = DEFAULT_THRESHOLD,
                        per_ratio: float | None = DEFAULT_PER_RATIO) -> CharacteristicTime | None:
    """Grid point ending the steepest rise of the profile, or None if too flat.

    Each step's rise is scaled to a change of delta by ``per_ratio`` (a
    doubling by default) so that the result does not depend on the grid
    resolution; ``per_ratio=None`` uses the raw difference between
    consecutive points.  Ties go to the smallest delta.
    """
    v = profile.values
    pts = profile.grid.points
    if v.size < 2:
        raise DomainError("a profile needs at least two points")
    rise = np.diff(v)
    if per_ratio is not None:
        if not per_ratio > 1:
            raise DomainError("per_ratio must exceed 1")
        rise = rise * (math.log(per_ratio) / np.log(pts[1:] / pts[:-1]))
    best = float(rise.max())
    if best < threshold:
        return None
    i = int(np.flatnonzero(rise >= best - TIE_TOL)[0])
    return CharacteristicTime(tau=float(pts[i + 1]), variation=best, grid_index=i + 1)


def ccdf(values: Sequence[float]) -> Ccdf:
    """Count of values strictly greater than each distinct value (and 0).

    >>> ccdf([3, 5, 5, 9]).points
    [(0.0, 4), (3.0, 3), (5.0, 1), (9.0, 0)]
    """
    arr = np.sort(np.asarray(values, dtype=np.float64))
    if arr.size == 0:
        raise DomainError("CCDF of an empty sample is undefined")
    xs = np.unique(np.concatenate([[0.0], arr]))
    ys = arr.size - np.searchsorted(arr, xs, side="right")
    return Ccdf([(float(x), int(y)) for x, y in zip(xs, ys)])


def _pair_task(payload, idx):
    L, grid, threshold, per_ratio = payload
    prof = DensityProfile(Target("pair"), grid, _pair_values(L, idx, grid.points))
    return characteristic_time(prof, threshold, per_ratio)


def _node_task(payload, i):
    L, grid, threshold, per_ratio = payload
    prof = DensityProfile(Target("node"), grid, _node_values(L, i, grid.points))
    return characteristic_time(prof, threshold, per_ratio)


def pair_characteristic_times(
    L: LinkStream,
    grid: DeltaGrid,
    threshold: float = DEFAULT_THRESHOLD,
    per_ratio: float | None = DEFAULT_PER_RATIO,
    workers: int = 1,
) -> dict[PairKey, CharacteristicTime | None]:
    """Characteristic time of every occurring pair, in pair-key order."""
    _check_grid(L, grid)
    res = keyed_map(_pair_task, (L, grid, threshold, per_ratio), list(L.pair_times), workers)
    return {L.key_of(idx): ct for idx, ct in res.items()}


def node_characteristic_times(
    L: LinkStream,
    grid: DeltaGrid,
    threshold: float = DEFAULT_THRESHOLD,
    per_ratio: float | None = DEFAULT_PER_RATIO,
    workers: int = 1,
) -> dict[NodeId, CharacteristicTime | None]:
    """Characteristic time of every node's density profile, in label order."""
    _check_grid(L, grid)
    res = keyed_map(_node_task, (L, grid, threshold, per_ratio), list(L.adjacency), workers)
    return {L.labels[i]: ct for i, ct in res.items()}
