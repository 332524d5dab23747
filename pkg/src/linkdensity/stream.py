"""Undirected link streams, substreams, induced graphs and contact series.

A link stream is a time-ordered sequence of undirected links ``(t, u, v)``
observed during a capture window ``[alpha, omega]``.  Node labels are interned
in sorted order, so the integer index of a label is stable and a pair key
``(lo, hi)`` ordered by label is also ordered by index.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

from .errors import BoundsError, EmptyStreamError, LinkStreamError, NodeNotFoundError

NodeId = str


class PairKey(NamedTuple):
    """Unordered node pair, stored with ``lo < hi``."""

    lo: NodeId
    hi: NodeId

    def __str__(self) -> str:
        return f"{self.lo}|{self.hi}"


class Event(NamedTuple):
    t: float
    pair: PairKey


def pair_key(u: object, v: object) -> PairKey:
    """Normalize ``(u, v)`` to its undirected key.

    >>> pair_key("b", "a")
    PairKey(lo='a', hi='b')
    """
    a, b = _label(u), _label(v)
    if a == b:
        raise LinkStreamError(f"self-pair {a!r} has no key")
    return PairKey(a, b) if a < b else PairKey(b, a)


def _label(x: object) -> NodeId:
    s = x if isinstance(x, str) else str(x)
    if not s:
        raise LinkStreamError("node labels must be non-empty")
    return s


@dataclass(frozen=True, eq=False)
class LinkStream:
    """Immutable link stream.

    Events are held column-wise: ``times`` (float64, non-decreasing) and the
    interned endpoint indices ``lo``/``hi`` into ``labels``.  Use
    :func:`build_stream` rather than the constructor.
    """

    times: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    labels: tuple[NodeId, ...]
    alpha: float
    omega: float
    dropped_self_loops: int = 0
    bounds_from_data: bool = False

    def __post_init__(self) -> None:
        for arr in (self.times, self.lo, self.hi):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return int(self.times.size)

    @property
    def duration(self) -> float:
        return self.omega - self.alpha

    @cached_property
    def index(self) -> dict[NodeId, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    @cached_property
    def nodes(self) -> frozenset[NodeId]:
        """Labels taking part in at least one event."""
        present = np.unique(np.concatenate([self.lo, self.hi]))
        return frozenset(self.labels[i] for i in present)

    @property
    def events(self) -> list[Event]:
        labs = self.labels
        return [
            Event(float(t), PairKey(labs[a], labs[b]))
            for t, a, b in zip(self.times, self.lo, self.hi)
        ]

    def raw_events(self) -> Iterator[tuple[float, NodeId, NodeId]]:
        labs = self.labels
        for t, a, b in zip(self.times.tolist(), self.lo.tolist(), self.hi.tolist()):
            yield t, labs[a], labs[b]

    @cached_property
    def _pair_codes(self) -> np.ndarray:
        return self.lo.astype(np.int64) * len(self.labels) + self.hi

    @cached_property
    def pair_times(self) -> dict[tuple[int, int], np.ndarray]:
        """Occurrence times of every occurring pair, keyed by index pair.

        Keys are in ascending ``(lo, hi)`` order.
        """
        codes = self._pair_codes
        if codes.size == 0:
            return {}
        order = np.argsort(codes, kind="stable")  # keeps time order within a pair
        sorted_codes = codes[order]
        starts = np.flatnonzero(np.diff(sorted_codes)) + 1
        bounds = np.concatenate([[0], starts, [codes.size]])
        n = len(self.labels)
        out: dict[tuple[int, int], np.ndarray] = {}
        for s, e in zip(bounds[:-1], bounds[1:]):
            code = int(sorted_codes[s])
            arr = self.times[order[s:e]]
            arr.setflags(write=False)
            out[(code // n, code % n)] = arr
        return out

    @cached_property
    def adjacency(self) -> dict[int, tuple[int, ...]]:
        """Sorted neighbor indices of every present node index."""
        adj: dict[int, list[int]] = {}
        for a, b in self.pair_times:
            adj.setdefault(a, []).append(b)
            adj.setdefault(b, []).append(a)
        return {k: tuple(sorted(v)) for k, v in sorted(adj.items())}

    def key_of(self, pair: tuple[int, int]) -> PairKey:
        return PairKey(self.labels[pair[0]], self.labels[pair[1]])

    def resolve(self, pair: PairKey | tuple[object, object]) -> tuple[int, int] | None:
        """Index pair for ``pair``, or None when a label is unknown."""
        key = pair_key(*pair)
        a, b = self.index.get(key.lo), self.index.get(key.hi)
        if a is None or b is None:
            return None
        return a, b

    def node_index(self, v: object) -> int:
        label = _label(v)
        i = self.index.get(label)
        if i is None or label not in self.nodes:
            raise NodeNotFoundError(f"node {label!r} is not in the stream")
        return i

    def pairs(self) -> list[PairKey]:
        """Occurring pairs in key order."""
        return [self.key_of(p) for p in self.pair_times]

    def _with_mask(self, mask: np.ndarray) -> LinkStream:
        return LinkStream(
            times=self.times[mask],
            lo=self.lo[mask],
            hi=self.hi[mask],
            labels=self.labels,
            alpha=self.alpha,
            omega=self.omega,
            dropped_self_loops=self.dropped_self_loops,
            bounds_from_data=self.bounds_from_data,
        )

    def shifted(self, offset: float) -> LinkStream:
        """Same stream with every timestamp and both bounds moved by ``offset``."""
        return build_stream(
            [(t + offset, u, v) for t, u, v in self.raw_events()],
            alpha=self.alpha + offset,
            omega=self.omega + offset,
        )

    def scaled(self, factor: float) -> LinkStream:
        """Same stream with every timestamp and both bounds multiplied by ``factor``."""
        if not factor > 0:
            raise LinkStreamError("scale factor must be positive")
        return build_stream(
            [(t * factor, u, v) for t, u, v in self.raw_events()],
            alpha=self.alpha * factor,
            omega=self.omega * factor,
        )


@dataclass(frozen=True)
class ContactSeries:
    """Occurrence times of one pair plus its boundary-padded inter-contact gaps."""

    pair: PairKey
    times: tuple[float, ...]
    gaps: tuple[float, ...]

    @property
    def k(self) -> int:
        return len(self.times)


@dataclass(frozen=True)
class InducedGraph:
    vertices: frozenset[NodeId]
    edges: frozenset[PairKey]
    adjacency: dict[NodeId, frozenset[NodeId]]

    def degree(self, v: NodeId) -> int:
        return len(neighborhood(self, v))


def build_stream(
    raw_events: Iterable[tuple[float, object, object]],
    alpha: float | None = None,
    omega: float | None = None,
) -> LinkStream:
    """Build a link stream from ``(t, u, v)`` triples.

    Links are made undirected, self-loops are dropped (and counted) and events
    are stably sorted by time.  Missing bounds default to the observed
    minimum and maximum timestamps.
    """
    ts: list[float] = []
    us: list[NodeId] = []
    vs: list[NodeId] = []
    dropped = 0
    for t, u, v in raw_events:
        t = float(t)
        if not math.isfinite(t) or t < 0:
            raise LinkStreamError(f"timestamp {t!r} must be finite and non-negative")
        a, b = _label(u), _label(v)
        if a == b:
            dropped += 1
            continue
        ts.append(t)
        if a < b:
            us.append(a)
            vs.append(b)
        else:
            us.append(b)
            vs.append(a)

    times = np.asarray(ts, dtype=np.float64)
    if times.size == 0 and dropped == 0 and (alpha is None or omega is None):
        raise EmptyStreamError("empty input needs explicit alpha and omega")
    tmin = float(times.min()) if times.size else None
    tmax = float(times.max()) if times.size else None

    from_data = alpha is None or omega is None
    if alpha is None:
        if tmin is None:
            raise EmptyStreamError("no events to infer alpha from")
        alpha = tmin
    if omega is None:
        if tmax is None:
            raise EmptyStreamError("no events to infer omega from")
        omega = tmax
    alpha, omega = float(alpha), float(omega)
    if alpha > omega:
        raise BoundsError(f"alpha={alpha} exceeds omega={omega}")
    if tmin is not None and (alpha > tmin or omega < tmax):
        raise BoundsError(
            f"bounds [{alpha}, {omega}] do not enclose timestamps [{tmin}, {tmax}]"
        )

    labels = tuple(sorted(set(us) | set(vs)))
    index = {lab: i for i, lab in enumerate(labels)}
    lo = np.fromiter((index[x] for x in us), dtype=np.int64, count=len(us))
    hi = np.fromiter((index[x] for x in vs), dtype=np.int64, count=len(vs))
    order = np.argsort(times, kind="stable")
    return LinkStream(
        times=times[order],
        lo=lo[order],
        hi=hi[order],
        labels=labels,
        alpha=alpha,
        omega=omega,
        dropped_self_loops=dropped,
        bounds_from_data=from_data,
    )


def combine(streams: Sequence[LinkStream], alpha: float | None = None,
            omega: float | None = None) -> LinkStream:
    """Union of several streams; bounds default to the widest capture window."""
    if not streams:
        raise EmptyStreamError("nothing to combine")
    raw = [e for s in streams for e in s.raw_events()]
    if alpha is None:
        alpha = min(s.alpha for s in streams)
    if omega is None:
        omega = max(s.omega for s in streams)
    return build_stream(raw, alpha=alpha, omega=omega)


def gaps_from_times(times: np.ndarray, alpha: float, omega: float) -> np.ndarray:
    """Inter-contact gaps padded with ``t1 - alpha`` and ``omega - tk``.

    With no occurrence the single gap spans the whole capture.
    """
    if times.size == 0:
        return np.array([omega - alpha])
    gaps = np.empty(times.size + 1)
    gaps[0] = times[0] - alpha
    gaps[1:-1] = np.diff(times)
    gaps[-1] = omega - times[-1]
    return gaps


def contact_series(L: LinkStream, pair: PairKey | tuple[object, object]) -> ContactSeries:
    key = pair_key(*pair)
    idx = L.resolve(key)
    times = L.pair_times.get(idx, np.empty(0)) if idx is not None else np.empty(0)
    gaps = gaps_from_times(times, L.alpha, L.omega)
    return ContactSeries(key, tuple(times.tolist()), tuple(gaps.tolist()))


def substream_pairs(L: LinkStream, S: Iterable[PairKey | tuple[object, object]]) -> LinkStream:
    """Events of ``L`` whose pair is in ``S``, same order and bounds."""
    n = len(L.labels)
    codes = []
    for p in S:
        idx = L.resolve(p)
        if idx is not None:
            codes.append(idx[0] * n + idx[1])
    mask = np.isin(L._pair_codes, np.asarray(codes, dtype=np.int64))
    return L._with_mask(mask)


def substream_nodes(L: LinkStream, nodes: Iterable[object]) -> LinkStream:
    """Events of ``L`` with both endpoints in ``nodes``."""
    keep = np.zeros(len(L.labels), dtype=bool)
    for v in nodes:
        i = L.index.get(_label(v))
        if i is not None:
            keep[i] = True
    return L._with_mask(keep[L.lo] & keep[L.hi])


def induced_graph(L: LinkStream) -> InducedGraph:
    adj: dict[NodeId, set[NodeId]] = {}
    edges = set()
    for a, b in L.pair_times:
        u, v = L.labels[a], L.labels[b]
        edges.add(PairKey(u, v))
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    return InducedGraph(
        vertices=frozenset(adj),
        edges=frozenset(edges),
        adjacency={k: frozenset(s) for k, s in adj.items()},
    )


def neighborhood(G: InducedGraph, v: object) -> frozenset[NodeId]:
    label = _label(v)
    try:
        return G.adjacency[label]
    except KeyError:
        raise NodeNotFoundError(f"node {label!r} is not in the graph") from None
