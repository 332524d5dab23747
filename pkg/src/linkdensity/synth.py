"""Synthetic link streams with known structure.

Periodic pairs, stars and cliques mimic the regular services seen in
firewall traces (backups, polling), Poisson and burst pairs give irregular
and short-lived links.  Every generator is a pure function of its arguments
and seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

from .errors import DomainError
from .stream import LinkStream, build_stream, combine

KINDS = ("periodic", "poisson", "burst", "star", "clique")


def _check_window(alpha: float, omega: float) -> None:
    if not alpha < omega:
        raise DomainError(f"need alpha < omega, got [{alpha}, {omega}]")
    if alpha < 0:
        raise DomainError("alpha must be non-negative")


def periodic_times(period: float, phase: float, alpha: float, omega: float) -> np.ndarray:
    if not period > 0:
        raise DomainError("period must be positive")
    if not 0 <= phase < period:
        raise DomainError(f"phase must lie in [0, period), got {phase}")
    _check_window(alpha, omega)
    count = math.floor((omega - alpha - phase) / period) + 1
    times = alpha + phase + period * np.arange(max(count, 0), dtype=np.float64)
    return times[times <= omega]


def gen_periodic(u: str, v: str, period: float, phase: float, alpha: float, omega: float) -> LinkStream:
    times = periodic_times(period, phase, alpha, omega)
    return build_stream(((t, u, v) for t in times.tolist()), alpha=alpha, omega=omega)


def leaf_labels(hub: str, leaf_count: int) -> list[str]:
    width = len(str(leaf_count - 1))
    return [f"{hub}-leaf{i:0{width}d}" for i in range(leaf_count)]


def gen_star(hub: str, leaf_count: int, period: float, stagger: float,
             alpha: float, omega: float) -> LinkStream:
    """Hub contacted periodically by each leaf; leaf ``i`` has phase ``i*stagger mod period``."""
    if leaf_count < 1:
        raise DomainError("a star needs at least one leaf")
    if stagger < 0:
        raise DomainError("stagger must be non-negative")
    raw = []
    for i, leaf in enumerate(leaf_labels(hub, leaf_count)):
        phase = math.fmod(i * stagger, period) if period > 0 else 0.0
        raw.extend((t, hub, leaf) for t in periodic_times(period, phase, alpha, omega).tolist())
    return build_stream(raw, alpha=alpha, omega=omega)


def gen_clique(nodes: Iterable[str], period: float, alpha: float, omega: float,
               stagger: float = 0.0) -> LinkStream:
    """Every pair of ``nodes`` linked periodically; pair ``j`` has phase ``j*stagger mod period``."""
    labels = sorted(set(nodes))
    if len(labels) < 2:
        raise DomainError("a clique needs at least two nodes")
    if stagger < 0:
        raise DomainError("stagger must be non-negative")
    raw = []
    j = 0
    for a in range(len(labels)):
        for b in range(a + 1, len(labels)):
            phase = math.fmod(j * stagger, period) if period > 0 else 0.0
            times = periodic_times(period, phase, alpha, omega)
            raw.extend((t, labels[a], labels[b]) for t in times.tolist())
            j += 1
    return build_stream(raw, alpha=alpha, omega=omega)


def poisson_times(rate: float, alpha: float, omega: float, rng: np.random.Generator) -> np.ndarray:
    if not rate > 0:
        raise DomainError("rate must be positive")
    _check_window(alpha, omega)
    out = []
    t = alpha
    expected = rate * (omega - alpha)
    chunk = max(int(expected * 1.2) + 16, 16)
    while True:
        steps = rng.exponential(1.0 / rate, size=chunk)
        arr = t + np.cumsum(steps)
        keep = arr[arr <= omega]
        out.append(keep)
        if keep.size < arr.size:
            break
        t = float(arr[-1])
    return np.concatenate(out)


def gen_poisson(u: str, v: str, rate: float, alpha: float, omega: float, seed: int) -> LinkStream:
    """Occurrences with exponential inter-arrival times of mean ``1/rate``."""
    times = poisson_times(rate, alpha, omega, np.random.default_rng(seed))
    return build_stream(((t, u, v) for t in times.tolist()), alpha=alpha, omega=omega)


def gen_burst(u: str, v: str, start: float, length: float, count: int,
              alpha: float, omega: float) -> LinkStream:
    """``count`` evenly spaced occurrences within ``[start, start + length]``."""
    _check_window(alpha, omega)
    if count < 1:
        raise DomainError("a burst needs at least one occurrence")
    if length < 0 or start < alpha or start + length > omega:
        raise DomainError("burst window must lie inside the capture")
    times = np.linspace(start, start + length, count) if count > 1 else np.array([start])
    return build_stream(((t, u, v) for t in times.tolist()), alpha=alpha, omega=omega)


@dataclass(frozen=True)
class GeneratorSpec:
    """Serializable description of a generated fixture.

    ``params`` holds the keyword arguments of the matching ``gen_*``
    function, without the bounds and seed.
    """

    kind: str
    params: dict[str, Any] = field(default_factory=dict)
    alpha: float = 0.0
    omega: float = 1.0
    seed: int | None = None

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> GeneratorSpec:
        extra = set(data) - {"kind", "params", "alpha", "omega", "seed"}
        if extra:
            raise DomainError(f"unknown generator spec fields: {sorted(extra)}")
        if "kind" not in data:
            raise DomainError("generator spec needs a kind")
        return cls(
            kind=data["kind"],
            params=dict(data.get("params", {})),
            alpha=float(data.get("alpha", 0.0)),
            omega=float(data.get("omega", 1.0)),
            seed=data.get("seed"),
        )

    def to_dict(self) -> dict[str, Any]:
        return {"kind": self.kind, "params": dict(self.params), "alpha": self.alpha,
                "omega": self.omega, "seed": self.seed}


def generate(spec: GeneratorSpec | Iterable[GeneratorSpec]) -> LinkStream:
    """Stream for one spec, or the union of several."""
    if not isinstance(spec, GeneratorSpec):
        parts = [generate(s) for s in spec]
        return combine(parts)
    p = dict(spec.params)
    bounds = {"alpha": spec.alpha, "omega": spec.omega}
    try:
        if spec.kind == "periodic":
            return gen_periodic(p.pop("u"), p.pop("v"), **p, **bounds)
        if spec.kind == "poisson":
            seed = 0 if spec.seed is None else spec.seed
            return gen_poisson(p.pop("u"), p.pop("v"), **p, **bounds, seed=seed)
        if spec.kind == "burst":
            return gen_burst(p.pop("u"), p.pop("v"), **p, **bounds)
        if spec.kind == "star":
            return gen_star(**p, **bounds)
        if spec.kind == "clique":
            return gen_clique(**p, **bounds)
    except (KeyError, TypeError) as exc:
        raise DomainError(f"bad parameters for {spec.kind!r} generator: {exc}") from None
    raise DomainError(f"unknown generator kind {spec.kind!r}; expected one of {KINDS}")


def random_pair_fixture(rng: np.random.Generator, kind: str | None = None) -> LinkStream:
    """One-pair stream of a random kind and shape, for cross-checks."""
    kind = kind or rng.choice(["poisson", "periodic", "burst"])
    alpha = float(rng.uniform(0, 1000))
    omega = alpha + float(10 ** rng.uniform(1, 6))
    duration = omega - alpha
    if kind == "poisson":
        rate = float(10 ** rng.uniform(0, 2.5)) / duration
        return gen_poisson("a", "b", rate, alpha, omega, seed=int(rng.integers(2**31)))
    if kind == "periodic":
        period = duration / float(rng.uniform(0.5, 200))
        phase = float(rng.uniform(0, period))
        return gen_periodic("a", "b", period, phase, alpha, omega)
    start = float(rng.uniform(alpha, omega))
    length = float(rng.uniform(0, omega - start))
    return gen_burst("a", "b", start, length, int(rng.integers(1, 50)), alpha, omega)
