"""Reference values for pair density, computed without the gap formula.

``exact_density_oracle`` measures the set of window starts whose window
holds an occurrence, as a union of intervals.  ``mc_density_oracle`` samples
window starts.  Neither shares code with :mod:`linkdensity.density`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStreamError, DomainError
from .stream import ContactSeries


@dataclass(frozen=True)
class OracleEstimate:
    value: float
    stderr: float | None = None
    samples: int | None = None


def _check(delta: float, alpha: float, omega: float) -> float:
    duration = omega - alpha
    if not duration > 0:
        raise DegenerateStreamError("capture window has zero length")
    if not 0 <= delta < duration:
        raise DomainError(f"delta={delta} must lie in [0, {duration})")
    return duration


def union_measure(intervals: list[tuple[float, float]]) -> float:
    """Total length covered by a list of closed intervals.

    >>> union_measure([(1, 2), (4, 5), (7, 8)])
    3.0
    >>> union_measure([(0, 3), (2, 5), (5, 6)])
    6.0
    """
    total = 0.0
    cur_lo = cur_hi = None
    for lo, hi in sorted(intervals):
        if hi <= lo:
            continue
        if cur_hi is None or lo > cur_hi:
            if cur_hi is not None:
                total += cur_hi - cur_lo
            cur_lo, cur_hi = lo, hi
        elif hi > cur_hi:
            cur_hi = hi
    if cur_hi is not None:
        total += cur_hi - cur_lo
    return float(total)


def exact_density_oracle(
    series: ContactSeries, delta: float, alpha: float, omega: float
) -> OracleEstimate:
    """Fraction of window starts in ``[alpha, omega - delta]`` that catch an occurrence.

    The window ``[s, s + delta]`` holds occurrence ``t`` iff ``s`` lies in
    ``[t - delta, t]``, so the covered starts are a union of such intervals.
    """
    duration = _check(delta, alpha, omega)
    last_start = omega - delta
    clipped = [(max(t - delta, alpha), min(t, last_start)) for t in series.times]
    covered = union_measure(clipped)
    return OracleEstimate(min(covered / (duration - delta), 1.0))


def mc_density_oracle(
    series: ContactSeries,
    delta: float,
    alpha: float,
    omega: float,
    samples: int = 100_000,
    seed: int | None = 0,
) -> OracleEstimate:
    """Monte Carlo estimate with its binomial standard error."""
    duration = _check(delta, alpha, omega)
    if samples < 1:
        raise DomainError("need at least one sample")
    times = np.asarray(series.times, dtype=np.float64)
    if times.size == 0:
        return OracleEstimate(0.0, 0.0, samples)
    rng = np.random.default_rng(seed)
    starts = alpha + rng.random(samples) * (duration - delta)
    i = np.searchsorted(times, starts, side="left")
    inside = i < times.size
    hit = np.zeros(samples, dtype=bool)
    hit[inside] = times[i[inside]] <= starts[inside] + delta
    p = float(hit.mean())
    return OracleEstimate(p, math.sqrt(p * (1 - p) / samples), samples)
