"""Edge-list trace parsing and CSV/JSON writers for analysis results."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from typing import IO, Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DomainError, TraceParseError
from .profile import Ccdf, DensityProfile
from .roles import ClusteringPoint, RoleReport

DELIMITERS = {"space": None, "comma": ","}


def fmt_num(x: float) -> str:
    """Shortest text that round-trips the float exactly (at least 12 digits kept)."""
    return repr(float(x))


@dataclass(frozen=True)
class TraceFormat:
    delimiter: str = "space"
    header: bool = False
    time_unit: str = "seconds"  # or "epoch" (integer seconds)

    def __post_init__(self) -> None:
        if self.delimiter not in DELIMITERS:
            raise ValueError(f"delimiter must be one of {sorted(DELIMITERS)}")
        if self.time_unit not in ("seconds", "epoch"):
            raise ValueError("time_unit must be 'seconds' or 'epoch'")


class ParsedTrace(NamedTuple):
    events: list[tuple[float, str, str]]
    skipped: int


def _lines(source: IO | Iterable) -> Iterable[str]:
    for raw in source:
        yield raw.decode("utf-8") if isinstance(raw, bytes) else raw


def parse_trace(source: IO | Iterable, fmt: TraceFormat = TraceFormat(),
                lenient: bool = False) -> ParsedTrace:
    """Read ``t u v`` rows in file order.

    Blank lines and ``#`` comments are ignored.  A malformed row raises
    :class:`TraceParseError` unless ``lenient`` is set, in which case it is
    skipped and counted.
    """
    sep = DELIMITERS[fmt.delimiter]
    events = []
    skipped = 0
    header_pending = fmt.header
    for lineno, line in enumerate(_lines(source), start=1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        if header_pending:
            header_pending = False
            continue
        cols = text.split(sep)
        if sep is not None:
            cols = [c.strip() for c in cols]
        try:
            if len(cols) != 3:
                raise TraceParseError(f"expected 3 columns (t, u, v), got {len(cols)}", lineno)
            t_text, u, v = cols
            try:
                t = float(int(t_text)) if fmt.time_unit == "epoch" else float(t_text)
            except ValueError:
                raise TraceParseError(f"bad timestamp {t_text!r}", lineno, 1) from None
            if not math.isfinite(t) or t < 0:
                raise TraceParseError(f"timestamp {t_text!r} must be finite and non-negative", lineno, 1)
            for col, label in ((2, u), (3, v)):
                if not label:
                    raise TraceParseError("empty node label", lineno, col)
        except TraceParseError:
            if not lenient:
                raise
            skipped += 1
            continue
        events.append((t, u, v))
    return ParsedTrace(events, skipped)


def read_trace(path: str, fmt: TraceFormat = TraceFormat(), lenient: bool = False) -> ParsedTrace:
    with open(path, "rb") as fh:
        return parse_trace(fh, fmt, lenient)


def write_trace(events: Iterable[tuple[float, str, str]], sink: IO[str],
                fmt: TraceFormat = TraceFormat()) -> None:
    sep = " " if fmt.delimiter == "space" else ","
    if fmt.header:
        sink.write(sep.join(("t", "u", "v")) + "\n")
    for t, u, v in events:
        sink.write(f"{fmt_num(t)}{sep}{u}{sep}{v}\n")


def write_profile(profile: DensityProfile, sink: IO[str]) -> None:
    if len(profile) == 0:
        raise DomainError("refusing to write an empty profile")
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["delta", "density"])
    for d, v in zip(profile.grid.points, profile.values):
        w.writerow([fmt_num(d), fmt_num(v)])


def read_profile(source: IO[str]) -> tuple[np.ndarray, np.ndarray]:
    rows = list(csv.reader(source))
    if not rows or rows[0] != ["delta", "density"]:
        raise DomainError("not a profile CSV")
    data = np.array([[float(a), float(b)] for a, b in rows[1:]], dtype=np.float64)
    return data[:, 0], data[:, 1]


def write_ccdf(c: Ccdf, sink: IO[str]) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["x", "count"])
    for x, y in c.points:
        w.writerow([fmt_num(x), y])


def write_char_times(items: Sequence[tuple[str, object]], sink: IO[str]) -> None:
    """One row per item: key, tau, variation, grid index (empty when absent)."""
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["item", "tau", "variation", "grid_index"])
    for key, ct in items:
        if ct is None:
            w.writerow([key, "", "", ""])
        else:
            w.writerow([key, fmt_num(ct.tau), fmt_num(ct.variation), ct.grid_index])


def write_clustering(points: Sequence[ClusteringPoint], sink: IO[str]) -> None:
    w = csv.writer(sink, lineterminator="\n")
    w.writerow(["node", "degree", "tau_cc"])
    for p in points:
        w.writerow([p.node, p.degree, fmt_num(p.tau_cc)])


def write_report(report: RoleReport, sink: IO[str]) -> None:
    if not report.nodes:
        raise DomainError("refusing to write a report for an empty stream")
    if sum(report.summary.values()) != len(report.nodes):
        raise DomainError("report summary does not match its node list")
    json.dump(report.to_dict(), sink, indent=2, sort_keys=False)
    sink.write("\n")


def to_text(writer, obj) -> str:
    buf = io.StringIO()
    writer(obj, buf)
    return buf.getvalue()
