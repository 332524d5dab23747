"""Command-line interface.

Exit status: 0 on success, 1 on usage errors, 2 on data errors (unparsable
trace, invalid bounds or parameters, failed verification).
"""

from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import IO, Iterator, Sequence

import numpy as np

from . import io as tio
from .density import pair_density
from .errors import LinkStreamError
from .oracle import exact_density_oracle, mc_density_oracle
from .profile import (
    DEFAULT_PER_RATIO,
    DEFAULT_RATIO,
    DEFAULT_THRESHOLD,
    ccdf,
    characteristic_time,
    neighborhood_profile,
    node_characteristic_times,
    node_profile,
    pair_characteristic_times,
    pair_profile,
    stream_grid,
    stream_profile,
)
from .roles import RuleParams, classify_roles, degree_vs_tau_cc
from .stream import LinkStream, build_stream, contact_series
from .synth import KINDS, GeneratorSpec, generate, random_pair_fixture

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
VERIFY_TOL = 1e-9


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse exits with 2 by default
        raise UsageError(message)


def _trace_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="edge list with rows 't u v'")
    p.add_argument("--format", choices=sorted(tio.DELIMITERS), default="space")
    p.add_argument("--header", action="store_true", help="first data row is a header")
    p.add_argument("--time-unit", choices=["seconds", "epoch"], default="seconds")
    p.add_argument("--lenient", action="store_true", help="skip malformed rows instead of failing")
    p.add_argument("--alpha", type=float, help="capture start (default: first timestamp)")
    p.add_argument("--omega", type=float, help="capture end (default: last timestamp)")


def _grid_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--grid-min", type=float, default=1.0)
    p.add_argument("--grid-max", type=float, help="default: stream duration")
    p.add_argument("--grid-ratio", type=float, default=DEFAULT_RATIO)
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--variation-per", type=float, default=DEFAULT_PER_RATIO,
                   help="scale each profile step to a change of delta by this factor; 0 keeps raw steps")
    p.add_argument("--workers", type=int, default=1)


def _out_option(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output directory (default: standard output)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="linkdensity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("pair-density", help="density of one pair at one delta")
    _trace_options(p)
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--delta", type=float, required=True)

    p = sub.add_parser("profile", help="density over the delta grid")
    _trace_options(p)
    _grid_options(p)
    _out_option(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--pair", nargs=2, metavar=("U", "V"))
    which.add_argument("--node")
    which.add_argument("--neighborhood", metavar="NODE", help="delta-clustering coefficient of NODE")
    which.add_argument("--stream", action="store_true")

    p = sub.add_parser("char-times", help="characteristic times and their CCDF")
    _trace_options(p)
    _grid_options(p)
    _out_option(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--pairs", action="store_true")
    which.add_argument("--nodes", action="store_true")

    p = sub.add_parser("clustering", help="degree vs tau-clustering coefficient")
    _trace_options(p)
    _grid_options(p)
    _out_option(p)

    p = sub.add_parser("report", help="per-node statistics and role labels (JSON)")
    _trace_options(p)
    _grid_options(p)
    _out_option(p)
    defaults = RuleParams()
    p.add_argument("--star-degree", type=int, default=defaults.star_degree)
    p.add_argument("--star-cc", type=float, default=defaults.star_cc)
    p.add_argument("--dense-cc", type=float, default=defaults.dense_cc)
    p.add_argument("--periodic-frac", type=float, default=defaults.periodic_frac)
    p.add_argument("--ephemeral-frac", type=float, default=defaults.ephemeral_frac)

    p = sub.add_parser("synth", help="write a generated fixture as a trace")
    p.add_argument("kind", nargs="?", choices=KINDS)
    p.add_argument("--config", help="JSON generator spec, or a list of specs")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--alpha", type=float, default=0.0)
    p.add_argument("--omega", type=float, default=86400.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=sorted(tio.DELIMITERS), default="space")
    _out_option(p)

    p = sub.add_parser("verify", help="cross-check the density formula against the oracles")
    p.add_argument("input", nargs="?", help="trace to check (default: random fixtures)")
    p.add_argument("--format", choices=sorted(tio.DELIMITERS), default="space")
    p.add_argument("--header", action="store_true")
    p.add_argument("--time-unit", choices=["seconds", "epoch"], default="seconds")
    p.add_argument("--lenient", action="store_true")
    p.add_argument("--alpha", type=float)
    p.add_argument("--omega", type=float)
    p.add_argument("--fixtures", type=int, default=100)
    p.add_argument("--kind", choices=["poisson", "periodic", "burst", "mixed"], default="poisson")
    p.add_argument("--deltas", type=int, default=5, help="random deltas per pair")
    p.add_argument("--mc-samples", type=int, default=0, help="also run the Monte Carlo oracle")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _load(args) -> LinkStream:
    fmt = tio.TraceFormat(args.format, args.header, args.time_unit)
    parsed = tio.read_trace(args.input, fmt, args.lenient)
    if parsed.skipped:
        print(f"skipped {parsed.skipped} malformed rows", file=sys.stderr)
    L = build_stream(parsed.events, args.alpha, args.omega)
    source = "observed min/max timestamp" if L.bounds_from_data else "given"
    print(
        f"# alpha={tio.fmt_num(L.alpha)} omega={tio.fmt_num(L.omega)} ({source}); "
        f"{len(L)} events, {len(L.nodes)} nodes, {L.dropped_self_loops} self-loops dropped",
        file=sys.stderr,
    )
    return L


def _grid(args, L: LinkStream):
    return stream_grid(L, args.grid_min, args.grid_ratio, args.grid_max)


def _per_ratio(args) -> float | None:
    return args.variation_per if args.variation_per > 0 else None


@contextlib.contextmanager
def _sink(args, name: str, stdout: IO[str]) -> Iterator[IO[str]]:
    if not args.out:
        yield stdout
        return
    os.makedirs(args.out, exist_ok=True)
    with open(os.path.join(args.out, name), "w", newline="") as fh:
        yield fh


def _cmd_pair_density(args, stdout) -> int:
    L = _load(args)
    series = contact_series(L, (args.u, args.v))
    stdout.write(tio.fmt_num(pair_density(series, args.delta, L.duration)) + "\n")
    return EXIT_OK


def _cmd_profile(args, stdout) -> int:
    L = _load(args)
    grid = _grid(args, L)
    if args.pair:
        prof, name = pair_profile(L, tuple(args.pair), grid), "profile_pair.csv"
    elif args.node:
        prof, name = node_profile(L, args.node, grid), "profile_node.csv"
    elif args.neighborhood:
        prof, name = neighborhood_profile(L, args.neighborhood, grid), "profile_neighborhood.csv"
    else:
        prof, name = stream_profile(L, grid), "profile_stream.csv"
    with _sink(args, name, stdout) as out:
        tio.write_profile(prof, out)
    ct = characteristic_time(prof, args.threshold, _per_ratio(args))
    if ct is not None:
        print(f"# characteristic time {tio.fmt_num(ct.tau)} (variation {ct.variation:.4g})",
              file=sys.stderr)
    return EXIT_OK


def _cmd_char_times(args, stdout) -> int:
    L = _load(args)
    grid = _grid(args, L)
    if args.pairs:
        found = pair_characteristic_times(L, grid, args.threshold, _per_ratio(args), args.workers)
        items = [(str(k), ct) for k, ct in found.items()]
        prefix = "pairs"
    else:
        found = node_characteristic_times(L, grid, args.threshold, _per_ratio(args), args.workers)
        items = list(found.items())
        prefix = "nodes"
    taus = [ct.tau for _, ct in items if ct is not None]
    if not taus:
        print("no item has a characteristic time above the threshold", file=sys.stderr)
        return EXIT_DATA
    with _sink(args, f"ccdf_{prefix}.csv", stdout) as out:
        tio.write_ccdf(ccdf(taus), out)
    if args.out:
        with _sink(args, f"char_times_{prefix}.csv", stdout) as out:
            tio.write_char_times(items, out)
    return EXIT_OK


def _cmd_clustering(args, stdout) -> int:
    L = _load(args)
    pts = degree_vs_tau_cc(L, _grid(args, L), args.threshold, _per_ratio(args), args.workers)
    with _sink(args, "clustering.csv", stdout) as out:
        tio.write_clustering(pts, out)
    return EXIT_OK


def _cmd_report(args, stdout) -> int:
    L = _load(args)
    params = RuleParams(args.star_degree, args.star_cc, args.dense_cc,
                        args.periodic_frac, args.ephemeral_frac)
    report = classify_roles(L, _grid(args, L), params, args.threshold, _per_ratio(args), args.workers)
    with _sink(args, "report.json", stdout) as out:
        tio.write_report(report, out)
    return EXIT_OK


def _param_value(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text.split(",") if "," in text else text


def _cmd_synth(args, stdout) -> int:
    if args.config:
        with open(args.config) as fh:
            data = json.load(fh)
        specs = [GeneratorSpec.from_dict(d) for d in (data if isinstance(data, list) else [data])]
    elif args.kind:
        params = {}
        for item in args.param:
            key, sep, value = item.partition("=")
            if not sep:
                raise UsageError(f"--param expects KEY=VALUE, got {item!r}")
            params[key] = _param_value(value)
        specs = [GeneratorSpec(args.kind, params, args.alpha, args.omega, args.seed)]
    else:
        raise UsageError("synth needs a KIND or --config")
    L = generate(specs[0] if len(specs) == 1 else specs)
    with _sink(args, "trace.txt", stdout) as out:
        out.write(f"# alpha={tio.fmt_num(L.alpha)} omega={tio.fmt_num(L.omega)}\n")
        tio.write_trace(L.raw_events(), out, tio.TraceFormat(args.format))
    return EXIT_OK


def _cmd_verify(args, stdout) -> int:
    rng = np.random.default_rng(args.seed)
    if args.input:
        streams = [_load(args)]
    else:
        kind = None if args.kind == "mixed" else args.kind
        streams = [random_pair_fixture(rng, kind) for _ in range(args.fixtures)]
    worst = 0.0
    checks = 0
    mc_out = 0
    for L in streams:
        if not L.duration > 0:
            continue
        for key in L.pairs() or []:
            series = contact_series(L, key)
            for delta in rng.uniform(0, L.duration, size=args.deltas):
                exact = exact_density_oracle(series, delta, L.alpha, L.omega).value
                worst = max(worst, abs(pair_density(series, delta, L.duration) - exact))
                checks += 1
                if args.mc_samples:
                    est = mc_density_oracle(series, delta, L.alpha, L.omega, args.mc_samples,
                                            int(rng.integers(2**31)))
                    se = (exact * (1 - exact) / args.mc_samples) ** 0.5
                    mc_out += abs(est.value - exact) > 3 * se
    stdout.write(f"checks {checks}\nmax_abs_diff {worst:.3e}\n")
    if args.mc_samples:
        stdout.write(f"mc_outside_3se {mc_out}\n")
    ok = worst <= VERIFY_TOL
    stdout.write("PASS\n" if ok else "FAIL\n")
    return EXIT_OK if ok else EXIT_DATA


COMMANDS = {
    "pair-density": _cmd_pair_density,
    "profile": _cmd_profile,
    "char-times": _cmd_char_times,
    "clustering": _cmd_clustering,
    "report": _cmd_report,
    "synth": _cmd_synth,
    "verify": _cmd_verify,
}


def run_cli(argv: Sequence[str] | None = None, stdout: IO[str] | None = None) -> int:
    stdout = stdout or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, stdout)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (LinkStreamError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA


def main() -> None:
    sys.exit(run_cli())
