"""Keyed map over a process pool with deterministic, key-ordered output."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Hashable, Iterable, TypeVar

K = TypeVar("K", bound=Hashable)
R = TypeVar("R")

_payload: Any = None


def _init(payload: Any) -> None:
    global _payload
    _payload = payload


def _run_chunk(fn: Callable[[Any, Any], Any], chunk: list) -> list:
    return [fn(_payload, k) for k in chunk]


def keyed_map(fn: Callable[[Any, K], R], payload: Any, keys: Iterable[K],
              workers: int = 1) -> dict[K, R]:
    """``{k: fn(payload, k)}`` in the order of ``keys``.

    ``fn`` must be a module-level function when ``workers > 1``.  The payload
    is shipped once per worker process.
    """
    keys = list(keys)
    if workers <= 1 or len(keys) < 2:
        return {k: fn(payload, k) for k in keys}
    n_chunks = min(len(keys), workers * 4)
    size = -(-len(keys) // n_chunks)
    chunks = [keys[i:i + size] for i in range(0, len(keys), size)]
    with ProcessPoolExecutor(max_workers=workers, initializer=_init, initargs=(payload,)) as ex:
        parts = list(ex.map(_run_chunk, [fn] * len(chunks), chunks))
    out: dict[K, R] = {}
    for chunk, res in zip(chunks, parts):
        out.update(zip(chunk, res))
    return out
