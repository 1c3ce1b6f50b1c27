"""Worker-thread plumbing for the shardable search kernels.

RAINBOW_THREADS caps the worker count (0 = one per CPU; unset = 1). Shards
are always merged in shard order, so results are identical for any worker
count.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

S = TypeVar("S")
R = TypeVar("R")


def worker_count() -> int:
    raw = os.environ.get("RAINBOW_THREADS")
    if raw is None:
        return 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"RAINBOW_THREADS must be an integer, got {raw!r}") from None
    if value < 0:
        raise ValueError(f"RAINBOW_THREADS must be >= 0, got {value}")
    if value == 0:
        return os.cpu_count() or 1
    return value


def map_shards(fn: Callable[[S], R], shards: Iterable[S]) -> list[R]:
    """Apply fn to each shard, results in shard order."""
    shards = list(shards)
    workers = worker_count()
    if workers <= 1 or len(shards) <= 1:
        return [fn(s) for s in shards]
    with ThreadPoolExecutor(max_workers=min(workers, len(shards))) as pool:
        return list(pool.map(fn, shards))
