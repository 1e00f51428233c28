"""Small shared helpers: worker pools and deterministic chunked maps."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

_ENV_THREADS = "ALMSQ_THREADS"


def worker_count(workers: int | None = None) -> int:
    """Resolve the worker count: explicit arg, then ALMSQ_THREADS, then 1."""
    if workers is not None:
        return max(1, int(workers))
    env = os.environ.get(_ENV_THREADS)
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError(f"invalid {_ENV_THREADS} value: {env!r}")
    return 1


def det_map(fn, items, workers: int | None = None) -> list:
    """Map fn over items, possibly in parallel, preserving item order.

    Results are identical for any worker count: work items are independent
    and outputs are collected by input position.
    """
    n = worker_count(workers)
    items = list(items)
    if n <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=min(n, len(items))) as ex:
        return list(ex.map(fn, items))


def chunk_spans(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    """Split the inclusive integer range [lo, hi] into spans of fixed size.

    The split depends only on the range and the size, never on the worker
    count, so chunked results merge identically under any parallelism.
    """
    if size < 1:
        raise ValueError(f"chunk size must be >= 1, got {size}")
    return [(a, min(a + size - 1, hi)) for a in range(lo, hi + 1, size)]
