"""Order-preserving thread pool used by the partitioned sums.

All reductions downstream are exact integer sums, so results do not depend
on how work was split; ``pmap`` additionally returns results in input order.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def resolve_threads(threads: int | None = None) -> int:
    if threads is None:
        env = os.environ.get("CHARSUM_THREADS", "").strip()
        threads = int(env) if env else 1
    return max(1, int(threads))


def pmap(fn: Callable[[T], R], items: Iterable[T], threads: int | None = None) -> list[R]:
    items = list(items)
    n = resolve_threads(threads)
    if n == 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def chunks(total: int, parts: int) -> list[tuple[int, int]]:
    """Split range(total) into at most ``parts`` contiguous [start, stop) pieces."""
    parts = max(1, min(parts, total)) if total else 1
    step, extra = divmod(total, parts)
    out, start = [], 0
    for i in range(parts):
        stop = start + step + (1 if i < extra else 0)
        out.append((start, stop))
        start = stop
    return out
