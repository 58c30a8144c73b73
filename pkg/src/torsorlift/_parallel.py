"""Order-preserving map over independent chunks, optionally in worker processes."""
from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def pmap(fn: Callable[[T], R], items: Sequence[T], workers: int = 1) -> list[R]:
    """``[fn(x) for x in items]``; results come back in input order for any ``workers``.

    ``fn`` and the items must be picklable when ``workers > 1``.
    """
    items = list(items)
    if workers <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    ctx = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=min(workers, len(items)), mp_context=ctx) as pool:
        return list(pool.map(fn, items))


def chunk(seq: Sequence[T], parts: int) -> list[list[T]]:
    """Split ``seq`` into at most ``parts`` contiguous nonempty pieces."""
    seq = list(seq)
    parts = max(1, min(parts, len(seq)))
    size, extra = divmod(len(seq), parts)
    out, start = [], 0
    for k in range(parts):
        end = start + size + (1 if k < extra else 0)
        out.append(seq[start:end])
        start = end
    return [c for c in out if c]
