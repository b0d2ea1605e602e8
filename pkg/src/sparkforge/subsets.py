"""Lexicographic subset enumeration and deterministic chunked parallel maps."""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ProcessPoolExecutor
from math import comb
from typing import Callable, Iterator, Sequence, TypeVar

R = TypeVar("R")

DEFAULT_CHUNK = 64


def unrank_subset(pool: int, choose: int, rank: int) -> tuple[int, ...]:
    """The ``rank``-th ``choose``-subset of range(pool) in lexicographic order."""
    total = comb(pool, choose)
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} outside [0, {total})")
    out = []
    x = 0
    for remaining in range(choose, 0, -1):
        while True:
            # subsets whose next element is x
            block = comb(pool - x - 1, remaining - 1)
            if rank < block:
                break
            rank -= block
            x += 1
        out.append(x)
        x += 1
    return tuple(out)


def enumerate_subsets(pool: int, choose: int, start: int = 0, stop: int | None = None) -> Iterator[tuple[int, ...]]:
    """Yield choose-subsets of range(pool) in lexicographic order, ranks [start, stop)."""
    if not 0 <= choose <= pool:
        raise ValueError(f"need 0 <= choose <= pool, got choose={choose}, pool={pool}")
    total = comb(pool, choose)
    stop = total if stop is None else min(stop, total)
    if start >= stop:
        return
    first = unrank_subset(pool, choose, start)
    it = itertools.combinations(range(pool), choose)
    if start == 0:
        yield from itertools.islice(it, stop)
        return
    # resume from an arbitrary rank without replaying the prefix
    yield first
    cur = list(first)
    for _ in range(stop - start - 1):
        i = choose - 1
        while cur[i] == pool - choose + i:
            i -= 1
        cur[i] += 1
        for j in range(i + 1, choose):
            cur[j] = cur[j - 1] + 1
        yield tuple(cur)


def chunk_ranges(total: int, chunk_size: int = DEFAULT_CHUNK, start: int = 0) -> list[tuple[int, int]]:
    if chunk_size < 1:
        raise ValueError("chunk_size must be positive")
    return [(lo, min(lo + chunk_size, total)) for lo in range(start, total, chunk_size)]


def default_workers() -> int:
    env = os.environ.get("SPARKFORGE_WORKERS")
    if env:
        return max(1, int(env))
    return 1


def ordered_map(
    fn: Callable[..., R],
    jobs: Sequence[tuple],
    workers: int = 1,
    should_stop: Callable[[], bool] | None = None,
) -> Iterator[R]:
    """Apply ``fn(*job)`` to each job, yielding results in job order.

    With ``workers > 1`` jobs run in a process pool, but results are still
    released strictly in submission order, so a consumer can stop between
    jobs and know exactly which prefix finished.
    """
    if workers <= 1:
        for job in jobs:
            if should_stop is not None and should_stop():
                return
            yield fn(*job)
        return
    with ProcessPoolExecutor(max_workers=workers) as ex:
        futures = [ex.submit(fn, *job) for job in jobs]
        try:
            for fut in futures:
                if should_stop is not None and should_stop():
                    return
                yield fut.result()
        finally:
            for fut in futures:
                fut.cancel()
