"""Chunked execution with a result order that never depends on the pool."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")


def split_range(start: int, stop: int, parts: int) -> list[tuple[int, int]]:
    """Cut [start, stop) into ``parts`` contiguous, possibly empty, pieces."""
    if parts < 1:
        raise ValueError("parallelism must be >= 1")
    size = stop - start
    edges = [start + size * i // parts for i in range(parts + 1)]
    return list(zip(edges[:-1], edges[1:]))


def run_chunks(func: Callable[..., T], chunks: Sequence[tuple], parallel: int = 1) -> list[T]:
    """Apply ``func(*chunk)`` to every chunk, in a process pool when parallel > 1."""
    if parallel < 1:
        raise ValueError("parallelism must be >= 1")
    if parallel == 1 or len(chunks) <= 1:
        return [func(*c) for c in chunks]
    with ProcessPoolExecutor(max_workers=parallel) as pool:
        futures = [pool.submit(func, *c) for c in chunks]
        return [f.result() for f in futures]
