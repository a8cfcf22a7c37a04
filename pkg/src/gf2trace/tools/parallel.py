"""
parallel.py — Disjoint range chunking and a process-pool runner.

Work is always a list of independent tasks covering contiguous, disjoint
integer ranges. Results come back unordered; callers merge them with an
associative, commutative reduction, so totals never depend on the worker
count or on scheduling.
"""

from __future__ import annotations

import logging
import multiprocessing as mp
from collections.abc import Callable, Iterator, Sequence
from typing import TypeVar

log = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def chunk_ranges(lo: int, hi: int, size: int) -> list[tuple[int, int]]:
    """Cut [lo, hi) into consecutive ranges of at most ``size`` integers."""
    if size < 1:
        raise ValueError(f"chunk size must be positive, got {size}")
    return [(start, min(start + size, hi)) for start in range(lo, hi, size)]


def _context() -> mp.context.BaseContext:
    # fork shares the parent's imported modules copy-on-write; spawn elsewhere
    try:
        return mp.get_context("fork")
    except ValueError:
        return mp.get_context()


def run_chunks(
    worker: Callable[[T], R], tasks: Sequence[T], parallelism: int = 1
) -> Iterator[R]:
    """
    Apply ``worker`` to every task, inline when parallelism is 1, otherwise in
    a process pool. Results are yielded in completion order.
    """
    if parallelism <= 1 or len(tasks) <= 1:
        for task in tasks:
            yield worker(task)
        return
    processes = min(parallelism, len(tasks))
    chunksize = max(1, len(tasks) // (processes * 4))
    log.debug("pool: %d tasks over %d processes (chunksize %d)", len(tasks), processes, chunksize)
    with _context().Pool(processes=processes) as pool:
        yield from pool.imap_unordered(worker, tasks, chunksize=chunksize)
