"""Tests for range chunking and the process-pool runner."""

from __future__ import annotations

import pytest

from gf2trace.tools.parallel import chunk_ranges, run_chunks


def _square(x: int) -> int:
    return x * x


def _span(bounds: tuple[int, int]) -> int:
    lo, hi = bounds
    return hi - lo


def test_chunk_ranges() -> None:
    assert chunk_ranges(0, 10, 4) == [(0, 4), (4, 8), (8, 10)]
    assert chunk_ranges(5, 5, 4) == []
    with pytest.raises(ValueError, match="positive"):
        chunk_ranges(0, 10, 0)


@pytest.mark.parametrize("size", [1, 2, 7, 64, 5000])
def test_chunks_are_disjoint_and_covering(size: int) -> None:
    ranges = chunk_ranges(3, 1000, size)
    assert ranges[0][0] == 3
    assert ranges[-1][1] == 1000
    for (_, hi), (lo, _) in zip(ranges, ranges[1:], strict=False):
        assert hi == lo
    assert all(0 < hi - lo <= size for lo, hi in ranges)


def test_run_chunks_inline() -> None:
    assert list(run_chunks(_square, [1, 2, 3])) == [1, 4, 9]


def test_run_chunks_pool_returns_every_result() -> None:
    """Pool results arrive unordered, so only order-free reductions are compared."""
    tasks = chunk_ranges(0, 1000, 37)
    assert sum(run_chunks(_span, tasks, parallelism=3)) == 1000
    assert sorted(run_chunks(_square, list(range(20)), parallelism=2)) == [i * i for i in range(20)]
