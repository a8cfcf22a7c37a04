"""
enumeration.py — Exhaustive classification of degree-n irreducibles into S_{i,j}(n).

Candidates are f = x^n + (middle bits m)·x + 1 with m in [0, 2^(n-1)).
Irreducibles of degree >= 2 have an odd number of terms (otherwise x+1
divides them), so only m with odd popcount is tested. The candidate range
is cut into contiguous chunks; each chunk returns four counts that merge
by addition.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

import numpy as np

from . import golden, kernels
from .config import assert_enum_budget
from .gf2x import ALL_BUCKETS, Bucket, Poly
from .parallel import chunk_ranges, run_chunks

log = logging.getLogger(__name__)

_CHUNK = 1 << 16


@dataclass(frozen=True)
class BucketCounts:
    n: int
    counts: dict[Bucket, int]
    method: str = "enumerate"
    elapsed: float = 0.0

    @property
    def cells(self) -> tuple[int, int, int, int]:
        return tuple(self.counts.get(b, 0) for b in ALL_BUCKETS)  # type: ignore[return-value]

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def __getitem__(self, bucket: Bucket) -> int:
        return self.counts.get(bucket, 0)


def _irreducible_lanes(n: int, lo: int, hi: int) -> np.ndarray:
    """Irreducible candidates whose middle bits lie in [lo, hi)."""
    middle = np.arange(lo, hi, dtype=kernels.U64)
    middle = middle[kernels.parity(middle) == 1]
    f = (middle << 1) | ((1 << n) | 1)
    return f[kernels.rabin_lanes(f, n)]


def _bucket_index(f: np.ndarray, n: int) -> np.ndarray:
    # ALL_BUCKETS order: index = 2·trace + cotrace
    return (((f >> (n - 1)) & 1) * 2 + ((f >> 1) & 1)).astype(np.int64)


def _count_chunk(task: tuple[int, int, int]) -> tuple[int, ...]:
    n, lo, hi = task
    f = _irreducible_lanes(n, lo, hi)
    return tuple(int(c) for c in np.bincount(_bucket_index(f, n), minlength=4))


def _collect_chunk(task: tuple[int, int, int, int]) -> list[int]:
    n, lo, hi, index = task
    f = _irreducible_lanes(n, lo, hi)
    return [int(v) for v in f[_bucket_index(f, n) == index]]


def _tasks(n: int, long_run: bool) -> list[tuple[int, int]]:
    if n < 2:
        raise ValueError(f"buckets are defined for n >= 2, got {n}")
    assert_enum_budget(n, long_run)
    return chunk_ranges(0, 1 << (n - 1), _CHUNK)


def classify_all(n: int, parallelism: int = 1, *, long_run: bool = False) -> BucketCounts:
    """Count every degree-n irreducible into its bucket."""
    ranges = _tasks(n, long_run)
    start = time.perf_counter()
    totals = [0, 0, 0, 0]
    for partial in run_chunks(_count_chunk, [(n, lo, hi) for lo, hi in ranges], parallelism):
        totals = [t + p for t, p in zip(totals, partial, strict=True)]
    elapsed = time.perf_counter() - start
    log.info(
        "classify_all(%d): %s in %.3fs (%d chunks, parallelism %d)",
        n, totals, elapsed, len(ranges), parallelism,
    )
    return BucketCounts(n, dict(zip(ALL_BUCKETS, totals, strict=True)), elapsed=elapsed)


def enumerate_bucket(
    n: int, bucket: Bucket, parallelism: int = 1, *, long_run: bool = False
) -> list[Poly]:
    """The members of S_{i,j}(n), sorted by bit pattern."""
    ranges = _tasks(n, long_run)
    index = ALL_BUCKETS.index(bucket)
    tasks = [(n, lo, hi, index) for lo, hi in ranges]
    members: list[int] = []
    for part in run_chunks(_collect_chunk, tasks, parallelism):
        members.extend(part)
    return [Poly(f) for f in sorted(members)]


# ── Table verification ────────────────────────────────────────────────────────


@dataclass(frozen=True)
class RowCheck:
    n: int
    expected: tuple[int, int, int, int] | None
    observed: BucketCounts

    @property
    def mismatches(self) -> list[str]:
        if self.expected is None:
            return ["no reference row"]
        return [
            f"{b.key}: expected {e}, got {o}"
            for b, e, o in zip(ALL_BUCKETS, self.expected, self.observed.cells, strict=True)
            if e != o
        ]

    @property
    def passed(self) -> bool:
        return not self.mismatches


@dataclass
class TableReport:
    rows: list[RowCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def failures(self) -> list[RowCheck]:
        return [r for r in self.rows if not r.passed]


def verify_table(
    n_min: int, n_max: int, parallelism: int = 1, *, long_run: bool = False
) -> TableReport:
    """Classify each degree in [n_min, n_max] and compare with the bundled table."""
    if n_min > n_max:
        raise ValueError(f"empty degree range {n_min}..{n_max}")
    if n_min < 2:
        raise ValueError(f"buckets are defined for n >= 2, got {n_min}")
    assert_enum_budget(n_max, long_run)
    report = TableReport()
    for n in range(n_min, n_max + 1):
        row = RowCheck(n, golden.get_row(n), classify_all(n, parallelism, long_run=long_run))
        if not row.passed:
            log.warning("degree %d: %s", n, "; ".join(row.mismatches))
        report.rows.append(row)
    return report
