"""
golden.py — Bundled reference counts of S_{i,j}(n) for 2 <= n <= 32.

Loads data/reference_counts.yaml once so verification never needs a long
recomputation.
"""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path

import yaml

from .gf2x import ALL_BUCKETS, Bucket

_DATA_DIR = Path(__file__).parent.parent / "data"


@lru_cache(maxsize=1)
def _load_table() -> dict[int, tuple[int, int, int, int]]:
    path = _DATA_DIR / "reference_counts.yaml"
    if not path.exists():
        return {}
    data = yaml.safe_load(path.read_text()) or {}
    rows = data.get("rows", {}) if isinstance(data, dict) else {}
    table = {}
    for n, cells in rows.items():
        if len(cells) != 4:
            raise ValueError(f"{path.name}: row {n} must have four counts, got {cells!r}")
        table[int(n)] = tuple(int(c) for c in cells)
    return table


def degrees() -> list[int]:
    """Degrees present in the bundled table, ascending."""
    return sorted(_load_table())


def get_row(n: int) -> tuple[int, int, int, int] | None:
    """
    Return (s00, s01, s10, s11) for degree n.

    Returns None if the degree is not in the bundled table.
    """
    return _load_table().get(n)


def get_bucket(n: int, bucket: Bucket) -> int | None:
    row = get_row(n)
    return None if row is None else row[ALL_BUCKETS.index(bucket)]
