"""
sri.py — Self-reciprocal irreducibles with trace 1 and the parity of |S_{1,1}(n)|.

The reciprocal swaps trace and cotrace, so it permutes S_{1,1}(n); its
fixed points are SRI_1(n), giving |S_{1,1}(n)| ≡ |SRI_1(n)| (mod 2).
For even n every member of SRI_1(n) is f'^Q for a unique f' of degree n/2,
and f ↦ ((f')*)^Q pairs SRI_1(n) off with fixed points SRI_1(n/2). Odd
n > 1 has no self-reciprocal irreducibles, so |S_{1,1}(n)| is odd exactly
when n is a power of two.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .config import assert_enum_budget
from .enumeration import enumerate_bucket
from .gf2x import S11, X_PLUS_1, Poly, _is_irreducible, reciprocal
from .transforms import is_self_reciprocal, q_root, q_transform

log = logging.getLogger(__name__)

_SCAN_MAX = 16


@dataclass
class SriPartition:
    """Members of an involution's domain split into 2-cycles and fixed points."""

    n: int
    pairs: list[tuple[Poly, Poly]] = field(default_factory=list)
    fixed: list[Poly] = field(default_factory=list)

    @property
    def size(self) -> int:
        return 2 * len(self.pairs) + len(self.fixed)

    def members(self) -> list[Poly]:
        return sorted([*self.fixed, *(p for pair in self.pairs for p in pair)])


def enumerate_sri1(n: int, parallelism: int = 1) -> list[Poly]:
    """
    SRI_1(n), sorted. Even n is built from the preimages: the irreducibles of
    degree n/2 with trace and cotrace 1 (just x+1 when n/2 = 1).
    """
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    if n == 1:
        return [X_PLUS_1]
    if n % 2:
        return []
    m = n // 2
    assert_enum_budget(m)
    preimages = [X_PLUS_1] if m == 1 else enumerate_bucket(m, S11, parallelism)
    return sorted(q_transform(g) for g in preimages)


def enumerate_sri1_scan(n: int) -> list[Poly]:
    """SRI_1(n) by testing every palindrome of degree n. Oracle for small n."""
    if not 1 <= n <= _SCAN_MAX:
        raise ValueError(f"the palindrome scan supports 1 <= n <= {_SCAN_MAX}, got {n}")
    if n == 1:
        return [X_PLUS_1]
    found = []
    for f in range(1 << n | 1, 1 << (n + 1), 2):
        p = Poly(f)
        if (f >> (n - 1)) & 1 and is_self_reciprocal(p) and _is_irreducible(f):
            found.append(p)
    return found


def sri_pairing(n: int, parallelism: int = 1) -> SriPartition:
    """Partition SRI_1(n), n even, by f ↦ ((q_root f)*)^Q."""
    if n < 2 or n % 2:
        raise ValueError(f"the pairing is defined for even n >= 2, got {n}")
    partition = SriPartition(n)
    seen: set[Poly] = set()
    for f in enumerate_sri1(n, parallelism):
        if f in seen:
            continue
        root = q_root(f)
        if is_self_reciprocal(root):
            partition.fixed.append(f)
            seen.add(f)
            continue
        g = q_transform(reciprocal(root))
        partition.pairs.append((min(f, g), max(f, g)))
        seen.update((f, g))
    log.info("sri_pairing(%d): %d pairs, %d fixed", n, len(partition.pairs), len(partition.fixed))
    return partition


def reciprocal_split(n: int, parallelism: int = 1) -> SriPartition:
    """The reciprocal acting on S_{1,1}(n): pairs (f, f*) and fixed points SRI_1(n)."""
    partition = SriPartition(n)
    for f in enumerate_bucket(n, S11, parallelism):
        r = reciprocal(f)
        if r == f:
            partition.fixed.append(f)
        elif f < r:
            partition.pairs.append((f, r))
    return partition


def descent_chain(n: int, parallelism: int = 1) -> list[tuple[int, int]]:
    """(degree, |SRI_1(degree)|) for n, n/2, n/4, ... down to the odd part of n."""
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    chain = []
    d = n
    while True:
        chain.append((d, len(enumerate_sri1(d, parallelism))))
        if d % 2:
            return chain
        d //= 2


def parity_verdict(n: int) -> int:
    """1 iff n is a power of two: the parity of |S_{1,1}(n)|."""
    if n < 2:
        raise ValueError(f"buckets are defined for n >= 2, got {n}")
    return int(n & (n - 1) == 0)
