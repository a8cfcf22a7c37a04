"""
kernels.py — Vectorised GF(2)[x] arithmetic over uint64 batches.

Each lane of a ``numpy.uint64`` array holds one polynomial. Products of two
residues of degree < n have degree <= 2n - 2, so every kernel here is exact
for n <= 32. The scalar functions in ``gf2x`` are the oracles these kernels
are tested against.

Two flavours of reduction exist:

* fixed modulus (one field, many elements) – uses a table of x^(n+i) mod m;
* per-lane modulus (many candidate polynomials) – used by the Rabin batch
  test during enumeration.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from sympy import primefactors

from .gf2x import _SPREAD, _mod

U64 = np.uint64

_SPREAD_TABLE = np.array(_SPREAD, dtype=U64)


def parity(v: np.ndarray) -> np.ndarray:
    """Per-lane parity of the set bits, as uint64 0/1."""
    v = v ^ (v >> 32)
    v = v ^ (v >> 16)
    v = v ^ (v >> 8)
    v = v ^ (v >> 4)
    v = v ^ (v >> 2)
    v = v ^ (v >> 1)
    return v & 1


def degrees(v: np.ndarray) -> np.ndarray:
    """Per-lane degree as int64; -1 for zero lanes. Exact below 2^53."""
    return np.frexp(v.astype(np.float64))[1].astype(np.int64) - 1


def spread(a: np.ndarray, n: int) -> np.ndarray:
    """Carryless square of residues of degree < n (bit i moves to bit 2i)."""
    acc = np.zeros_like(a)
    for j in range(0, n, 8):
        acc |= _SPREAD_TABLE[(a >> j) & 0xFF] << (2 * j)
    return acc


def clmul(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Carryless product of residues of degree < n."""
    acc = np.zeros_like(a)
    for i in range(n):
        acc ^= ((b >> i) & 1) * (a << i)
    return acc


# ── Fixed modulus ─────────────────────────────────────────────────────────────


@lru_cache(maxsize=64)
def reduction_table(modulus: int) -> tuple[int, ...]:
    """x^(n+i) mod modulus for i = 0 .. n-2, where n = deg(modulus)."""
    n = modulus.bit_length() - 1
    return tuple(_mod(1 << (n + i), modulus) for i in range(max(n - 1, 0)))


def reduce_fixed(p: np.ndarray, modulus: int) -> np.ndarray:
    """Reduce products of degree <= 2n-2 modulo a fixed degree-n modulus."""
    n = modulus.bit_length() - 1
    low = p & ((1 << n) - 1)
    for i, r in enumerate(reduction_table(modulus)):
        low ^= ((p >> (n + i)) & 1) * r
    return low


def mulmod_fixed(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    """Lane-wise a * b mod modulus; inputs must already be reduced."""
    n = modulus.bit_length() - 1
    return reduce_fixed(clmul(a, b, n), modulus)


def sqmod_fixed(a: np.ndarray, modulus: int) -> np.ndarray:
    """Lane-wise a^2 mod modulus through bit spreading."""
    n = modulus.bit_length() - 1
    return reduce_fixed(spread(a, n), modulus)


def inverse_fixed(a: np.ndarray, modulus: int) -> np.ndarray:
    """
    Inverses of nonzero residues as a^(2^n - 2) = a^2 · a^4 · ... · a^(2^(n-1)).

    Lanes holding zero come back as zero.
    """
    n = modulus.bit_length() - 1
    s = a
    inv = np.ones_like(a)
    for _ in range(1, n):
        s = sqmod_fixed(s, modulus)
        inv = mulmod_fixed(inv, s, modulus)
    return np.where(a == 0, U64(0), inv)


# ── Per-lane modulus ──────────────────────────────────────────────────────────


def sqmod_lanes(h: np.ndarray, f: np.ndarray, n: int) -> np.ndarray:
    """h^2 mod f lane by lane; every f has degree exactly n."""
    acc = spread(h, n)
    for i in range(2 * n - 2, n - 1, -1):
        acc ^= ((acc >> i) & 1) * (f << (i - n))
    return acc


def gcd_is_one(u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Lane-wise test gcd(u, v) == 1 by single-step Euclidean reduction."""
    u = u.copy()
    v = v.copy()
    while True:
        active = v != 0
        if not active.any():
            break
        du = degrees(u)
        dv = degrees(v)
        swap = active & (du < dv)
        u, v = np.where(swap, v, u), np.where(swap, u, v)
        du, dv = np.where(swap, dv, du), np.where(swap, du, dv)
        active = v != 0
        shift = np.where(active, du - dv, 0).astype(U64)
        u = np.where(active, u ^ np.left_shift(v, shift), u)
    return u == 1


def rabin_lanes(f: np.ndarray, n: int) -> np.ndarray:
    """Boolean mask of the lanes of f (all degree n >= 2) that are irreducible."""
    checkpoints = {n // p for p in primefactors(n)}
    saved: dict[int, np.ndarray] = {}
    h = np.full_like(f, 0b10)
    for i in range(1, n + 1):
        h = sqmod_lanes(h, f, n)
        if i in checkpoints:
            saved[i] = h
    ok = h == 0b10
    for k in sorted(checkpoints):
        idx = np.nonzero(ok)[0]
        if idx.size == 0:
            break
        ok[idx] = gcd_is_one(saved[k][idx] ^ 0b10, f[idx])
    return ok
