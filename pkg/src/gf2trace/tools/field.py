"""
field.py — F_{2^n} as residues modulo a fixed irreducible, and the trace-pair counts.

A ``FieldCtx`` fixes the modulus and precomputes a trace mask: bit k is
Tr_n(x^k mod modulus), so by linearity Tr_n(a) is the parity of
``a & trace_mask``.

``n_counts`` tallies N_0(n), N_1(n) (nonzero elements whose trace and
inverse trace are both 0, resp. both 1) together with the Kloosterman sum
K = Σ (−1)^Tr(α + α⁻¹). Each inverse pair {α, α⁻¹} is credited from its
canonical representative (α <= α⁻¹ as bit patterns), so any partition of
the residue range gives identical totals.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .config import assert_field_budget
from .gf2x import (
    ONE,
    Poly,
    _gcdext,
    _is_irreducible,
    _mod,
    _mulmod,
    _powmod,
    _sqmod,
)
from .parallel import chunk_ranges, run_chunks

log = logging.getLogger(__name__)

MAX_CTX_DEGREE = 64
_CHUNK = 1 << 16


@dataclass(frozen=True)
class FieldCtx:
    """F_{2^n} = GF(2)[x] / (modulus) with a precomputed trace mask."""

    n: int
    modulus: Poly
    trace_mask: int

    @property
    def order(self) -> int:
        return 1 << self.n


@dataclass(frozen=True)
class TracePairCounts:
    n: int
    n0: int
    n1: int
    kloosterman: int

    def __add__(self, other: TracePairCounts) -> TracePairCounts:
        if self.n != other.n:
            raise ValueError(f"cannot merge counts for degrees {self.n} and {other.n}")
        return TracePairCounts(
            self.n, self.n0 + other.n0, self.n1 + other.n1, self.kloosterman + other.kloosterman
        )


# ── Context ───────────────────────────────────────────────────────────────────


@lru_cache(maxsize=64)
def smallest_irreducible(n: int) -> Poly:
    """Smallest irreducible bit pattern of degree n with constant term 1."""
    for f in range(1 << n | 1, 1 << (n + 1), 2):
        if _is_irreducible(f):
            return Poly(f)
    raise AssertionError(f"no irreducible of degree {n}")  # pragma: no cover


def _trace_definitional(a: int, modulus: int, n: int) -> int:
    acc = 0
    term = a
    for _ in range(n):
        acc ^= term
        term = _sqmod(term, modulus)
    if acc not in (0, 1):
        raise ArithmeticError(f"trace of 0x{a:X} is not in F_2; is 0x{modulus:X} irreducible?")
    return acc


def make_ctx(n: int, modulus: Poly | None = None) -> FieldCtx:
    """
    Build the field context for F_{2^n}.

    The modulus defaults to the smallest irreducible of degree n with
    constant term 1 (x+1 for n=1). An explicit modulus must be irreducible
    of degree n.
    """
    if not 1 <= n <= MAX_CTX_DEGREE:
        raise ValueError(f"field degree must be in 1..{MAX_CTX_DEGREE}, got {n}")
    if modulus is None:
        modulus = smallest_irreducible(n)
    elif modulus.degree != n or not _is_irreducible(modulus.coeffs):
        raise ValueError(f"modulus {modulus!r} is not an irreducible of degree {n}")
    m = modulus.coeffs
    mask = 0
    for k in range(n):
        mask |= _trace_definitional(_mod(1 << k, m), m, n) << k
    return FieldCtx(n=n, modulus=modulus, trace_mask=mask)


def _check_residue(ctx: FieldCtx, a: Poly) -> int:
    if a.coeffs >> ctx.n:
        raise ValueError(f"{a!r} is not a reduced residue for degree {ctx.n}")
    return a.coeffs


# ── Element arithmetic ────────────────────────────────────────────────────────


def mul(ctx: FieldCtx, a: Poly, b: Poly) -> Poly:
    """Product of two residues in F_2^n."""
    return Poly(_mulmod(_check_residue(ctx, a), _check_residue(ctx, b), ctx.modulus.coeffs))


def square(ctx: FieldCtx, a: Poly) -> Poly:
    """a^2 in F_2^n; the Frobenius map."""
    return Poly(_sqmod(_check_residue(ctx, a), ctx.modulus.coeffs))


def power(ctx: FieldCtx, a: Poly, e: int) -> Poly:
    """a^e in F_2^n by square-and-multiply. e must be non-negative."""
    return Poly(_powmod(_check_residue(ctx, a), e, ctx.modulus.coeffs))


def trace(ctx: FieldCtx, a: Poly) -> int:
    """Tr_n(a) as the parity of a & trace_mask."""
    return (_check_residue(ctx, a) & ctx.trace_mask).bit_count() & 1


def trace_definitional(ctx: FieldCtx, a: Poly) -> int:
    """Tr_n(a) = a + a^2 + ... + a^(2^(n-1)), computed literally."""
    return _trace_definitional(_check_residue(ctx, a), ctx.modulus.coeffs, ctx.n)


def inverse(ctx: FieldCtx, a: Poly) -> Poly:
    """a⁻¹ via the extended Euclidean algorithm."""
    value = _check_residue(ctx, a)
    if value == 0:
        raise ZeroDivisionError("zero has no inverse in a field")
    g, u, _ = _gcdext(value, ctx.modulus.coeffs)
    if g != 1:  # pragma: no cover - modulus is irreducible
        raise ArithmeticError(f"gcd(0x{value:X}, modulus) = 0x{g:X}")
    return Poly(_mod(u, ctx.modulus.coeffs))


def evaluate(ctx: FieldCtx, f: Poly, a: Poly) -> Poly:
    """f(a) in the field, by Horner's rule."""
    value = _check_residue(ctx, a)
    m = ctx.modulus.coeffs
    acc = 0
    for k in range(f.coeffs.bit_length() - 1, -1, -1):
        acc = _mulmod(acc, value, m) ^ ((f.coeffs >> k) & 1)
    return Poly(acc)


def find_root(ctx: FieldCtx, f: Poly) -> Poly | None:
    """Smallest residue that is a root of f, or None. Exhaustive; small n only."""
    assert_field_budget(ctx.n)
    for a in range(ctx.order):
        if evaluate(ctx, f, Poly(a)).coeffs == 0:
            return Poly(a)
    return None


def embedding(small: FieldCtx, big: FieldCtx) -> Callable[[Poly], Poly]:
    """
    The field homomorphism F_{2^d} → F_{2^n} (d | n) that sends the class of x
    to a root of small.modulus inside big.
    """
    if big.n % small.n:
        raise ValueError(f"F_2^{small.n} does not embed in F_2^{big.n}")
    gamma = find_root(big, small.modulus)
    if gamma is None:  # pragma: no cover - guaranteed when d | n
        raise ArithmeticError(f"{small.modulus!r} has no root in F_2^{big.n}")
    powers = [ONE]
    for _ in range(1, small.n):
        powers.append(mul(big, powers[-1], gamma))

    def embed(a: Poly) -> Poly:
        acc = 0
        for k in range(small.n):
            if (_check_residue(small, a) >> k) & 1:
                acc ^= powers[k].coeffs
        return Poly(acc)

    return embed


# ── Trace-pair counting ───────────────────────────────────────────────────────


def _tally_scalar(task: tuple[int, int, int, int, int]) -> tuple[int, int, int]:
    _, lo, hi, modulus, mask = task
    n0 = n1 = k = 0
    for a in range(lo, hi):
        _, u, _ = _gcdext(a, modulus)
        inv = _mod(u, modulus)
        if a > inv:
            continue
        weight = 1 if a == inv else 2
        t = (a & mask).bit_count() & 1
        ti = (inv & mask).bit_count() & 1
        if t == ti:
            k += weight
            if t:
                n1 += weight
            else:
                n0 += weight
        else:
            k -= weight
    return n0, n1, k


def _tally_numpy(task: tuple[int, int, int, int, int]) -> tuple[int, int, int]:
    _, lo, hi, modulus, mask = task
    a = np.arange(lo, hi, dtype=kernels.U64)
    inv = kernels.inverse_fixed(a, modulus)
    canonical = a <= inv
    weight = np.where(a == inv, 1, 2).astype(np.int64)
    t = kernels.parity(a & mask)
    ti = kernels.parity(inv & mask)
    same = canonical & (t == ti)
    n1 = int(weight[same & (t == 1)].sum())
    n0 = int(weight[same & (t == 0)].sum())
    differ = int(weight[canonical & (t != ti)].sum())
    return n0, n1, n0 + n1 - differ


_ENGINES = {"numpy": _tally_numpy, "scalar": _tally_scalar}


def n_counts(
    n: int,
    ctx: FieldCtx | None = None,
    *,
    parallelism: int = 1,
    engine: str = "numpy",
    field_max: int | None = None,
) -> TracePairCounts:
    """
    Count N_0(n), N_1(n) and the Kloosterman sum over F_{2^n}^×.

    The residue range 1 .. 2^n - 1 is cut into contiguous chunks; partial
    tallies are merged by addition, so the result does not depend on
    ``parallelism``.
    """
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    assert_field_budget(n, field_max)
    if engine not in _ENGINES:
        raise ValueError(f"unknown engine {engine!r}; choose from {sorted(_ENGINES)}")
    if engine == "numpy" and n > 32:  # pragma: no cover - budget caps at 32
        raise ValueError("the numpy engine is limited to n <= 32")
    ctx = ctx or make_ctx(n)
    if ctx.n != n:
        raise ValueError(f"context is for degree {ctx.n}, not {n}")

    start = time.perf_counter()
    m = ctx.modulus.coeffs
    tasks = [(n, lo, hi, m, ctx.trace_mask) for lo, hi in chunk_ranges(1, 1 << n, _CHUNK)]
    total = TracePairCounts(n, 0, 0, 0)
    for n0, n1, k in run_chunks(_ENGINES[engine], tasks, parallelism):
        total = total + TracePairCounts(n, n0, n1, k)
    log.info(
        "n_counts(%d): N0=%d N1=%d K=%d in %.3fs (%s, %d chunks)",
        n, total.n0, total.n1, total.kloosterman, time.perf_counter() - start, engine, len(tasks),
    )
    return total


def kloosterman_check(n: int, counts: TracePairCounts | None = None, **kwargs) -> bool:
    """True iff N_1(n) = (2^n + 1 + K) / 4 exactly (and 4 divides the numerator)."""
    if counts is None:
        counts = n_counts(n, **kwargs)
    elif counts.n != n:
        raise ValueError(f"counts are for degree {counts.n}, not {n}")
    numerator = (1 << n) + 1 + counts.kloosterman
    return numerator % 4 == 0 and numerator // 4 == counts.n1


def n_counts_many(
    degrees: Iterable[int], *, parallelism: int = 1, field_max: int | None = None
) -> dict[int, TracePairCounts]:
    """n_counts for each degree, computed once per distinct degree."""
    return {
        d: n_counts(d, parallelism=parallelism, field_max=field_max)
        for d in sorted(set(degrees))
    }

