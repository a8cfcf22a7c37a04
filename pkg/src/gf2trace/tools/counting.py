"""
counting.py — Closed-form counts and the trace-pair inversion pipeline.

Closed forms (exact integer arithmetic throughout):

    I(n)      = (1/n)  Σ_{d|n}        μ(d) 2^(n/d)        irreducibles of degree n
    T(n)      = (1/2n) Σ_{d|n, d odd} μ(d) 2^(n/d)        ... with trace 1
    D(n)      = |S11(n)| − |S00(n)| = 0 (n odd), T(n/2) (n even)

The field route recovers the diagonal buckets from N_i (see ``field``):
G_i(n) counts the elements of F_{2^n} with both traces i that generate
the whole field, and |S_ii(n)| = G_i(n)/n. For odd n, G_i follows from N_i
by Möbius inversion over the divisors of n. For even n = 2^k·m (m odd) the
inversion runs over divisors of m through

    H_1(e) = N_1(2^k e),   H_0(e) = N_0(2^k e) − (2^(2^(k−1) e) − 1).

Nothing here may divide inexactly; a remainder raises ArithmeticError and
always indicates a bug.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from sympy import divisors as _sympy_divisors
from sympy import factorint

from .field import TracePairCounts, n_counts_many

log = logging.getLogger(__name__)


# ── Number theory ─────────────────────────────────────────────────────────────


def mobius(n: int) -> int:
    """μ(n): 1 for n = 1, (−1)^k for k distinct primes, 0 when a square divides n."""
    if n < 1:
        raise ValueError(f"the Möbius function is defined for n >= 1, got {n}")
    factors = factorint(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError(f"divisors are defined for n >= 1, got {n}")
    return [int(d) for d in _sympy_divisors(n)]


def odd_part(n: int) -> tuple[int, int]:
    """(k, m) with n = 2^k · m and m odd."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k = (n & -n).bit_length() - 1
    return k, n >> k


def _exact(numerator: int, denominator: int, what: str) -> int:
    q, r = divmod(numerator, denominator)
    if r:
        raise ArithmeticError(f"{what}: {numerator} is not divisible by {denominator}")
    return q


# ── Closed forms ──────────────────────────────────────────────────────────────


def irreducible_count(n: int) -> int:
    """Number of irreducible binary polynomials of degree n."""
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    total = sum(mobius(d) << (n // d) for d in divisors(n))
    return _exact(total, n, f"irreducible_count({n})")


def trace1_count(n: int) -> int:
    """Number of irreducibles of degree n with trace 1."""
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    total = sum(mobius(d) << (n // d) for d in divisors(n) if d % 2)
    return _exact(total, 2 * n, f"trace1_count({n})")


def diff_count(n: int) -> int:
    """|S11(n)| − |S00(n)|: zero for odd n, trace1_count(n/2) for even n."""
    if n < 2:
        raise ValueError(f"buckets are defined for n >= 2, got {n}")
    return 0 if n % 2 else trace1_count(n // 2)


def diff_count_even_sum(n: int) -> int:
    """−(1/n) Σ_{d|n, d even} μ(d) 2^(n/d): the difference before the even divisors are folded."""
    if n < 2:
        raise ValueError(f"buckets are defined for n >= 2, got {n}")
    total = -sum(mobius(d) << (n // d) for d in divisors(n) if d % 2 == 0)
    return _exact(total, n, f"diff_count_even_sum({n})")


# ── Inversion pipeline ────────────────────────────────────────────────────────


@dataclass
class CountingTables:
    """N_i over the divisors a degree needs, with the H_i and G_i derived from them."""

    n: int
    k: int
    m: int
    n_counts: dict[int, TracePairCounts] = field(default_factory=dict)
    h0: dict[int, int] = field(default_factory=dict)
    h1: dict[int, int] = field(default_factory=dict)
    g0: dict[int, int] = field(default_factory=dict)
    g1: dict[int, int] = field(default_factory=dict)

    def check(self) -> None:
        for d, c in self.n_counts.items():
            if c.n0 != c.n1 - 1:
                raise ArithmeticError(f"N0({d}) = {c.n0} but N1({d}) - 1 = {c.n1 - 1}")
        for name, table in (("G0", self.g0), ("G1", self.g1)):
            for d, g in table.items():
                if g < 0 or (d >= 2 and g % d):
                    raise ArithmeticError(f"{name}({d}) = {g} is negative or not divisible by {d}")


def required_degrees(n: int) -> list[int]:
    """The degrees whose N_i the inversion for n consumes."""
    k, m = odd_part(n)
    if k == 0:
        return divisors(n)
    return [(1 << k) * e for e in divisors(m)]


def counting_tables(
    n: int, *, parallelism: int = 1, field_max: int | None = None
) -> CountingTables:
    """Compute every N_i the degree needs and invert them to G_i (and H_i for even n)."""
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    start = time.perf_counter()
    k, m = odd_part(n)
    tables = CountingTables(n=n, k=k, m=m)
    tables.n_counts = n_counts_many(
        required_degrees(n), parallelism=parallelism, field_max=field_max
    )
    nc = tables.n_counts

    if k == 0:
        for d in divisors(n):
            tables.g1[d] = sum(mobius(e) * nc[d // e].n1 for e in divisors(d))
            tables.g0[d] = sum(mobius(e) * nc[d // e].n0 for e in divisors(d))
    else:
        for e in divisors(m):
            arg = (1 << k) * e
            tables.h1[e] = nc[arg].n1
            tables.h0[e] = nc[arg].n0 - ((1 << ((1 << (k - 1)) * e)) - 1)
        for e in divisors(m):
            arg = (1 << k) * e
            tables.g1[arg] = sum(mobius(e // d) * tables.h1[d] for d in divisors(e))
            tables.g0[arg] = sum(mobius(e // d) * tables.h0[d] for d in divisors(e))

    tables.check()
    log.info("counting_tables(%d) built in %.3fs", n, time.perf_counter() - start)
    return tables


def g_counts(
    n: int, tables: CountingTables | None = None, **kwargs
) -> tuple[int, int]:
    """(G0(n), G1(n))."""
    if n < 2:
        raise ValueError(f"buckets are defined for n >= 2, got {n}")
    tables = tables or counting_tables(n, **kwargs)
    return tables.g0[n], tables.g1[n]


def g0_closed(n: int, tables: CountingTables | None = None, **kwargs) -> int:
    """G1(n) − Σ_{d|m} μ(d) 2^(n/2d) for even n = 2^k·m; G1(n) for odd n >= 2."""
    _, g1 = g_counts(n, tables, **kwargs)
    k, m = odd_part(n)
    if k == 0:
        return g1
    return g1 - sum(mobius(d) << (n // (2 * d)) for d in divisors(m))


# ── Predicted rows ────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class PredictedRow:
    n: int
    s00: int
    s01: int
    s10: int
    s11: int
    route: str = "analytic+field"
    elapsed: float = 0.0

    @property
    def cells(self) -> tuple[int, int, int, int]:
        return self.s00, self.s01, self.s10, self.s11

    @property
    def method(self) -> str:
        return self.route

    def violations(self) -> list[str]:
        """Every PredictedRow invariant this row breaks (empty when consistent)."""
        problems = []
        if min(self.cells) < 0:
            problems.append("negative count")
        if self.s01 != self.s10:
            problems.append("s01 != s10")
        if sum(self.cells) != irreducible_count(self.n):
            problems.append("buckets do not sum to irreducible_count")
        if self.s11 + self.s10 != trace1_count(self.n):
            problems.append("s11 + s10 != trace1_count")
        if self.s11 - self.s00 != diff_count(self.n):
            problems.append("s11 - s00 != diff_count")
        return problems


def predicted_row(
    n: int, tables: CountingTables | None = None, *, parallelism: int = 1,
    field_max: int | None = None,
) -> PredictedRow:
    """
    Diagonal buckets from G_i(n)/n; the off-diagonal pair split evenly
    (the reciprocal swaps S01 and S10), so s01 = s10 = (I(n) − s11 − s00)/2.
    """
    start = time.perf_counter()
    g0, g1 = g_counts(n, tables, parallelism=parallelism, field_max=field_max)
    s11 = _exact(g1, n, f"G1({n})/n")
    s00 = _exact(g0, n, f"G0({n})/n")
    off = _exact(irreducible_count(n) - s11 - s00, 2, f"off-diagonal split at n={n}")
    return PredictedRow(n, s00, off, off, s11, elapsed=time.perf_counter() - start)


def analytic_row(
    n: int, tables: CountingTables | None = None, *, parallelism: int = 1,
    field_max: int | None = None,
) -> PredictedRow:
    """
    s11 = G1(n)/n from the field, every other bucket from the closed forms:
    s10 = s01 = T(n) − s11 and s00 = s11 − D(n).
    """
    start = time.perf_counter()
    _, g1 = g_counts(n, tables, parallelism=parallelism, field_max=field_max)
    s11 = _exact(g1, n, f"G1({n})/n")
    s10 = trace1_count(n) - s11
    s00 = s11 - diff_count(n)
    elapsed = time.perf_counter() - start
    return PredictedRow(n, s00, s10, s10, s11, route="analytic", elapsed=elapsed)
