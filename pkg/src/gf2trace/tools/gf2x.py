"""
gf2x.py — Bit-packed arithmetic in GF(2)[x] and coefficient-level classification.

A polynomial is a nonnegative integer whose bit k is the coefficient of x^k,
so x^5 + x^2 + 1 is 0x25. Addition is XOR; multiplication is the carryless
product. The underscore helpers work on plain ints and are shared with the
field and transform modules; the public API takes and returns ``Poly``.

Classification (trace, cotrace, signature, bucket) follows the convention

    f = x^n + f_{n-1} x^{n-1} + ... + f_1 x + 1

with trace f_{n-1} and cotrace f_1. Degree-1 polynomials are never
classified.
"""

from __future__ import annotations

import re
from collections.abc import Iterator
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from sympy import primefactors


@dataclass(frozen=True, slots=True, order=True)
class Poly:
    """A binary polynomial; ``coeffs`` bit k is the coefficient of x^k."""

    coeffs: int

    def __post_init__(self) -> None:
        if self.coeffs < 0:
            raise ValueError(f"coefficient bits must be nonnegative, got {self.coeffs}")

    @property
    def degree(self) -> int | None:
        """Index of the highest set bit; None for the zero polynomial."""
        return self.coeffs.bit_length() - 1 if self.coeffs else None

    def coeff(self, k: int) -> int:
        return (self.coeffs >> k) & 1

    def __int__(self) -> int:
        return self.coeffs

    def __bool__(self) -> bool:
        return self.coeffs != 0

    def __str__(self) -> str:
        return _to_terms(self.coeffs)

    def __repr__(self) -> str:
        return f"Poly(0x{self.coeffs:X})"

    def __format__(self, spec: str) -> str:
        if spec in ("", "hex"):
            return _to_hex(self.coeffs)
        if spec == "symbolic":
            return _to_terms(self.coeffs)
        raise ValueError(f"unknown polynomial style {spec!r}; use 'hex' or 'symbolic'")


ONE = Poly(1)
X = Poly(0b10)
X_PLUS_1 = Poly(0b11)


class Bucket(NamedTuple):
    """Membership label (trace, cotrace) of S_{i,j}(n)."""

    trace_bit: int
    cotrace_bit: int

    @property
    def label(self) -> str:
        return f"S_{{{self.trace_bit},{self.cotrace_bit}}}"

    @property
    def key(self) -> str:
        return f"s{self.trace_bit}{self.cotrace_bit}"


S00 = Bucket(0, 0)
S01 = Bucket(0, 1)
S10 = Bucket(1, 0)
S11 = Bucket(1, 1)
ALL_BUCKETS: tuple[Bucket, ...] = (S00, S01, S10, S11)


# ── int kernels ───────────────────────────────────────────────────────────────

# Squaring spreads bits: byte b maps to the 16-bit word with b's bits at even positions.
_SPREAD = tuple(sum(((b >> i) & 1) << (2 * i) for i in range(8)) for b in range(256))


def _degree(a: int) -> int:
    return a.bit_length() - 1


def _mul(a: int, b: int) -> int:
    if a < b:
        a, b = b, a
    c = 0
    while b:
        if b & 1:
            c ^= a
        a <<= 1
        b >>= 1
    return c


def _square(a: int) -> int:
    c = 0
    shift = 0
    while a:
        c |= _SPREAD[a & 0xFF] << shift
        a >>= 8
        shift += 16
    return c


def _divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = _degree(b)
    q = 0
    while a and _degree(a) >= db:
        shift = _degree(a) - db
        q ^= 1 << shift
        a ^= b << shift
    return q, a


def _mod(a: int, b: int) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero polynomial")
    db = _degree(b)
    while a and _degree(a) >= db:
        a ^= b << (_degree(a) - db)
    return a


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _mod(a, b)
    return a


def _gcdext(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s·a + t·b = g = gcd(a, b)."""
    s, s1 = 1, 0
    t, t1 = 0, 1
    while b:
        q, r = _divmod(a, b)
        a, b = b, r
        s, s1 = s1, s ^ _mul(q, s1)
        t, t1 = t1, t ^ _mul(q, t1)
    return a, s, t


def _mulmod(a: int, b: int, m: int) -> int:
    return _mod(_mul(a, b), m)


def _sqmod(a: int, m: int) -> int:
    return _mod(_square(a), m)


def _powmod(a: int, e: int, m: int) -> int:
    if e < 0:
        raise ValueError("negative exponent")
    result = 1 if _degree(m) > 0 else 0
    a = _mod(a, m)
    while e:
        if e & 1:
            result = _mulmod(result, a, m)
        a = _sqmod(a, m)
        e >>= 1
    return result


@lru_cache(maxsize=64)
def _rabin_checkpoints(n: int) -> frozenset[int]:
    return frozenset(n // p for p in primefactors(n))


def _is_irreducible(f: int) -> bool:
    n = _degree(f)
    if n < 1:
        raise ValueError("irreducibility is only defined for polynomials of degree >= 1")
    if n == 1:
        return True
    if not f & 1:
        return False
    checkpoints = _rabin_checkpoints(n)
    frobenius = {}
    h = X.coeffs
    for i in range(1, n + 1):
        h = _sqmod(h, f)
        if i in checkpoints:
            frobenius[i] = h
    if h != X.coeffs:
        return False
    return all(_gcd(frobenius[k] ^ X.coeffs, f) == 1 for k in checkpoints)


def _is_irreducible_trial(f: int) -> bool:
    n = _degree(f)
    if n < 1:
        raise ValueError("irreducibility is only defined for polynomials of degree >= 1")
    for d in range(1, n // 2 + 1):
        for g in range(1 << d, 1 << (d + 1)):
            if _mod(f, g) == 0:
                return False
    return True


def _reverse(a: int, width: int) -> int:
    return int(f"{a:0{width}b}"[::-1], 2)


# ── Arithmetic ────────────────────────────────────────────────────────────────


def add(a: Poly, b: Poly) -> Poly:
    """Coefficientwise sum mod 2."""
    return Poly(a.coeffs ^ b.coeffs)


def mul(a: Poly, b: Poly) -> Poly:
    """Carryless product."""
    return Poly(_mul(a.coeffs, b.coeffs))


def divmod_(a: Poly, m: Poly) -> tuple[Poly, Poly]:
    """Quotient and remainder of a by nonzero m."""
    q, r = _divmod(a.coeffs, m.coeffs)
    return Poly(q), Poly(r)


def rem(a: Poly, m: Poly) -> Poly:
    """Unique remainder of a modulo nonzero m, of degree < deg(m)."""
    return Poly(_mod(a.coeffs, m.coeffs))


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (every nonzero binary polynomial is monic)."""
    return Poly(_gcd(a.coeffs, b.coeffs))


def ext_gcd(a: Poly, m: Poly) -> tuple[Poly, Poly, Poly]:
    """Return (g, u, v) with u·a + v·m = g = gcd(a, m)."""
    g, u, v = _gcdext(a.coeffs, m.coeffs)
    return Poly(g), Poly(u), Poly(v)


def powmod(a: Poly, e: int, m: Poly) -> Poly:
    """a^e mod m for nonnegative e."""
    return Poly(_powmod(a.coeffs, e, m.coeffs))


def weight(f: Poly) -> int:
    """Number of nonzero terms."""
    return f.coeffs.bit_count()


# ── Irreducibility ────────────────────────────────────────────────────────────


def is_irreducible(f: Poly) -> bool:
    """
    Rabin's test: x^(2^n) ≡ x (mod f) and gcd(x^(2^(n/p)) − x, f) = 1 for
    every prime p dividing n. Raises ValueError for zero or constant input.
    """
    return _is_irreducible(f.coeffs)


def is_irreducible_trial(f: Poly) -> bool:
    """Trial division by every polynomial of degree <= n/2. Oracle for low degrees."""
    return _is_irreducible_trial(f.coeffs)


def irreducibles(n: int) -> Iterator[Poly]:
    """Yield every irreducible of degree n in increasing bit order."""
    if n < 1:
        raise ValueError(f"degree must be at least 1, got {n}")
    if n == 1:
        yield X
        yield X_PLUS_1
        return
    for f in range(1 << n | 1, 1 << (n + 1), 2):
        if f.bit_count() & 1 and _is_irreducible(f):
            yield Poly(f)


# ── Classification ────────────────────────────────────────────────────────────


def _require_classifiable(f: Poly) -> int:
    n = f.degree
    if n is None or n < 2:
        raise ValueError(f"classification needs degree >= 2 (S_ij(1) is undefined), got {f!r}")
    if not f.coeffs & 1:
        raise ValueError(f"classification needs constant term 1, got {f!r}")
    return n


def trace_coeff(f: Poly) -> int:
    """f_{n-1}: the trace of any root of an irreducible f."""
    n = _require_classifiable(f)
    return f.coeff(n - 1)


def cotrace_coeff(f: Poly) -> int:
    """f_1: the trace of the inverse of any root of an irreducible f."""
    _require_classifiable(f)
    return f.coeff(1)


def signature(f: Poly) -> int:
    """Parity of the sum of k·f_k over 2 <= k <= n-2 (0 when the range is empty)."""
    n = f.degree
    if n is None or n < 2:
        raise ValueError(f"signature needs degree >= 2, got {f!r}")
    if n < 4:
        return 0
    # only odd k contribute
    return (f.coeffs & _odd_interior_mask(n)).bit_count() & 1


@lru_cache(maxsize=128)
def _odd_interior_mask(n: int) -> int:
    return sum(1 << k for k in range(3, n - 1, 2))


def bucket(f: Poly) -> Bucket:
    """(trace, cotrace) of an irreducible of degree >= 2; reducible input is rejected."""
    _require_classifiable(f)
    if not _is_irreducible(f.coeffs):
        raise ValueError(f"{f:symbolic} is reducible; only irreducibles have a bucket")
    return Bucket(trace_coeff(f), cotrace_coeff(f))


def reciprocal(f: Poly) -> Poly:
    """x^n f(1/x): the coefficient sequence reversed. Needs constant term 1."""
    if not f.coeffs & 1:
        raise ValueError(f"reciprocal needs constant term 1 to preserve degree, got {f!r}")
    return Poly(_reverse(f.coeffs, f.coeffs.bit_length()))


# ── Text forms ────────────────────────────────────────────────────────────────

_HEX = re.compile(r"0[xX][0-9a-fA-F]+")
_TERM = re.compile(r"x(?:\^(\d+))?|1|0")


def _to_hex(a: int) -> str:
    return f"0x{a:X}"


def _to_terms(a: int) -> str:
    if a == 0:
        return "0"
    terms = []
    for k in range(a.bit_length() - 1, -1, -1):
        if (a >> k) & 1:
            terms.append("1" if k == 0 else "x" if k == 1 else f"x^{k}")
    return "+".join(terms)


def parse(text: str) -> Poly:
    """Parse hex ("0x25") or symbolic ("x^5+x^2+1") text."""
    s = "".join(text.split())
    if not s:
        raise ValueError("empty polynomial text")
    if _HEX.fullmatch(s):
        return Poly(int(s, 16))
    a = 0
    for term in s.split("+"):
        m = _TERM.fullmatch(term)
        if m is None:
            raise ValueError(f"malformed polynomial term {term!r} in {text!r}")
        if term == "0":
            if s != "0":
                raise ValueError(f"'0' may only appear alone, got {text!r}")
            continue
        bit = 1 if term == "1" else 1 << int(m.group(1) or 1)
        if a & bit:
            raise ValueError(f"repeated term {term!r} in {text!r}")
        a |= bit
    return Poly(a)


def format(f: Poly, style: str = "hex") -> str:
    """Render f as hex ("0x25") or symbolic ("x^5+x^2+1") text."""
    if style == "hex":
        return _to_hex(f.coeffs)
    if style == "symbolic":
        return _to_terms(f.coeffs)
    raise ValueError(f"unknown polynomial style {style!r}; use 'hex' or 'symbolic'")
