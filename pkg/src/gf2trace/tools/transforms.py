"""
transforms.py — Substitution transforms on binary polynomials.

* ``gl2_apply``: f ↦ (cx+d)^n f((ax+b)/(cx+d)) for the six invertible 2×2
  matrices over F_2. ψ, ψ⁻¹ and the reciprocal are special cases.
* ``q_transform``: f ↦ x^n f(x + 1/x), self-reciprocal of degree 2n.
* ``q_root``: the unique preimage of a self-reciprocal polynomial under the
  Q-transform.

The substitution is a right action: applying m₂ and then m₁ equals applying
the product m₂·m₁.
"""

from __future__ import annotations

from dataclasses import dataclass

from .gf2x import Poly, _mul, reciprocal

_X2_PLUS_1 = 0b101


@dataclass(frozen=True)
class Gl2Matrix:
    """An invertible matrix (a b; c d) over F_2."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if any(v not in (0, 1) for v in (self.a, self.b, self.c, self.d)):
            raise ValueError(f"matrix entries must be bits, got {self}")
        if (self.a & self.d) ^ (self.b & self.c) != 1:
            raise ValueError(f"singular matrix {self.entries}")

    @property
    def entries(self) -> tuple[int, int, int, int]:
        return self.a, self.b, self.c, self.d

    def __matmul__(self, other: Gl2Matrix) -> Gl2Matrix:
        return Gl2Matrix(
            (self.a & other.a) ^ (self.b & other.c),
            (self.a & other.b) ^ (self.b & other.d),
            (self.c & other.a) ^ (self.d & other.c),
            (self.c & other.b) ^ (self.d & other.d),
        )

    def inverse(self) -> Gl2Matrix:
        # determinant 1 and -1 = 1 in F_2
        return Gl2Matrix(self.d, self.b, self.c, self.a)

    @classmethod
    def parse(cls, text: str) -> Gl2Matrix:
        """Parse "a,b,c,d" (row-major)."""
        try:
            a, b, c, d = (int(v) for v in text.split(","))
        except ValueError as exc:
            raise ValueError(f"matrix must be four comma-separated bits, got {text!r}") from exc
        return cls(a, b, c, d)


IDENTITY = Gl2Matrix(1, 0, 0, 1)
RECIPROCAL = Gl2Matrix(0, 1, 1, 0)
PSI = Gl2Matrix(0, 1, 1, 1)
PSI_INV = Gl2Matrix(1, 1, 1, 0)

ALL_GL2: tuple[Gl2Matrix, ...] = tuple(
    Gl2Matrix(a, b, c, d)
    for a in (0, 1)
    for b in (0, 1)
    for c in (0, 1)
    for d in (0, 1)
    if (a & d) ^ (b & c)
)


# ── GL2(F_2) action ───────────────────────────────────────────────────────────


def gl2_apply(m: Gl2Matrix, f: Poly) -> Poly:
    """
    (cx+d)^n f((ax+b)/(cx+d)), accumulated Horner-style in the two linear
    forms so no rational arithmetic is needed.
    """
    n = f.degree
    if n is None or n < 2:
        raise ValueError(f"GL2 action needs degree >= 2, got {f!r}")
    num = (m.a << 1) | m.b
    den = (m.c << 1) | m.d
    acc = 1
    den_pow = 1
    for k in range(n - 1, -1, -1):
        den_pow = _mul(den_pow, den)
        acc = _mul(acc, num)
        if (f.coeffs >> k) & 1:
            acc ^= den_pow
    return Poly(acc)


def psi(f: Poly) -> Poly:
    """(x+1)^n f(1/(x+1))."""
    return gl2_apply(PSI, f)


def psi_inv(f: Poly) -> Poly:
    """x^n f((x+1)/x)."""
    return gl2_apply(PSI_INV, f)


def gl2_orbit(f: Poly) -> frozenset[Poly]:
    """The images of f under all six invertible substitutions."""
    return frozenset(gl2_apply(m, f) for m in ALL_GL2)


# ── Q-transform ───────────────────────────────────────────────────────────────


def _q_basis(m: int) -> list[int]:
    """(x^2+1)^k for k = 0 .. m."""
    powers = [1]
    for _ in range(m):
        powers.append(_mul(powers[-1], _X2_PLUS_1))
    return powers


def q_transform(f: Poly) -> Poly:
    """x^n f(x + 1/x) = Σ f_k x^(n-k) (x^2+1)^k."""
    n = f.degree
    if n is None:
        raise ValueError("the Q-transform of the zero polynomial is undefined")
    acc = 0
    for k, pw in enumerate(_q_basis(n)):
        if (f.coeffs >> k) & 1:
            acc ^= pw << (n - k)
    return Poly(acc)


def is_self_reciprocal(f: Poly) -> bool:
    """True iff f* = f. The zero polynomial and polynomials divisible by x are not."""
    return bool(f.coeffs & 1) and reciprocal(f) == f


def q_root(f: Poly) -> Poly:
    """
    The unique g of degree m with g^Q = f, for self-reciprocal f of degree 2m.

    The x^(m+k) coefficient of g^Q only involves g_j for j >= k, so the
    coefficients are recovered top-down; any residue left over means f was
    not in the image.
    """
    n = f.degree
    if n is None or n < 2 or n % 2:
        raise ValueError(f"q_root needs even degree >= 2, got {f!r}")
    if not is_self_reciprocal(f):
        raise ValueError(f"{f:symbolic} is not self-reciprocal")
    m = n // 2
    basis = _q_basis(m)
    residual = f.coeffs
    g = 0
    for k in range(m, -1, -1):
        if (residual >> (m + k)) & 1:
            g |= 1 << k
            residual ^= basis[k] << (m - k)
    if residual:
        raise ValueError(f"{f:symbolic} is not a Q-transform (residual 0x{residual:X})")
    return Poly(g)
