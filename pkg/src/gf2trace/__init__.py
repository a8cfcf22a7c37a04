"""gf2trace — trace/cotrace classification of binary irreducible polynomials."""

__version__ = "0.1.0"
