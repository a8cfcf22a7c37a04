"""
bijection.py — The explicit bijection S_{1,1}(n) ↔ S_{0,0}(n) for odd n.

    φ(f) = ψ(f)   if σ_f = 1        ρ(g) = ψ(g)   if σ_g = 1
           ψ⁻¹(f) if σ_f = 0               ψ⁻¹(g) if σ_g = 0

Where ψ and ψ⁻¹ send the trace/cotrace buckets is fixed by a table of
eight clauses (source bucket, signature, direction) → target bucket,
stored below as data and checked exhaustively by ``certify``.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from enum import StrEnum

import numpy as np

from .enumeration import enumerate_bucket
from .gf2x import ALL_BUCKETS, S00, S01, S10, S11, Bucket, Poly, bucket, signature
from .transforms import ALL_GL2, gl2_apply, psi, psi_inv

log = logging.getLogger(__name__)


class Direction(StrEnum):
    FORWARD = "forward"  # ψ
    INVERSE = "inverse"  # ψ⁻¹


@dataclass(frozen=True)
class LemmaClause:
    source: Bucket
    sigma: int
    direction: Direction
    target: Bucket


LEMMA_TABLE: tuple[LemmaClause, ...] = (
    LemmaClause(S11, 1, Direction.FORWARD, S00),
    LemmaClause(S11, 0, Direction.FORWARD, S01),
    LemmaClause(S11, 0, Direction.INVERSE, S00),
    LemmaClause(S11, 1, Direction.INVERSE, S10),
    LemmaClause(S00, 1, Direction.FORWARD, S11),
    LemmaClause(S00, 0, Direction.FORWARD, S10),
    LemmaClause(S00, 0, Direction.INVERSE, S11),
    LemmaClause(S00, 1, Direction.INVERSE, S01),
)

_PREDICTED = {(c.source, c.sigma, c.direction): c.target for c in LEMMA_TABLE}


def _require(f: Poly, expected: tuple[Bucket, ...]) -> Bucket:
    n = f.degree
    if n is None or n < 3 or n % 2 == 0:
        raise ValueError(f"the bijection is defined for odd degree >= 3, got {f!r}")
    b = bucket(f)
    if b not in expected:
        allowed = " or ".join(e.label for e in expected)
        raise ValueError(f"{f:symbolic} is in {b.label}, expected {allowed}")
    return b


def _apply(f: Poly, direction: Direction) -> Poly:
    return psi(f) if direction is Direction.FORWARD else psi_inv(f)


def phi(f: Poly) -> Poly:
    """S_{1,1}(n) → S_{0,0}(n) for odd n >= 3."""
    _require(f, (S11,))
    return psi(f) if signature(f) else psi_inv(f)


def rho(g: Poly) -> Poly:
    """S_{0,0}(n) → S_{1,1}(n), the inverse of phi."""
    _require(g, (S00,))
    return psi(g) if signature(g) else psi_inv(g)


def lemma_case(f: Poly, direction: Direction | str) -> Bucket:
    """The bucket of ψ(f) (forward) or ψ⁻¹(f) (inverse), for f in S_{1,1} or S_{0,0}."""
    _require(f, (S11, S00))
    return bucket(_apply(f, Direction(direction)))


def predicted_case(f: Poly, direction: Direction | str) -> Bucket:
    """The target bucket the clause table predicts for f and direction."""
    source = _require(f, (S11, S00))
    return _PREDICTED[source, signature(f), Direction(direction)]


# ── Certification ─────────────────────────────────────────────────────────────


@dataclass(frozen=True)
class LemmaCounterexample:
    f: Poly
    direction: Direction
    predicted: Bucket
    observed: Bucket


@dataclass
class BijectionCertificate:
    n: int
    s11_count: int = 0
    s00_count: int = 0
    injective: bool = False
    image_matches: bool = False
    rho_phi_identity: bool = False
    phi_rho_identity: bool = False
    lemma_counterexamples: list[LemmaCounterexample] = field(default_factory=list)
    signature_flip_violations: list[Poly] = field(default_factory=list)
    sample: list[tuple[Poly, Poly]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            self.injective
            and self.image_matches
            and self.rho_phi_identity
            and self.phi_rho_identity
            and not self.lemma_counterexamples
            and not self.signature_flip_violations
        )


def _signature_flips(f: Poly) -> bool:
    # σ_f = 1 ⇒ σ_ψ(f) = 0 and σ_f = 0 ⇒ σ_ψ⁻¹(f) = 1
    if signature(f):
        return signature(psi(f)) == 0
    return signature(psi_inv(f)) == 1


def certify(
    n: int, parallelism: int = 1, *, sample: int = 5, seed: int | None = None
) -> BijectionCertificate:
    """
    Check phi and rho exhaustively on S_{1,1}(n) and S_{0,0}(n), odd n >= 3.

    The certificate keeps ``sample`` mapped pairs: the first ones, or a
    seeded random choice when ``seed`` is given.
    """
    if n < 3 or n % 2 == 0:
        raise ValueError(f"the bijection is defined for odd n >= 3, got {n}")
    s11 = enumerate_bucket(n, S11, parallelism)
    s00 = enumerate_bucket(n, S00, parallelism)
    images = [phi(f) for f in s11]
    cert = BijectionCertificate(n=n, s11_count=len(s11), s00_count=len(s00))
    cert.injective = len(set(images)) == len(images)
    cert.image_matches = set(images) == set(s00)
    cert.rho_phi_identity = all(rho(g) == f for f, g in zip(s11, images, strict=True))
    cert.phi_rho_identity = all(phi(rho(g)) == g for g in s00)
    for f in (*s11, *s00):
        for direction in Direction:
            predicted, observed = predicted_case(f, direction), lemma_case(f, direction)
            if predicted != observed:
                cert.lemma_counterexamples.append(
                    LemmaCounterexample(f, direction, predicted, observed)
                )
    cert.signature_flip_violations = [f for f in s11 if not _signature_flips(f)]
    pairs = list(zip(s11, images, strict=True))
    if seed is None or sample >= len(pairs):
        cert.sample = pairs[:sample]
    else:
        picks = np.random.default_rng(seed).choice(len(pairs), size=sample, replace=False)
        cert.sample = [pairs[i] for i in sorted(int(p) for p in picks)]
    log.info("certify(%d): |S11|=%d |S00|=%d passed=%s", n, len(s11), len(s00), cert.passed)
    return cert


TransitionKey = tuple[Bucket, int, Direction]


def observe_transitions(n: int, parallelism: int = 1) -> dict[TransitionKey, Counter[Bucket]]:
    """
    Tally (source bucket, σ, direction) → target bucket over every degree-n
    irreducible. Recorded for any n >= 3; only odd n has a known table.
    """
    if n < 3:
        raise ValueError(f"transitions are tallied for n >= 3, got {n}")
    tally: dict[TransitionKey, Counter[Bucket]] = {}
    for source in ALL_BUCKETS:
        for f in enumerate_bucket(n, source, parallelism):
            sigma = signature(f)
            for direction in Direction:
                key = (source, sigma, direction)
                tally.setdefault(key, Counter())[bucket(_apply(f, direction))] += 1
    return tally


def signature_class_violations(n: int, parallelism: int = 1) -> list[tuple[Poly, Poly]]:
    """
    For even n, (f, image) pairs that leave their class under the six
    substitutions, where the classes are S_{0,0}(n) with σ = 0 and
    S_{1,1}(n) with σ = 1. Empty when both classes are closed.
    """
    if n < 4 or n % 2:
        raise ValueError(f"signature classes are checked for even n >= 4, got {n}")
    classes = {
        S00: {f for f in enumerate_bucket(n, S00, parallelism) if signature(f) == 0},
        S11: {f for f in enumerate_bucket(n, S11, parallelism) if signature(f) == 1},
    }
    violations = []
    for members in classes.values():
        for f in sorted(members):
            violations.extend((f, g) for m in ALL_GL2 if (g := gl2_apply(m, f)) not in members)
    return violations
