"""Tests for phi/rho, the clause table and the even-degree signature classes."""

from __future__ import annotations

import pytest

from gf2trace.tools.bijection import (
    LEMMA_TABLE,
    Direction,
    certify,
    lemma_case,
    observe_transitions,
    phi,
    predicted_case,
    rho,
    signature_class_violations,
)
from gf2trace.tools.enumeration import enumerate_bucket
from gf2trace.tools.gf2x import S00, S01, S10, S11, Poly, parse, signature

# ── phi / rho ─────────────────────────────────────────────────────────────────


def test_phi_examples() -> None:
    assert phi(Poly(0x3B)) == Poly(0x25)  # σ = 1, uses ψ
    assert phi(Poly(0x37)) == Poly(0x29)  # σ = 0, uses ψ⁻¹


def test_rho_examples() -> None:
    assert rho(Poly(0x25)) == Poly(0x3B)
    assert rho(Poly(0x29)) == Poly(0x37)


@pytest.mark.parametrize(("f", "expected"), [(0x3B, 1), (0x37, 0), (0x25, 0), (0x29, 1)])
def test_signatures_of_degree_five_examples(f: int, expected: int) -> None:
    assert signature(Poly(f)) == expected


def test_phi_rejects_even_degree() -> None:
    with pytest.raises(ValueError, match="odd degree >= 3"):
        phi(parse("x^4+x^3+x^2+x+1"))


def test_phi_rejects_wrong_bucket() -> None:
    with pytest.raises(ValueError, match=r"is in S_\{0,0\}, expected S_\{1,1\}"):
        phi(Poly(0x25))
    with pytest.raises(ValueError, match="expected S_"):
        rho(Poly(0x3B))


def test_phi_rejects_reducible_input() -> None:
    with pytest.raises(ValueError):
        phi(parse("x^5+x^4+x^3+x^2+x+1"))


def test_phi_is_an_involution_pair() -> None:
    """rho undoes phi on S_{1,1} for small odd degrees."""
    for n in (5, 7, 9):
        for f in enumerate_bucket(n, S11):
            assert rho(phi(f)) == f


# ── Clause table ──────────────────────────────────────────────────────────────


def test_lemma_table_covers_every_case_once() -> None:
    assert len(LEMMA_TABLE) == 8
    keys = {(c.source, c.sigma, c.direction) for c in LEMMA_TABLE}
    assert len(keys) == 8
    assert {c.target for c in LEMMA_TABLE} == {S00, S01, S10, S11}


def test_lemma_case_examples() -> None:
    assert lemma_case(Poly(0x3B), Direction.FORWARD) == S00
    assert lemma_case(Poly(0x37), "inverse") == S00
    assert lemma_case(Poly(0x25), Direction.INVERSE) == S11
    assert lemma_case(Poly(0x29), "forward") == S11


def test_lemma_case_agrees_with_table() -> None:
    """The case read off each polynomial matches the case the clause table predicts."""
    for n in (5, 7, 9, 11):
        for b in (S11, S00):
            for f in enumerate_bucket(n, b):
                for direction in Direction:
                    assert lemma_case(f, direction) == predicted_case(f, direction)


def test_lemma_case_rejects_off_diagonal_bucket() -> None:
    s01 = enumerate_bucket(5, S01)[0]
    with pytest.raises(ValueError, match="expected S_"):
        lemma_case(s01, Direction.FORWARD)


# ── certify ───────────────────────────────────────────────────────────────────


@pytest.mark.parametrize("n", [3, 5, 7, 9, 11, 13])
def test_certify_passes_for_odd_degree(n: int) -> None:
    cert = certify(n)
    assert cert.passed
    assert cert.s11_count == cert.s00_count
    assert cert.lemma_counterexamples == []
    assert cert.signature_flip_violations == []


def test_certify_sample_pairs_are_mapped() -> None:
    cert = certify(7, sample=4)
    assert len(cert.sample) == 4
    for f, g in cert.sample:
        assert phi(f) == g


def test_certify_seeded_sample_is_deterministic() -> None:
    """The same seed picks the same sample pairs."""
    first = certify(11, sample=3, seed=7).sample
    assert first == certify(11, sample=3, seed=7).sample
    assert len(first) == 3
    assert first == sorted(first)


def test_certify_sample_larger_than_bucket() -> None:
    cert = certify(5, sample=10, seed=1)
    assert [f for f, _ in cert.sample] == [Poly(0x37), Poly(0x3B)]


@pytest.mark.parametrize("n", [1, 2, 8])
def test_certify_rejects_bad_degree(n: int) -> None:
    with pytest.raises(ValueError, match="odd n >= 3"):
        certify(n)


# ── Transitions and even-degree classes ───────────────────────────────────────


@pytest.mark.parametrize("n", [7, 9])
def test_observed_transitions_match_table_for_odd_degree(n: int) -> None:
    tally = observe_transitions(n)
    for clause in LEMMA_TABLE:
        observed = tally.get((clause.source, clause.sigma, clause.direction))
        if observed:
            assert set(observed) == {clause.target}


def test_observed_transitions_cover_every_irreducible() -> None:
    tally = observe_transitions(8)
    forward = sum(sum(c.values()) for (_, _, d), c in tally.items() if d is Direction.FORWARD)
    assert forward == 30  # irreducible_count(8)


def test_observe_transitions_rejects_small_degree() -> None:
    with pytest.raises(ValueError, match="n >= 3"):
        observe_transitions(2)


@pytest.mark.parametrize("n", [4, 6, 8, 10])
def test_signature_classes_are_closed_for_even_degree(n: int) -> None:
    """For even n no substitution moves a polynomial into another signature class."""
    assert signature_class_violations(n) == []


@pytest.mark.parametrize("n", [2, 5])
def test_signature_classes_need_even_degree(n: int) -> None:
    with pytest.raises(ValueError, match="even n >= 4"):
        signature_class_violations(n)
