"""Tests for the closed-form counts and the N → H → G inversion pipeline."""

from __future__ import annotations

import pytest

from gf2trace.tools import counting, golden
from gf2trace.tools.config import BudgetExceededError
from gf2trace.tools.counting import (
    PredictedRow,
    analytic_row,
    counting_tables,
    diff_count,
    diff_count_even_sum,
    divisors,
    g0_closed,
    g_counts,
    irreducible_count,
    mobius,
    odd_part,
    predicted_row,
    required_degrees,
    trace1_count,
)
from gf2trace.tools.gf2x import irreducibles, trace_coeff

# ── Number theory ─────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    ("n", "expected"),
    [(1, 1), (2, -1), (3, -1), (4, 0), (6, 1), (12, 0), (30, -1), (105, -1), (210, 1)],
)
def test_mobius(n: int, expected: int) -> None:
    assert mobius(n) == expected


def test_mobius_rejects_zero() -> None:
    with pytest.raises(ValueError, match="n >= 1"):
        mobius(0)


def test_mobius_sums_to_zero_over_divisors() -> None:
    """Sum of mu(d) over d | n is 0 for every n > 1."""
    for n in range(2, 200):
        assert sum(mobius(d) for d in divisors(n)) == 0


def test_divisors_and_odd_part() -> None:
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert odd_part(24) == (3, 3)
    assert odd_part(7) == (0, 7)
    with pytest.raises(ValueError):
        odd_part(0)


# ── Closed forms ──────────────────────────────────────────────────────────────


@pytest.mark.parametrize(("n", "expected"), [(1, 2), (2, 1), (5, 6), (12, 335), (16, 4080)])
def test_irreducible_count(n: int, expected: int) -> None:
    assert irreducible_count(n) == expected


@pytest.mark.parametrize(("n", "expected"), [(1, 1), (4, 2), (6, 5), (7, 9)])
def test_trace1_count(n: int, expected: int) -> None:
    assert trace1_count(n) == expected


@pytest.mark.parametrize(("n", "expected"), [(5, 0), (8, 2), (12, 5), (30, 1091)])
def test_diff_count(n: int, expected: int) -> None:
    assert diff_count(n) == expected


def test_closed_forms_match_enumeration_at_low_degree() -> None:
    """I(n) and T(n) agree with direct enumeration."""
    for n in range(1, 13):
        found = list(irreducibles(n))
        assert len(found) == irreducible_count(n)
        if n >= 2:
            assert sum(trace_coeff(f) for f in found) == trace1_count(n)


def test_diff_count_chain() -> None:
    for n in range(2, 65):
        assert diff_count(n) == 2 * trace1_count(n) - irreducible_count(n)
        assert diff_count_even_sum(n) == diff_count(n)


def test_closed_forms_match_reference_table() -> None:
    for n in golden.degrees():
        s00, s01, s10, s11 = golden.get_row(n)
        assert s00 + s01 + s10 + s11 == irreducible_count(n)
        assert s11 + s10 == trace1_count(n)
        assert s11 - s00 == diff_count(n)


def test_inexact_division_is_an_arithmetic_error() -> None:
    """A non-integral count means broken inputs and must not be truncated."""
    with pytest.raises(ArithmeticError, match="not divisible"):
        counting._exact(7, 2, "check")


# ── Inversion pipeline ────────────────────────────────────────────────────────


def test_required_degrees() -> None:
    assert required_degrees(9) == [1, 3, 9]
    assert required_degrees(12) == [4, 12]
    assert required_degrees(8) == [8]


def test_g_counts_degree_two() -> None:
    tables = counting_tables(2)
    assert g_counts(2, tables) == (0, 2)
    assert tables.h1 == {1: 2}
    assert tables.h0 == {1: 0}


def test_g_counts_degree_four() -> None:
    g0, g1 = g_counts(4)
    assert g1 // 4 == 1
    assert g0 == 0


def test_odd_degree_diagonals_agree() -> None:
    """For odd n the two inverted totals coincide."""
    for n in (3, 5, 7, 9, 15):
        g0, g1 = g_counts(n)
        assert g0 == g1


def test_tables_invariants() -> None:
    tables = counting_tables(12)
    assert set(tables.n_counts) == {4, 12}
    assert set(tables.h0) == set(tables.h1) == {1, 3}
    for d, g in tables.g1.items():
        assert g >= 0 and g % d == 0


def test_g0_closed_form_matches_inversion() -> None:
    for n in range(2, 17):
        tables = counting_tables(n)
        assert g0_closed(n, tables) == tables.g0[n]


def test_g_counts_respects_field_budget() -> None:
    with pytest.raises(BudgetExceededError):
        g_counts(12, field_max=8)


# ── Predicted rows ────────────────────────────────────────────────────────────


@pytest.mark.parametrize(
    ("n", "cells"), [(5, (2, 1, 1, 2)), (8, (7, 7, 7, 9)), (11, (48, 45, 45, 48))]
)
def test_predicted_row_examples(n: int, cells: tuple[int, int, int, int]) -> None:
    row = predicted_row(n)
    assert row.cells == cells
    assert row.route == "analytic+field"
    assert row.violations() == []


def test_predicted_and_analytic_rows_match_reference_table() -> None:
    for n in range(2, 17):
        tables = counting_tables(n)
        assert predicted_row(n, tables).cells == golden.get_row(n)
        assert analytic_row(n, tables).cells == golden.get_row(n)


def test_analytic_row_route() -> None:
    assert analytic_row(6).route == "analytic"


def test_violations_reports_broken_rows() -> None:
    bad = PredictedRow(5, 2, 1, 2, 2)
    problems = bad.violations()
    assert "s01 != s10" in problems
    assert "buckets do not sum to irreducible_count" in problems


@pytest.mark.slow
def test_predicted_row_up_to_field_budget() -> None:
    """The field route reproduces every reference row it can reach."""
    for n in range(17, 25):
        assert predicted_row(n).cells == golden.get_row(n)
