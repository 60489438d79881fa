"""Tests for the analytic helpers: entropy, the balance function and its
roots, the occurrence threshold, and expected pattern occurrences."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subseqlab import (
    Alphabet,
    IIDModel,
    LetterString,
    balance_minimum,
    balance_value,
    binary_entropy,
    expected_occurrences,
    occurrence_threshold,
    solve_balance,
)

unit_interval = st.floats(min_value=0.0, max_value=1.0, allow_nan=False)


def test_entropy_endpoints_and_peak():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == 1.0


@given(unit_interval)
@settings(max_examples=200)
def test_entropy_symmetry(x):
    assert math.isclose(binary_entropy(x), binary_entropy(1.0 - x), abs_tol=1e-12)


def test_balance_endpoints():
    assert balance_value(0.0) == 1.0
    assert balance_value(1.0) == 2.0
    assert math.isclose(balance_value(0.5), math.sqrt(2) / 2, rel_tol=1e-12)


@given(unit_interval)
@settings(max_examples=200)
def test_balance_entropy_identity(x):
    """log2 of the balance function is x minus the entropy of x."""
    assert math.isclose(
        balance_value(x), 2.0 ** (x - binary_entropy(x)), rel_tol=1e-12
    )


def test_balance_minimum_location():
    """The minimum sits at x = 1/3 with value 2/3."""
    x_min, g_min = balance_minimum()
    assert abs(x_min - 1 / 3) < 1e-6
    assert math.isclose(g_min, 2 / 3, rel_tol=1e-12)


def test_solve_balance_two_roots():
    roots = solve_balance(0.75)
    assert roots.lower is not None
    assert abs(roots.lower.x - 0.1230623223962593) < 1e-9
    assert abs(roots.upper.x - 0.5705521304341155) < 1e-9
    assert abs(roots.lower.residual) <= 1e-12
    assert abs(roots.upper.residual) <= 1e-12


def test_solve_balance_recovers_targets():
    for target in (0.70, 0.75, 0.9, 0.99):
        roots = solve_balance(target)
        assert math.isclose(balance_value(roots.upper.x), target, rel_tol=1e-10)
        if roots.lower is not None:
            assert math.isclose(balance_value(roots.lower.x), target, rel_tol=1e-10)


def test_solve_balance_single_root_regime():
    """Targets at or above g(0) = 1 only cross once, on the right branch."""
    roots = solve_balance(1.0)
    assert roots.lower is None
    assert abs(roots.upper.x - 0.7729078047806577) < 1e-9


def test_solve_balance_grazing_target():
    roots = solve_balance(2 / 3 + 1e-13)
    assert roots.lower is not None
    assert abs(roots.lower.x - 1 / 3) < 1e-4
    assert abs(roots.upper.x - 1 / 3) < 1e-4


def test_solve_balance_rejects_out_of_range():
    with pytest.raises(ValueError):
        solve_balance(0.5)
    with pytest.raises(ValueError):
        solve_balance(1.5)
    with pytest.raises(ValueError):
        solve_balance(0.0)


def test_occurrence_threshold_value():
    """Where entropy crosses the identity line: about 0.77291."""
    root = occurrence_threshold()
    assert abs(root.x - 0.7729078047806577) < 1e-10
    assert abs(root.residual) <= 1e-12
    assert math.isclose(binary_entropy(root.x), root.x, rel_tol=1e-12)


def test_threshold_is_where_balance_hits_one():
    root = occurrence_threshold()
    assert math.isclose(balance_value(root.x), 1.0, rel_tol=1e-12)


def test_expected_occurrences_exact_binary():
    """Ten heads in twenty fair flips: C(20,10)/2^10 = 180.42578125."""
    pattern = LetterString.from_letters([1] * 10, Alphabet(2))
    value = expected_occurrences(20, pattern, IIDModel.binary(Fraction(1, 2)))
    assert value == 180.42578125


def test_expected_occurrences_small_case():
    pattern = LetterString.from_text("11")
    assert expected_occurrences(4, pattern, IIDModel.binary(0.5)) == 1.5
    assert expected_occurrences(2, LetterString.from_text("01"), IIDModel.binary(0.5)) == 0.25


def test_expected_occurrences_log_space():
    pattern = LetterString.from_letters([1] * 10, Alphabet(2))
    model = IIDModel.binary(0.5)
    log_value = expected_occurrences(20, pattern, model, log_space=True)
    assert math.isclose(math.exp(log_value), 180.42578125, rel_tol=1e-12)


def test_expected_occurrences_zero_probability_letter():
    pattern = LetterString.from_text("01")
    model = IIDModel.binary(1.0)
    assert expected_occurrences(5, pattern, model) == 0.0
    assert expected_occurrences(5, pattern, model, log_space=True) == -math.inf


def test_expected_occurrences_validation():
    with pytest.raises(ValueError):
        expected_occurrences(3, LetterString.from_text("0101"), IIDModel.binary(0.5))
    with pytest.raises(ValueError):
        expected_occurrences(
            5, LetterString.from_text("012"), IIDModel.binary(0.5)
        )


def test_expected_occurrences_huge_n_needs_log_space():
    pattern = LetterString.from_letters([1] * 400, Alphabet(2))
    model = IIDModel.binary(0.5)
    log_value = expected_occurrences(100_000, pattern, model, log_space=True)
    assert math.isfinite(log_value)
