"""Tests for the expectation engines: closed form, weight recurrence,
and the two matrix engines, all cross-checked against the oracle."""

import math
from fractions import Fraction

import pytest

from subseqlab import (
    IIDModel,
    MarkovModel,
    ab_explicit,
    ab_recurrence,
    asymptotic_constants,
    closed_form_binary,
    exhaustive_expectation,
    iid_matrix_expectation,
    markov_expectation,
)

ALPHAS = [Fraction(k, 10) for k in range(1, 10)]


def test_closed_form_fair_matches_doubling_rule():
    """At alpha = 1/2 the formula collapses to 2 * 1.5^n - 2, exactly."""
    for n in range(1, 34):
        assert closed_form_binary(0.5, n) == 2.0 * 1.5**n - 2.0


def test_closed_form_degenerate_alphabet():
    assert closed_form_binary(0.0, 7) == 7.0
    assert closed_form_binary(1.0, 7) == 7.0


def test_closed_form_small_values():
    assert closed_form_binary(0.5, 1) == 1.0
    assert closed_form_binary(0.5, 2) == 2.5
    assert math.isclose(closed_form_binary(0.3, 2), 2.42, rel_tol=1e-12)


def test_closed_form_rejects_bad_inputs():
    with pytest.raises(ValueError):
        closed_form_binary(-0.1, 3)
    with pytest.raises(ValueError):
        closed_form_binary(1.2, 3)
    with pytest.raises(ValueError):
        closed_form_binary(0.5, -1)


@pytest.mark.parametrize("alpha", ALPHAS)
def test_closed_form_matches_oracle(alpha):
    series = exhaustive_expectation(IIDModel.binary(alpha), 10)
    for n in range(1, 11):
        expected = float(series.value_at(n))
        got = closed_form_binary(float(alpha), n)
        assert math.isclose(got, expected, rel_tol=1e-11)


def test_asymptotic_constants_fair():
    base, prefactor = asymptotic_constants(0.5)
    assert base == 1.5
    assert prefactor == 2.0


def test_asymptotic_constants_skewed():
    base, prefactor = asymptotic_constants(0.3)
    r = math.sqrt(0.3 * 0.7)
    assert math.isclose(base, 1 + r, rel_tol=1e-15)
    assert math.isclose(prefactor, (1 + 2 * r) / (2 * r), rel_tol=1e-15)
    with pytest.raises(ValueError):
        asymptotic_constants(0.0)


def test_ab_recurrence_first_terms():
    weights = ab_recurrence(0.5, 3)
    assert weights.a == (0.5, 0.75, 1.125)
    assert weights.b == (0.5, 0.75, 1.125)
    skew = ab_recurrence(0.25, 2)
    assert skew.a == (0.25, 0.25 + 0.25 * 0.75)
    assert skew.b == (0.75, 0.75 + 0.75 * 0.25)


def test_ab_recurrence_matches_explicit_form():
    for alpha in (0.1, 0.3, 0.5, 0.8):
        weights = ab_recurrence(alpha, 20)
        for i in range(1, 21):
            a, b = ab_explicit(alpha, i)
            assert math.isclose(weights.a[i - 1], a, rel_tol=1e-12)
            assert math.isclose(weights.b[i - 1], b, rel_tol=1e-12)


def test_ab_totals_recover_expectation():
    """Summing the per-position weights reproduces the closed form."""
    for alpha in (0.2, 0.5, 0.7):
        for n in (1, 5, 12):
            total = ab_recurrence(alpha, n).grand_total()
            assert math.isclose(total, closed_form_binary(alpha, n), rel_tol=1e-12)


def test_iid_matrix_exact_binary():
    model = IIDModel.binary(Fraction(1, 2))
    series = iid_matrix_expectation(model, 4)
    assert series.mode == "exact"
    assert series.values == exhaustive_expectation(model, 4).values


def test_iid_matrix_exact_ternary_skewed():
    model = IIDModel((Fraction(1, 2), Fraction(1, 3), Fraction(1, 6)))
    assert iid_matrix_expectation(model, 6).values == exhaustive_expectation(
        model, 6
    ).values


def test_iid_matrix_float_mode_tracks_closed_form():
    series = iid_matrix_expectation(IIDModel.binary(0.3), 40)
    assert series.mode == "float"
    for n in (1, 10, 25, 40):
        assert math.isclose(
            series.value_at(n), closed_form_binary(0.3, n), rel_tol=1e-11
        )


def test_iid_matrix_mode_override():
    model = IIDModel.binary(Fraction(1, 2))
    series = iid_matrix_expectation(model, 6, mode="float")
    assert series.mode == "float"
    assert isinstance(series.value_at(6), float)


def test_markov_engine_matches_oracle_exactly():
    grid = (Fraction(3, 10), Fraction(1, 2), Fraction(7, 10))
    for alpha in grid:
        for beta in grid:
            model = MarkovModel(alpha, beta)
            assert (
                markov_expectation(model, 8).values
                == exhaustive_expectation(model, 8).values
            )


def test_markov_reduces_to_iid_on_diagonal():
    """alpha == beta makes tomorrow independent of today."""
    for p in (0.3, 0.5, 0.7):
        series = markov_expectation(MarkovModel(p, p), 40)
        for n in (1, 5, 20, 40):
            assert math.isclose(
                series.value_at(n), closed_form_binary(p, n), rel_tol=1e-9
            )


def test_markov_rejects_boundary_chains():
    with pytest.raises(ValueError):
        markov_expectation(MarkovModel(Fraction(1), Fraction(1, 2)), 4)
    with pytest.raises(ValueError):
        markov_expectation(MarkovModel(Fraction(1, 2), Fraction(0)), 4)


def test_markov_model_rejects_undefined_start():
    with pytest.raises(ValueError):
        MarkovModel(Fraction(1), Fraction(0))


def test_series_accessors():
    series = iid_matrix_expectation(IIDModel.binary(Fraction(1, 2)), 3)
    assert series.value_at(1) == Fraction(1)
    assert series.final() == Fraction(19, 4)
    assert series.as_floats() == (1.0, 2.5, 4.75)
    with pytest.raises(IndexError):
        series.value_at(0)
    with pytest.raises(IndexError):
        series.value_at(4)
