"""Tests for the sampling layer: seeded generators, estimators, growth
fits, and the superpattern experiment.

Every stochastic assertion here runs under a fixed seed, so the suite is
deterministic; tolerances were chosen with 4-standard-error headroom.
"""

import math

import pytest

from subseqlab import (
    IIDModel,
    MarkovModel,
    asymptotic_constants,
    closed_form_binary,
    estimate_expected_count,
    estimate_growth_constant,
    fit_growth_rate,
    sample_string,
    superpattern_experiment,
    trial_rng,
)
from subseqlab.montecarlo import MAX_SEED, superpattern_k


def test_trial_rng_is_deterministic():
    a = trial_rng(42, 3).random(5).tolist()
    b = trial_rng(42, 3).random(5).tolist()
    assert a == b


def test_trial_rng_separates_trials_and_streams():
    base = trial_rng(42, 0).random(5).tolist()
    assert trial_rng(42, 1).random(5).tolist() != base
    assert trial_rng(42, 0, stream=1).random(5).tolist() != base
    assert trial_rng(43, 0).random(5).tolist() != base


def test_seed_range_enforced():
    with pytest.raises(ValueError):
        estimate_expected_count(IIDModel.binary(0.5), 5, 10, seed=-1)
    with pytest.raises(ValueError):
        estimate_expected_count(IIDModel.binary(0.5), 5, 10, seed=MAX_SEED)


def test_sample_string_shape_and_alphabet():
    s = sample_string(IIDModel.uniform(3), 200, trial_rng(1, 0))
    assert len(s.letters) == 200
    assert s.alphabet.size == 3
    assert set(s.letters) <= {0, 1, 2}


def test_sample_string_degenerate_distribution():
    s = sample_string(IIDModel.binary(1.0), 50, trial_rng(1, 0))
    assert s.letters == (1,) * 50


def test_iid_letter_frequencies():
    """100k draws at alpha = 0.3; the 4-sigma band is about +-580."""
    s = sample_string(IIDModel.binary(0.3), 100_000, trial_rng(11, 0))
    assert abs(sum(s.letters) - 30_000) < 600


def test_markov_transition_frequencies():
    """Empirical transition rates of a sampled chain match the model."""
    s = sample_string(MarkovModel(0.8, 0.2), 100_000, trial_rng(12, 0))
    pairs = list(zip(s.letters, s.letters[1:]))
    stay = sum(1 for a, b in pairs if a == 1 and b == 1)
    ones = sum(1 for a, _ in pairs if a == 1)
    enter = sum(1 for a, b in pairs if a == 0 and b == 1)
    zeros = len(pairs) - ones
    assert abs(stay / ones - 0.8) < 0.01
    assert abs(enter / zeros - 0.2) < 0.01


def test_estimate_requires_two_trials():
    with pytest.raises(ValueError):
        estimate_expected_count(IIDModel.binary(0.5), 5, 1, seed=0)


def test_estimate_matches_exact_mean():
    """n = 18 fair coin: the sample mean lands within 4 standard errors."""
    record = estimate_expected_count(IIDModel.binary(0.5), 18, 4000, seed=7)
    truth = closed_form_binary(0.5, 18)
    assert not record.log_space
    assert abs(record.mean - truth) <= 4 * record.stderr
    assert math.isclose(record.log_mean(), math.log(record.mean))


def test_estimate_is_worker_independent():
    """The same seed gives bit-identical records for any worker count."""
    one = estimate_expected_count(IIDModel.binary(0.5), 18, 400, seed=7)
    three = estimate_expected_count(IIDModel.binary(0.5), 18, 400, seed=7, workers=3)
    assert one == three


def test_estimate_streams_are_independent():
    a = estimate_expected_count(IIDModel.binary(0.5), 18, 400, seed=7)
    b = estimate_expected_count(IIDModel.binary(0.5), 18, 400, seed=7, stream=1)
    assert a.mean != b.mean


def test_estimate_switches_to_log_space():
    """At n = 120 the counts overflow exact float territory, so the
    record reports ln(mean); it still brackets the closed form."""
    record = estimate_expected_count(IIDModel.binary(0.5), 120, 400, seed=321)
    truth = math.log(2 * 1.5**120 - 2)
    assert record.log_space
    assert abs(record.mean - truth) <= 4 * record.stderr
    assert record.log_mean() == record.mean


def test_estimate_calibration_across_seeds():
    """Coverage meta-check: over 20 seeds the 4-sigma interval should
    essentially always contain the exact value."""
    truth = closed_form_binary(0.5, 12)
    hits = 0
    for seed in range(20):
        record = estimate_expected_count(IIDModel.binary(0.5), 12, 2000, seed=seed)
        if abs(record.mean - truth) <= 4 * record.stderr:
            hits += 1
    assert hits >= 19


def test_fit_growth_rate_recovers_pure_exponential():
    ns = list(range(5, 15))
    fit = fit_growth_rate(ns, [math.log(3.0 * 1.4**n) for n in ns])
    assert math.isclose(fit.c, 1.4, rel_tol=1e-12)
    assert math.isclose(fit.intercept, math.log(3.0), rel_tol=1e-9)
    assert fit.r_squared > 0.999999
    assert not fit.clamped


def test_fit_growth_rate_needs_three_lengths():
    with pytest.raises(ValueError):
        fit_growth_rate([3, 4], [1.0, 2.0])


def test_fit_on_exact_series_hits_asymptotic_base():
    """Closed-form values over n = 10..40 fit the predicted growth base
    to a few parts in ten thousand."""
    for alpha in (0.3, 0.5):
        ns = list(range(10, 41))
        fit = fit_growth_rate(ns, [math.log(closed_form_binary(alpha, n)) for n in ns])
        base, _ = asymptotic_constants(alpha)
        assert abs(fit.c - base) / base < 5e-3
        assert fit.r_squared > 0.9999


def test_degenerate_model_clamps_to_no_growth():
    """A one-letter alphabet grows linearly, not exponentially."""
    fit = estimate_growth_constant(IIDModel.binary(1.0), range(10, 41, 5), 50, seed=3)
    assert fit.clamped
    assert fit.c == 1.0


def test_estimate_growth_constant_monte_carlo():
    fit = estimate_growth_constant(
        IIDModel.binary(0.5), range(10, 41, 5), 4000, seed=99
    )
    assert abs(fit.c - 1.5) / 1.5 < 0.02
    assert len(fit.records) == 7
    assert [r.n for r in fit.records] == list(range(10, 41, 5))


def test_superpattern_greedy_known_values():
    from subseqlab import LetterString

    assert superpattern_k(LetterString.from_text("")) == 0
    assert superpattern_k(LetterString.from_text("0101")) == 2
    assert superpattern_k(LetterString.from_text("0011")) == 1
    assert superpattern_k(LetterString.from_text("012012", alphabet=None)) == 2


def test_superpattern_experiment_record():
    record = superpattern_experiment(IIDModel.binary(0.5), 60, 300, seed=5)
    assert sum(count for _, count in record.histogram) == 300
    assert record.mean_ratio == record.mean_k / 60
    assert 0.25 < record.mean_ratio < 0.4
    again = superpattern_experiment(IIDModel.binary(0.5), 60, 300, seed=5, workers=4)
    assert record == again


def test_superpattern_ratio_approaches_one_third():
    """Long fair-coin strings cover all patterns of length about n/3."""
    record = superpattern_experiment(IIDModel.binary(0.5), 1000, 400, seed=5)
    assert abs(record.mean_ratio - 1 / 3) < 0.01
