"""Bounds, the analytic failure model, and the Monte Carlo estimator."""

import math

import numpy as np
import pytest
import scipy.optimize
import scipy.stats

from qutritqec.analytics import (
    BLOCK_SIZE,
    LEADING_ORDER_CROSSING,
    NoiseModel,
    css_counting_argument,
    failure_probability,
    hamming_bound,
    monte_carlo,
    pseudo_threshold,
    wilson_interval,
)


@pytest.mark.parametrize("n,holds", [(1, False), (2, False), (3, False), (4, False), (5, True)])
def test_hamming_bound_first_holds_at_five(n, holds):
    bound = hamming_bound(n)
    assert bound.lhs == 3 * (8 * n + 1)
    assert bound.rhs == 3**n
    assert bound.holds is holds


def test_hamming_bound_five_numbers():
    bound = hamming_bound(5)
    assert (bound.lhs, bound.rhs) == (123, 243)


def test_hamming_bound_rejects_nonpositive():
    with pytest.raises(ValueError):
        hamming_bound(0)


def test_failure_probability_reference_value():
    assert abs(failure_probability(0.1) - 0.08146) < 1e-5


def test_failure_probability_leading_order():
    # ~ 10 p^2 for small p
    assert abs(failure_probability(1e-4) / 1e-8 - 10.0) < 0.1


def test_failure_probability_binomial_oracle():
    for p in (0.0, 1e-3, 0.05, 0.3, 0.9, 1.0):
        oracle = scipy.stats.binom.sf(1, 5, p)
        assert abs(failure_probability(p) - oracle) < 1e-13


def test_failure_probability_monotone():
    grid = np.linspace(0.0, 1.0, 101)
    values = [failure_probability(p) for p in grid]
    assert all(b >= a for a, b in zip(values, values[1:]))
    assert values[0] == 0.0
    assert abs(values[-1] - 1.0) < 1e-15


def test_failure_probability_range_check():
    with pytest.raises(ValueError):
        failure_probability(-0.1)
    with pytest.raises(ValueError):
        failure_probability(1.1)


def test_pseudo_threshold_against_brentq():
    pt = pseudo_threshold()
    oracle = scipy.optimize.brentq(
        lambda p: failure_probability(p) - p, 1e-6, 0.5, xtol=1e-12
    )
    assert abs(pt - oracle) < 1e-9
    assert abs(failure_probability(pt) - pt) < 1e-9


def test_pseudo_threshold_versus_leading_order():
    pt = pseudo_threshold()
    # the quadratic model crosses at 0.1; the full polynomial crosses later
    assert LEADING_ORDER_CROSSING == 0.1
    assert 0.1 < pt < 0.14
    # below the crossing, encoding beats the bare qutrit
    assert failure_probability(0.05) < 0.05


def test_css_counting_argument():
    arg = css_counting_argument()
    assert arg.error_combinations_per_sector == 10
    assert arg.states_to_distinguish == 11
    assert arg.min_generators_per_sector == 3
    assert arg.required_generators == 6
    assert arg.available_generators == 4
    assert not arg.css_possible


def test_noise_model_validation():
    NoiseModel(p=0.5)
    with pytest.raises(ValueError):
        NoiseModel(p=-0.01)
    with pytest.raises(ValueError):
        NoiseModel(p=1.01)
    with pytest.raises(ValueError):
        NoiseModel(p=0.1, weights=(1.0,))
    with pytest.raises(ValueError):
        NoiseModel(p=0.1, weights=(0.5,) * 8)
    uniform = tuple([0.125] * 8)
    assert NoiseModel(p=0.1, weights=uniform).weights == uniform


def test_wilson_interval_contains_estimate():
    for failures, trials in ((0, 10), (1, 17), (963, 10**6), (10, 10)):
        low, high = wilson_interval(failures, trials)
        assert 0.0 <= low <= failures / trials <= high <= 1.0


def test_wilson_interval_scipy_oracle():
    for failures, trials in ((3, 100), (963, 10**6), (0, 50)):
        low, high = wilson_interval(failures, trials)
        ci = scipy.stats.binomtest(failures, trials).proportion_ci(
            confidence_level=0.95, method="wilson"
        )
        assert abs(low - ci.low) < 1e-12
        assert abs(high - ci.high) < 1e-12


def test_wilson_interval_rejects_empty():
    with pytest.raises(ValueError):
        wilson_interval(0, 0)


def test_monte_carlo_zero_noise(code):
    report = monte_carlo(NoiseModel(p=0.0, seed=1), trials=5000, code=code)
    assert report.failures == 0
    assert report.rate == 0.0
    assert report.multi_error_trials == 0


def test_monte_carlo_worker_count_invariance(code):
    trials = 3 * BLOCK_SIZE + 17
    model = NoiseModel(p=0.05, seed=11)
    reports = [
        monte_carlo(model, trials=trials, code=code, workers=w) for w in (1, 4, 8)
    ]
    assert len({r.failures for r in reports}) == 1
    assert len({r.multi_error_trials for r in reports}) == 1
    assert len({r.multi_error_corrected for r in reports}) == 1
    again = monte_carlo(model, trials=trials, code=code)
    assert again.failures == reports[0].failures


def test_monte_carlo_against_analytic_model(code):
    model = NoiseModel(p=0.01, seed=42)
    report = monte_carlo(model, trials=10**6, code=code)
    assert report.trials == 10**6
    assert report.analytic == pytest.approx(failure_probability(0.01))
    low, high = report.interval
    # the analytic polynomial assumes every multi-site error fails; the
    # decoder occasionally does better, so the rate may sit at or below it
    assert report.rate <= high
    assert (low <= report.analytic <= high) or (report.rate < report.analytic)
    assert abs(report.rate - 9.8e-4) < 2e-4
    assert report.failures <= report.multi_error_trials
    assert 0.0 <= report.multi_error_corrected_fraction <= 1.0


def test_monte_carlo_saturated_noise(code):
    report = monte_carlo(NoiseModel(p=1.0, seed=3), trials=2000, code=code)
    assert report.rate > 0.9
    assert report.multi_error_trials == 2000


def test_monte_carlo_biased_weights(code):
    # all errors of one type still decode perfectly at the single-site level
    weights = (1.0,) + (0.0,) * 7
    model = NoiseModel(p=0.02, seed=9, weights=weights)
    report = monte_carlo(model, trials=20000, code=code)
    assert report.failures <= report.multi_error_trials


def test_monte_carlo_rejects_bad_trials(code):
    with pytest.raises(ValueError):
        monte_carlo(NoiseModel(p=0.1), trials=0, code=code)


def test_single_site_errors_never_fail(code):
    # p small enough that most trials have <= 1 error; failures must all
    # come from the multi-error subset
    report = monte_carlo(NoiseModel(p=0.005, seed=21), trials=50000, code=code)
    single_or_clean = report.trials - report.multi_error_trials
    assert report.failures <= report.multi_error_trials
    assert single_or_clean > 0
