import math

import pytest

from ncfold import (
    Word,
    concentration_experiment,
    estimate_rho,
    greedy_longrun,
    greedy_match,
    lambda_tilde,
    monotonicity_experiment,
    rho_exact,
    subadditivity_experiment,
)


# --- estimate_rho ---

def test_single_letters_never_match():
    report = estimate_rho(1, 2, samples=200, seed=0)
    assert report.mean_fraction == 1.0


def test_estimate_reproducible():
    a = estimate_rho(64, 2, samples=300, seed=9)
    b = estimate_rho(64, 2, samples=300, seed=9)
    assert a == b


def test_estimate_worker_count_does_not_change_bits():
    a = estimate_rho(64, 2, samples=300, seed=9, workers=1)
    b = estimate_rho(64, 2, samples=300, seed=9, workers=2)
    assert a.mean_fraction == b.mean_fraction
    assert a.per_sample_sd == b.per_sample_sd


def test_estimate_matches_exact_expectation():
    for n in (4, 6):
        exact = float(rho_exact(n, 2))
        report = estimate_rho(n, 2, samples=4000, seed=1)
        se = report.per_sample_sd / math.sqrt(report.samples)
        assert abs(report.mean_fraction - exact) <= 4 * se


def test_estimate_validates():
    with pytest.raises(ValueError):
        estimate_rho(0, 2, 10)
    with pytest.raises(ValueError):
        estimate_rho(5, 2, 0)
    with pytest.raises(ValueError):
        estimate_rho(5, 2, 10, workers=0)


def test_halfwidth_formula():
    report = estimate_rho(16, 2, samples=100, seed=2)
    expected = math.sqrt(8 * math.log(2 / 0.05) / (16 * 100))
    assert report.hoeffding_halfwidth == pytest.approx(expected, rel=1e-12)


# --- concentration ---

def test_concentration_t0_trivial():
    report = concentration_experiment(50, 2, samples=500, t_grid=(0.0,), seed=3)
    assert report.empirical_tail[0] <= 1.0 <= report.bound[0] == 2.0


def test_concentration_bound_formula_and_tails():
    report = concentration_experiment(100, 2, samples=2000, t_grid=(1.0, 2.0, 3.0), seed=4)
    for t, b in zip(report.t_grid, report.bound):
        assert b == pytest.approx(2 * math.exp(-t * t / 8), rel=1e-12)
    for emp, b in zip(report.empirical_tail, report.bound):
        se = 3 * math.sqrt(min(b, 1.0) * (1 - min(b, 1.0)) / report.samples)
        assert emp <= b + se
    assert report.centering == "empirical-mean"


def test_per_sample_sd_scales_like_sqrt_n():
    # sd grows like sqrt(n): over a 16x length window the ratio sits well
    # inside the loose (2, 8) band around the ideal factor 4
    small = concentration_experiment(160, 2, samples=256, t_grid=(3.0,), seed=5)
    large = concentration_experiment(2560, 2, samples=48, t_grid=(3.0,), seed=5)
    ratio = large.per_sample_sd / small.per_sample_sd
    assert 2.0 < ratio < 8.0


def test_concentration_validates():
    with pytest.raises(ValueError):
        concentration_experiment(50, 2, samples=1, t_grid=(1.0,))
    with pytest.raises(ValueError):
        concentration_experiment(50, 2, samples=10, t_grid=(-1.0,))


# --- subadditivity ---

def test_subadditivity_no_violations():
    for m, n, k in ((4, 4, 2), (7, 3, 2), (5, 5, 3)):
        report = subadditivity_experiment(m, n, k, samples=400, seed=6)
        assert report.violations == 0
        assert report.mean_concat <= report.mean_parts + 1e-12


def test_subadditivity_degenerate_prefix():
    report = subadditivity_experiment(0, 6, 2, samples=200, seed=7)
    assert report.violations == 0
    assert report.mean_concat == report.mean_parts


def test_subadditivity_validates():
    with pytest.raises(ValueError):
        subadditivity_experiment(0, 0, 2, samples=10)


# --- monotonicity in alphabet size ---

def test_monotonicity_k2_vs_k3_separated():
    report = monotonicity_experiment(400, 2, samples=400, seed=8)
    assert report.rho_small < report.rho_large
    assert report.separated
    assert report.ordered_within_noise


def test_same_seed_same_estimate():
    a = estimate_rho(100, 2, samples=50, seed=10)
    b = estimate_rho(100, 2, samples=50, seed=10)
    assert a.mean_fraction == b.mean_fraction


def test_monotonicity_validates():
    with pytest.raises(ValueError):
        monotonicity_experiment(100, 1, samples=10)


# --- greedy long runs ---

def test_greedy_longrun_deterministic():
    assert greedy_longrun(5000, 2, seed=11) == greedy_longrun(5000, 2, seed=11)


def test_greedy_longrun_tracks_exact_rate():
    fraction = greedy_longrun(200_000, 2, seed=12)
    assert abs(fraction - float(lambda_tilde(2))) < 0.01


def test_greedy_perfect_cancellation_word():
    assert greedy_match(Word(2, (1, -1))).unmatched == 0


def test_greedy_longrun_validates():
    with pytest.raises(ValueError):
        greedy_longrun(0, 2)
