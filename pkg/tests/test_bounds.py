import math
from fractions import Fraction

import pytest

from ncfold import (
    bound_report,
    ell_census,
    entropy,
    lambda_tilde,
    lower_bound_base,
    lower_bound_refined_k2,
    tau_asymptotic,
    theta,
    trivial_word_count,
    upper_bound_elementary_k2,
)


# --- theta ---

def test_theta_values():
    assert theta(2) == pytest.approx(math.sqrt(3) / 2, abs=1e-15)
    assert theta(1) == 1.0
    assert theta(5) < theta(3) < theta(2)


def test_theta_validates():
    with pytest.raises(ValueError):
        theta(0)


# --- trivial word counts ---

def test_trivial_word_count_values():
    assert trivial_word_count(0, 2) == 1
    assert trivial_word_count(2, 2) == 4
    assert trivial_word_count(4, 2) == 28
    assert trivial_word_count(3, 2) == 0
    assert trivial_word_count(5, 7) == 0


def test_trivial_count_matches_zero_length_census():
    # a word is trivial iff everything can be matched
    for k in (2, 3):
        for n in (2, 4, 6):
            assert ell_census(n, k).get(0, 0) == trivial_word_count(n, k)


def test_trivial_probability_supermultiplicative():
    tau = {p: Fraction(trivial_word_count(p, 2), 4**p) for p in range(1, 13)}
    for p in range(1, 12):
        for q in range(1, 13 - p):
            assert tau[p] * tau[q] <= tau[p + q]


def test_trivial_probability_below_growth_rate():
    # tau_p <= theta^p, compared exactly via tau_p^2 <= (3/4)^p
    for p in range(1, 13):
        tau_p = Fraction(trivial_word_count(p, 2), 4**p)
        assert tau_p**2 <= Fraction(3, 4) ** p


# --- Catalan proxy ---

def test_tau_asymptotic_first_value():
    assert tau_asymptotic(1, 2) == pytest.approx(3 / 16, abs=1e-15)
    assert tau_asymptotic(0, 2) == 1.0


def test_tau_asymptotic_root_converges():
    # the polynomial prefactor makes the 2m-th root converge slowly:
    # the gap is ~1.8e-2 at m=200 and first drops under 1e-2 near m=450
    target = math.sqrt(3) / 2
    gaps = [abs(tau_asymptotic(m, 2) ** (1 / (2 * m)) - target) for m in (100, 200, 400, 1000)]
    assert gaps == sorted(gaps, reverse=True)
    assert abs(tau_asymptotic(500, 2) ** (1 / 1000) - target) < 0.01


def test_tau_asymptotic_stirling_ratio():
    # tau * sqrt(pi) m^1.5 k^{2m} / (2k-1)^m -> 1; the alphabet powers cancel
    # against tau exactly, leaving C(2m,m) sqrt(pi) m^1.5 / (4^m (m+1)).
    # The gap decays like 9/(8m): ~1.12e-3 at m=1000.
    def ratio(m):
        return float(Fraction(math.comb(2 * m, m), 4**m * (m + 1))) * math.sqrt(math.pi) * m**1.5

    r1000 = ratio(1000)
    r2000 = ratio(2000)
    assert abs(r1000 - 1) < 2e-3
    assert abs(r2000 - 1) < abs(r1000 - 1)


def test_tau_asymptotic_differs_from_exact_at_finite_m():
    # the walk leaves the origin with probability one, the proxy pretends
    # (2k-1)/2k; at p=2, k=2 that is 3/16 versus the exact 4/16
    assert tau_asymptotic(1, 2) == pytest.approx(3 / 16)
    assert Fraction(trivial_word_count(2, 2), 16) == Fraction(4, 16)


# --- entropy ---

def test_entropy_max():
    assert entropy(0.5) == pytest.approx(math.log(2), abs=1e-15)


def test_entropy_symmetry():
    for d in (0.03, 0.1, 0.25, 0.4):
        assert entropy(d) == pytest.approx(entropy(1 - d), abs=1e-12)


def test_entropy_at_003():
    assert entropy(0.03) == pytest.approx(0.13474, abs=1e-5)


def test_entropy_domain():
    for bad in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(ValueError):
            entropy(bad)


# --- lower bounds ---

def test_base_bound_certifies_003():
    assert entropy(0.03) + math.log(theta(2)) < 0
    assert lower_bound_base(2) > 0.03


def test_base_bound_root_bracket():
    root = lower_bound_base(2)
    assert 0.03 < root < 0.04
    assert entropy(root) + math.log(theta(2)) < 0  # returned point stays feasible


def test_base_bound_stability_under_tol():
    assert abs(lower_bound_base(2, tol=1e-6) - lower_bound_base(2, tol=5e-7)) <= 1e-6


def test_base_bound_increases_with_k_and_saturates():
    roots = [lower_bound_base(k) for k in (2, 3, 5, 7)]
    assert roots == sorted(roots)
    # theta_k <= 1/2 from k=8 on: the criterion holds on all of (0,1)
    assert lower_bound_base(8) == 1.0
    assert lower_bound_base(1000) > 0.9


def test_base_bound_requires_k2():
    with pytest.raises(ValueError):
        lower_bound_base(1)


def test_refined_bound_certifies_0034():
    crit = entropy(0.034) + 0.034 * math.log(3 / 4) + 0.966 * math.log(math.sqrt(3) / 2)
    assert crit < 0
    root = lower_bound_refined_k2()
    assert root > 0.034
    assert root > lower_bound_base(2)
    # frozen from the bisection at tol=1e-9
    assert root == pytest.approx(0.0341, abs=5e-4)


def test_refined_bound_stability_under_tol():
    assert abs(lower_bound_refined_k2(1e-6) - lower_bound_refined_k2(5e-7)) <= 1e-6


# --- elementary upper bound ---

def test_elementary_upper_bound_value():
    value = upper_bound_elementary_k2()
    assert abs(value - 0.2886) <= 0.0005
    assert value < 0.29


def test_elementary_upper_bound_first_term():
    # a run of length 1 always leaves its letter unmatched: E|2 Xi - 1| = 1
    assert upper_bound_elementary_k2(truncation=1, tol=1.0) == pytest.approx(1 / 8)


def test_elementary_upper_bound_converges():
    v20 = upper_bound_elementary_k2(truncation=20, tol=1e-4)
    v40 = upper_bound_elementary_k2(truncation=40, tol=1e-9)
    v64 = upper_bound_elementary_k2(truncation=64, tol=1e-12)
    assert v20 >= v40 - 1e-4 and v40 >= v64 - 1e-9
    assert abs(v40 - v64) < 1e-9


def test_elementary_upper_bound_truncation_guard():
    with pytest.raises(ValueError):
        upper_bound_elementary_k2(truncation=10, tol=1e-12)


# --- aggregated report ---

def test_bound_report_k2():
    report = bound_report(2)
    assert report.lower_base <= report.lower_refined < float(report.upper_greedy)
    assert report.lower_refined >= 0.034
    assert report.upper_elementary == pytest.approx(0.2887, abs=1e-3)
    assert report.upper_greedy == Fraction(3, 13)
    assert report.notes


def test_bound_report_k3():
    report = bound_report(3)
    assert report.lower_refined is None and report.upper_elementary is None
    assert report.upper_greedy == Fraction(33, 100)


def test_bound_report_bracket_valid_small_k():
    for k in range(2, 6):
        report = bound_report(k)
        assert 0.0 < report.lower_base < float(report.upper_greedy) < 1.0
        assert report.upper_greedy == lambda_tilde(k)


def test_bound_report_requires_k2():
    with pytest.raises(ValueError):
        bound_report(1)
