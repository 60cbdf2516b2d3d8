"""Acceptance bundle: every headline number checked at its stated tolerance.

Each check is a pure function returning a :class:`CheckResult`; the driver
prints one pass/fail line per check and optionally writes the detail
payloads as JSON (plus CSV where tabular).  The same checks back the
acceptance test module.
"""

from __future__ import annotations

import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path
from typing import Callable

from . import bounds as bounds_mod
from . import matching as matching_mod
from . import montecarlo as mc
from .chain import (
    ChainParams,
    TRUNCATION_CONVENTIONS,
    chain_params,
    enumerate_omega0,
    lambda_tilde,
    truncated_chain_pi,
    verify_balance,
)
from .greedy import greedy_match
from .matching import brute_force_length, ell_census, optimal_length, rho_exact
from .words import Rng, Word, conjugate, free_reduce, parse_word, sample_word

__all__ = ["CheckResult", "ACCEPTANCE_CHECKS", "run_checks"]


@dataclass
class CheckResult:
    name: str
    passed: bool
    details: dict
    artifacts: dict[str, str] = field(default_factory=dict)


def _all_words(k: int, n: int):
    letters = [g for g in range(1, k + 1)] + [-g for g in range(1, k + 1)]
    for combo in product(letters, repeat=n):
        yield Word(k, combo)


def check_census_n4() -> CheckResult:
    """Exhaustive n=4, k=2 census and its exact mean fraction."""
    counts = ell_census(4, 2)
    rho4 = rho_exact(4, 2)
    expected = {0: 28, 2: 168, 4: 60}
    passed = counts == expected and rho4 == Fraction(9, 16)
    csv = "ell_value,count\n" + "\n".join(f"{e},{c}" for e, c in sorted(counts.items()))
    return CheckResult(
        "census-n4",
        passed,
        {"counts": {str(e): c for e, c in sorted(counts.items())},
         "expected": {str(e): c for e, c in sorted(expected.items())},
         "rho_4": str(rho4), "expected_rho_4": "9/16"},
        artifacts={"census_n4_k2.csv": csv},
    )


def check_dp_oracle() -> CheckResult:
    """Interval DP vs definition-unrolled brute force."""
    mismatches = 0
    checked = 0
    for word in _all_words(2, 6):
        checked += 1
        if optimal_length(word).unmatched != brute_force_length(word).unmatched:
            mismatches += 1
    rng = Rng(2024)
    gen = rng.generator
    for _ in range(1000):
        n = int(gen.integers(1, 15))
        k = int(gen.integers(2, 4))
        word = sample_word(n, k, rng)
        checked += 1
        if optimal_length(word).unmatched != brute_force_length(word).unmatched:
            mismatches += 1
    return CheckResult(
        "dp-oracle-equivalence",
        mismatches == 0,
        {"checked": checked, "mismatches": mismatches,
         "exhaustive": "k=2, n=6", "random": "1000 words, n<=14, k in {2,3}"},
    )


def check_invariance() -> CheckResult:
    """Length is unchanged by free reduction and conjugation."""
    reduce_violations = 0
    reduce_checked = 0
    for n in range(0, 7):
        for word in _all_words(2, n):
            reduce_checked += 1
            if optimal_length(word).unmatched != optimal_length(free_reduce(word)).unmatched:
                reduce_violations += 1
    conj_violations = 0
    conj_checked = 0
    ws = [w for n in range(0, 5) for w in _all_words(2, n)]
    hs = [h for n in range(0, 3) for h in _all_words(2, n)]
    for w in ws:
        base = optimal_length(w).unmatched
        for h in hs:
            conj_checked += 1
            if optimal_length(conjugate(w, h)).unmatched != base:
                conj_violations += 1
    return CheckResult(
        "invariance-reduction-conjugation",
        reduce_violations == 0 and conj_violations == 0,
        {"reduction_checked": reduce_checked, "reduction_violations": reduce_violations,
         "conjugation_checked": conj_checked, "conjugation_violations": conj_violations},
    )


def check_greedy_golden() -> CheckResult:
    """The worked greedy example: pairs 3-5 and 2-7, four letters unmatched."""
    trace = greedy_match(parse_word("ababAaBb", 2))
    expected_pairs = {(3, 5), (2, 7)}
    passed = set(trace.matched_pairs) == expected_pairs and trace.unmatched == 4
    return CheckResult(
        "greedy-golden",
        passed,
        {"pairs": sorted(list(p) for p in trace.matched_pairs),
         "expected_pairs": sorted(list(p) for p in expected_pairs),
         "unmatched": trace.unmatched, "expected_unmatched": 4},
    )


def check_chain_constants() -> CheckResult:
    """Stationary constants and the exact greedy rates for k = 2..5.

    The k=4 rate is 297/755: the file the table was lifted from prints
    297/455, but its own decimal 0.393... and the closed form both give
    755 in the denominator.
    """
    params = chain_params(2)
    ok_params = params.tau == (Fraction(1, 2), Fraction(1, 3)) and params.z == 13
    expected = {2: Fraction(3, 13), 3: Fraction(33, 100),
                4: Fraction(297, 755), 5: Fraction(3126, 7115)}
    rates = {k: lambda_tilde(k) for k in expected}
    ok_rates = rates == expected
    return CheckResult(
        "chain-constants",
        ok_params and ok_rates,
        {"tau": [str(t) for t in params.tau], "z": str(params.z),
         "rates": {str(k): str(v) for k, v in rates.items()},
         "expected_rates": {str(k): str(v) for k, v in expected.items()}},
    )


def check_balance_equations() -> CheckResult:
    """Exact balance for k=2 (L=4) and k=3 (L=3); a tau perturbation must fail."""
    r2 = verify_balance(2, 4)
    r3 = verify_balance(3, 3)
    true = chain_params(2)
    perturbed = ChainParams(k=2, tau=(true.tau[0] + Fraction(1, 100), true.tau[1]), z=true.z)
    r_bad = verify_balance(2, 3, params=perturbed)
    passed = r2.ok and r3.ok and len(r_bad.violations) > 0
    return CheckResult(
        "balance-equations",
        passed,
        {"k2_L4": {"checked": r2.checked, "violations": len(r2.violations)},
         "k3_L3": {"checked": r3.checked, "violations": len(r3.violations)},
         "perturbed_tau1_violations": len(r_bad.violations)},
    )


def check_truncated_remark() -> CheckResult:
    """Finite chain at k=2, L=5 reproduces the stationary values below L.

    The tail-exact boundary convention matches exactly; the two blocked
    conventions turn out proportional to the stationary law on short states
    (their spread is recorded), which misses the 1e-10 absolute tolerance.
    """
    tol = 1e-10
    per_convention = {}
    passing = []
    for convention in TRUNCATION_CONVENTIONS:
        result = truncated_chain_pi(2, 5, convention)
        diff = result.max_abs_diff_to_stationary()
        lo, hi = result.proportionality_spread()
        per_convention[convention] = {
            "max_abs_diff_below_L": diff,
            "proportionality_spread_below_L": [lo, hi],
            "residual": result.residual,
        }
        if diff <= tol:
            passing.append(convention)
    return CheckResult(
        "truncated-chain-remark",
        bool(passing),
        {"k": 2, "L": 5, "tolerance": tol,
         "passing_conventions": passing, "per_convention": per_convention},
    )


def check_greedy_ergodic() -> CheckResult:
    """Single greedy runs of length 1e6 land within 0.005 of the exact rates."""
    runs = {}
    passed = True
    for k, target in ((2, Fraction(3, 13)), (3, Fraction(33, 100))):
        fraction = mc.greedy_longrun(10**6, k, seed=11)
        err = abs(fraction - float(target))
        runs[str(k)] = {"fraction": fraction, "target": str(target), "abs_error": err}
        passed = passed and err <= 0.005
    return CheckResult("greedy-ergodic", passed, {"n": 10**6, "tolerance": 0.005, "runs": runs})


def check_bounds() -> CheckResult:
    """Lower bounds certify 0.03 / 0.034; elementary upper bound is 0.2886(5)."""
    log_theta2 = math.log(bounds_mod.theta(2))
    feasible_003 = bounds_mod.entropy(0.03) + log_theta2 < 0
    refined_criterion = (bounds_mod.entropy(0.034) + 0.034 * math.log(3 / 4)
                         + 0.966 * math.log(math.sqrt(3) / 2))
    feasible_0034 = refined_criterion < 0
    base_root = bounds_mod.lower_bound_base(2)
    refined_root = bounds_mod.lower_bound_refined_k2()
    upper = bounds_mod.upper_bound_elementary_k2()
    report = bounds_mod.bound_report(2)
    greedy_rate = float(report.upper_greedy)
    bracket_ok = (0.0 < report.lower_base <= report.lower_refined < greedy_rate < 1.0
                  and report.lower_refined >= 0.034 and greedy_rate <= 0.231)
    passed = (feasible_003 and feasible_0034
              and 0.03 < base_root < 0.04
              and refined_root > 0.034 and refined_root > base_root
              and abs(upper - 0.2886) <= 0.0005 and upper < 0.29
              and bracket_ok)
    return CheckResult(
        "bounds",
        passed,
        {"delta_003_feasible": feasible_003, "delta_0034_feasible_refined": feasible_0034,
         "base_root": base_root, "refined_root": refined_root,
         "upper_elementary": upper, "upper_greedy": str(report.upper_greedy),
         "bracket": [report.lower_refined, greedy_rate]},
    )


def check_trivial_counts() -> CheckResult:
    """Trivial-word DP vs the zero-unmatched census; growth-rate inequalities."""
    t2 = bounds_mod.trivial_word_count(2, 2)
    t4 = bounds_mod.trivial_word_count(4, 2)
    census_ok = True
    for k in (2, 3):
        for n in (2, 4, 6, 8):
            zero = ell_census(n, k).get(0, 0)
            if zero != bounds_mod.trivial_word_count(n, k):
                census_ok = False
    # tau_p tau_q <= tau_{p+q} and tau_p <= theta^p, exactly in rationals
    tau = {p: Fraction(bounds_mod.trivial_word_count(p, 2), 4**p) for p in range(1, 13)}
    supermult_ok = all(tau[p] * tau[q] <= tau[p + q]
                       for p in range(1, 12) for q in range(1, 13 - p))
    # theta_2^p = (3/4)^{p/2}; compare tau_p^2 <= (3/4)^p to stay rational
    fekete_ok = all(tau[p] ** 2 <= Fraction(3, 4) ** p for p in range(1, 13))
    passed = t2 == 4 and t4 == 28 and census_ok and supermult_ok and fekete_ok
    return CheckResult(
        "trivial-counts",
        passed,
        {"T2": t2, "T4": t4, "census_cross_check": census_ok,
         "supermultiplicative": supermult_ok, "growth_rate_dominated": fekete_ok},
    )


def check_concentration() -> CheckResult:
    """Deviation tails at n=200 stay under 2 exp(-t^2/8) plus 3 standard errors."""
    report = mc.concentration_experiment(200, 2, 100_000, (1.0, 2.0, 3.0), seed=3)
    rows = []
    passed = True
    for t, emp, bnd in zip(report.t_grid, report.empirical_tail, report.bound):
        p = min(bnd, 1.0)
        slack = 3.0 * math.sqrt(p * (1.0 - p) / report.samples)
        ok = emp <= bnd + slack
        rows.append({"t": t, "empirical": emp, "bound": bnd, "slack": slack, "ok": ok})
        passed = passed and ok
    csv = "t,empirical_tail,bound\n" + "\n".join(
        f"{r['t']},{r['empirical']},{r['bound']}" for r in rows)
    return CheckResult(
        "concentration",
        passed,
        {"n": report.n, "samples": report.samples, "center": report.center,
         "per_sample_sd": report.per_sample_sd, "rows": rows},
        artifacts={"concentration_n200_k2.csv": csv},
    )


def check_bracket_consistency() -> CheckResult:
    """Monte Carlo mean fraction sits inside the proven bracket; the mean
    fraction shrinks with length.

    Uses n=2000 (the documented fallback: the cubic-time matcher makes
    n=10000 x 500 samples a multi-hour run, far over the desk budget).
    """
    report = mc.estimate_rho(2000, 2, 500, seed=5)
    in_bracket = 0.034 < report.mean_fraction < 0.231
    trend = []
    prev = None
    trend_ok = True
    for n, samples in ((4, 4000), (16, 2000), (64, 1000), (256, 500)):
        r = mc.estimate_rho(n, 2, samples, seed=7)
        trend.append({"n": n, "mean": r.mean_fraction, "halfwidth": r.hoeffding_halfwidth})
        if prev is not None:
            # decreasing within the two confidence halfwidths
            if r.mean_fraction >= prev["mean"] + prev["halfwidth"] + r.hoeffding_halfwidth:
                trend_ok = False
        prev = {"mean": r.mean_fraction, "halfwidth": r.hoeffding_halfwidth}
    return CheckResult(
        "bracket-consistency",
        in_bracket and trend_ok,
        {"n": report.n, "samples": report.samples,
         "mean_fraction": report.mean_fraction,
         "hoeffding_halfwidth": report.hoeffding_halfwidth,
         "bracket": [0.034, 0.231], "in_bracket": in_bracket,
         "fallback_note": "n=2000 fallback for the 1e4 target (cubic DP budget)",
         "trend": trend, "trend_decreasing": trend_ok},
    )


ACCEPTANCE_CHECKS: tuple[tuple[str, Callable[[], CheckResult]], ...] = (
    ("census-n4", check_census_n4),
    ("dp-oracle-equivalence", check_dp_oracle),
    ("invariance-reduction-conjugation", check_invariance),
    ("greedy-golden", check_greedy_golden),
    ("chain-constants", check_chain_constants),
    ("balance-equations", check_balance_equations),
    ("truncated-chain-remark", check_truncated_remark),
    ("greedy-ergodic", check_greedy_ergodic),
    ("bounds", check_bounds),
    ("trivial-counts", check_trivial_counts),
    ("concentration", check_concentration),
    ("bracket-consistency", check_bracket_consistency),
)


def run_checks(only: str | None = None, out_dir: str | None = None,
               echo: Callable[[str], None] = print) -> bool:
    """Run the acceptance checks, print one line per check, write reports."""
    selected = [(name, fn) for name, fn in ACCEPTANCE_CHECKS
                if only is None or only in name]
    if not selected:
        echo(f"no checks match {only!r}")
        return False
    out_path = Path(out_dir) if out_dir is not None else None
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for name, fn in selected:
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
        status = "PASS" if result.passed else "FAIL"
        echo(f"[{status}] {name} ({elapsed:.1f}s)")
        if not result.passed:
            echo(f"       details: {json.dumps(result.details, sort_keys=True)}")
            all_ok = False
        if out_path is not None:
            payload = {"check": name, "passed": result.passed, "details": result.details}
            (out_path / f"{name}.json").write_text(
                json.dumps(payload, indent=2, sort_keys=True) + "\n")
            for fname, content in result.artifacts.items():
                (out_path / fname).write_text(content + "\n")
    return all_ok
