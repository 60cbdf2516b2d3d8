"""Analytic bounds bracketing the limiting unmatched fraction.

Lower bounds come from counting words that admit near-complete matchings: a
word with few unmatched letters decomposes into a sparse unmatched subword
plus a trivial (completely matchable) part, and trivial words have
exponential density ``theta_k^p`` with ``theta_k = sqrt(2k-1)/k``.  A
binary-entropy estimate of the decomposition count then yields a feasible
unmatched fraction.  Upper bounds come from explicit matching strategies:
the alternating-run scheme (k=2) and the greedy chain rate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chain import lambda_tilde

__all__ = [
    "theta",
    "trivial_word_count",
    "tau_asymptotic",
    "entropy",
    "lower_bound_base",
    "lower_bound_refined_k2",
    "upper_bound_elementary_k2",
    "BoundReport",
    "bound_report",
]


def theta(k: int) -> float:
    """Growth rate of the trivial-word probability: ``sqrt(2k-1)/k``."""
    if k < 1:
        raise ValueError("alphabet size k must be >= 1")
    return math.sqrt(2 * k - 1) / k


def trivial_word_count(p: int, k: int) -> int:
    """Exact number of length-``p`` words that reduce to the empty word.

    Dynamic program over the reduced length: appending a letter moves a
    word at reduced length ``d >= 1`` down with 1 choice and up with
    ``2k - 1`` choices; from ``d = 0`` all ``2k`` letters move up.
    """
    if p < 0:
        raise ValueError("word length must be >= 0")
    if k < 1:
        raise ValueError("alphabet size k must be >= 1")
    counts = [1]
    for _ in range(p):
        nxt = [0] * (len(counts) + 1)
        for d, c in enumerate(counts):
            if not c:
                continue
            if d == 0:
                nxt[1] += 2 * k * c
            else:
                nxt[d - 1] += c
                nxt[d + 1] += (2 * k - 1) * c
        counts = nxt
    return counts[0]


def tau_asymptotic(m: int, k: int) -> float:
    """Catalan-form proxy for the trivial-word probability at length ``2m``:
    ``(2k-1)^m / ((2k)^{2m} (m+1)) * C(2m, m)``.

    An asymptotic device: its ``2m``-th root converges to :func:`theta`, but
    at finite ``m`` it differs from the exact return probability because the
    reduced-length walk leaves 0 with probability one.
    """
    if m < 0:
        raise ValueError("half-length must be >= 0")
    if k < 1:
        raise ValueError("alphabet size k must be >= 1")
    value = Fraction((2 * k - 1) ** m * math.comb(2 * m, m), (2 * k) ** (2 * m) * (m + 1))
    return float(value)


def entropy(delta: float) -> float:
    """Natural-log binary entropy ``-d ln d - (1-d) ln(1-d)`` on (0, 1)."""
    if not 0.0 < delta < 1.0:
        raise ValueError("entropy argument must lie strictly between 0 and 1")
    return -delta * math.log(delta) - (1.0 - delta) * math.log(1.0 - delta)


def _bisect_root(fn, lo: float, hi: float, tol: float) -> float:
    """Largest feasible point of an increasing sign change: returns the lower
    end of the final bracket, so the result always satisfies ``fn < 0``."""
    flo, fhi = fn(lo), fn(hi)
    if flo >= 0 or fhi <= 0:
        raise ValueError("bisection bracket does not straddle a sign change")
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if fn(mid) < 0:
            lo = mid
        else:
            hi = mid
    return lo


def lower_bound_base(k: int, tol: float = 1e-9) -> float:
    """Supremum of unmatched fractions certified by the entropy count.

    Every ``delta`` with ``h(delta) + ln theta_k < 0`` is a valid lower
    bound for the limiting fraction.  The criterion has a single sign
    change in (0, 1/2); for large ``k`` (``theta_k <= 1/2``, i.e. ``k >= 8``)
    it holds on all of (0, 1) and the supremum is 1.
    """
    if k < 2:
        raise ValueError("the entropy bound needs k >= 2")
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    log_theta = math.log(theta(k))

    def criterion(delta: float) -> float:
        return entropy(delta) + log_theta

    if criterion(0.5) <= 0:
        return 1.0
    return _bisect_root(criterion, 1e-6, 0.5, tol)


def lower_bound_refined_k2(tol: float = 1e-9) -> float:
    """Refined k=2 lower bound from canonical (maximal) decompositions.

    Maximality shrinks the unmatched-subword alphabet from 4 to 3 except in
    a tail run, replacing the criterion by
    ``h(delta) + delta ln(3/4) + (1-delta) ln(sqrt(3)/2) < 0``.
    """
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    log34 = math.log(3.0 / 4.0)
    log_theta2 = math.log(math.sqrt(3.0) / 2.0)

    def criterion(delta: float) -> float:
        return entropy(delta) + delta * log34 + (1.0 - delta) * log_theta2

    return _bisect_root(criterion, 1e-6, 0.5, tol)


def upper_bound_elementary_k2(truncation: int = 64, tol: float = 1e-12) -> float:
    """Alternating-run upper bound for k=2: ``(1/4) E|2 Xi - U|`` with ``U``
    geometric(1/2) and ``Xi | U`` binomial(U, 1/2).

    The expectation is summed exactly up to ``truncation`` runs; the
    discarded tail is at most ``(truncation + 2) 2^{-truncation} / 4``
    (since ``|2 Xi - U| <= U``), which must not exceed ``tol``.
    """
    if truncation < 1:
        raise ValueError("truncation must be >= 1")
    tail = Fraction(truncation + 2, 2**truncation) / 4
    if float(tail) > tol:
        raise ValueError(
            f"truncation {truncation} leaves tail {float(tail):.3e} > tol {tol:.3e}"
        )
    total = Fraction(0)
    for u in range(1, truncation + 1):
        inner = sum(math.comb(u, x) * abs(2 * x - u) for x in range(u + 1))
        total += Fraction(inner, 4**u)
    return float(total / 4)


@dataclass(frozen=True)
class BoundReport:
    """Bracket for the limiting unmatched fraction with method provenance."""

    k: int
    lower_base: float
    lower_refined: float | None
    upper_elementary: float | None
    upper_greedy: Fraction
    notes: tuple[str, ...]


def bound_report(k: int, tol: float = 1e-9) -> BoundReport:
    """All applicable bounds for alphabet size ``k`` (refined/elementary are
    k=2 only)."""
    if k < 2:
        raise ValueError("bound reports need k >= 2")
    notes = [
        "lower_base: entropy criterion against the trivial-word growth rate",
        "upper_greedy: exact asymptotic rate of the one-sided greedy matcher",
    ]
    lower_refined = None
    upper_elementary = None
    if k == 2:
        lower_refined = lower_bound_refined_k2(tol)
        upper_elementary = upper_bound_elementary_k2()
        notes.insert(1, "lower_refined: canonical-decomposition refinement (k=2)")
        notes.insert(2, "upper_elementary: alternating-run matching expectation (k=2)")
    return BoundReport(
        k=k,
        lower_base=lower_bound_base(k, tol),
        lower_refined=lower_refined,
        upper_elementary=upper_elementary,
        upper_greedy=lambda_tilde(k),
        notes=tuple(notes),
    )
