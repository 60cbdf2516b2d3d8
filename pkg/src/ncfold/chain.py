"""Exact analysis of the accessible-word Markov chain.

States are words in which no letter occurs together with its inverse (the
chain's unique irreducible class, reachable from the empty word).  The
stationary distribution has a product form over the state's a-profile:
``pi(w) = (1/Z) * tau_1^a_1 * ... * tau_k^a_k`` with
``tau_j = (j+1)/(j(2k+1)-1)``.  This module computes those constants
exactly, verifies the balance equations in closed form, solves truncated
finite chains, and evaluates the greedy matcher's asymptotic unmatched
fraction as an exact rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterator, Mapping, Sequence

import numpy as np

from .greedy import chain_step
from .words import Word

__all__ = [
    "ChainParams",
    "chain_params",
    "is_omega0",
    "enumerate_omega0",
    "a_profile",
    "count_words_with_profile",
    "stationary_pi",
    "stationary_mass",
    "continuation_mass",
    "BalanceReport",
    "verify_balance",
    "TRUNCATION_CONVENTIONS",
    "TruncatedChainResult",
    "truncated_chain_pi",
    "lambda_tilde",
    "reduction_probability_bracket",
]


@dataclass(frozen=True)
class ChainParams:
    """Stationary-distribution constants for alphabet size ``k``."""

    k: int
    tau: tuple[Fraction, ...]
    z: Fraction

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError("chain parameters need k >= 2")
        if len(self.tau) != self.k:
            raise ValueError(f"expected {self.k} tau values, got {len(self.tau)}")


def chain_params(k: int) -> ChainParams:
    """Exact ``tau_j = (j+1)/(j(2k+1)-1)`` and the normalizer ``Z``."""
    if k < 2:
        raise ValueError("chain parameters need k >= 2")
    tau = tuple(Fraction(j + 1, j * (2 * k + 1) - 1) for j in range(1, k + 1))
    z = Fraction(0)
    for r in range(k + 1):
        term = Fraction(comb(k, r) * 2**r)
        for j in range(1, r + 1):
            term *= Fraction(j * (j + 1), j * (2 * k - j) - 1)
        z += term
    return ChainParams(k=k, tau=tau, z=z)


def is_omega0(word: Word) -> bool:
    """True iff no letter occurs together with its inverse."""
    present = set(word.letters)
    return not any(-x in present for x in present)


def enumerate_omega0(k: int, max_len: int) -> list[Word]:
    """All chain states of length <= ``max_len``, shortest first."""
    if k < 1 or max_len < 0:
        raise ValueError("need k >= 1 and max_len >= 0")
    letters = [g for g in range(1, k + 1)] + [-g for g in range(1, k + 1)]
    states: list[tuple[int, ...]] = [()]
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(max_len):
        nxt = []
        for w in frontier:
            present = set(w)
            for x in letters:
                if -x not in present:
                    nxt.append(w + (x,))
        states.extend(nxt)
        frontier = nxt
    return [Word(k, w) for w in states]


def a_profile(word: Word) -> tuple[int, ...]:
    """Run-length profile: ``a_1 + .. + a_j`` is the longest prefix using at
    most ``j`` distinct letters (a letter and its inverse count as distinct).
    """
    if not is_omega0(word):
        raise ValueError("a-profile is defined on states without inverse pairs")
    a = [0] * word.k
    seen: set[int] = set()
    for x in word.letters:
        if x not in seen:
            seen.add(x)
        a[len(seen) - 1] += 1
    return tuple(a)


def count_words_with_profile(profile: Sequence[int], k: int) -> int:
    """Exact number of chain states with the given a-profile.

    The first occurrence of the ``i``-th distinct letter has ``2(k-i+1)``
    choices; each later letter inside the ``j``-th segment has ``j`` choices.
    """
    profile = tuple(profile)
    if len(profile) != k:
        raise ValueError(f"profile must have k={k} entries, got {len(profile)}")
    if any(v < 0 for v in profile):
        raise ValueError("profile entries must be >= 0")
    r = 0
    for j, v in enumerate(profile, 1):
        if v > 0:
            if j != r + 1:
                raise ValueError("profile must be strictly positive then zero")
            r = j
    count = 1
    for i in range(1, r + 1):
        count *= 2 * (k - i + 1)
    for j in range(2, r + 1):
        count *= j ** (profile[j - 1] - 1)
    return count


def stationary_pi(word: Word, params: ChainParams) -> Fraction:
    """Exact stationary probability of one state."""
    if word.k != params.k:
        raise ValueError(f"word has k={word.k}, params have k={params.k}")
    value = Fraction(1, 1) / params.z
    for j, a in enumerate(a_profile(word)):
        value *= params.tau[j] ** a
    return value


def stationary_mass(params: ChainParams) -> Fraction:
    """Total stationary mass summed in closed form over a-profiles.

    Grouping states by profile and summing the geometric series in each
    ``a_j`` gives ``sum_r 2^r k!/(k-r)! prod_j tau_j/(1 - j tau_j)``; the
    result must equal 1.
    """
    k = params.k
    total = Fraction(0)
    for r in range(k + 1):
        term = Fraction(2**r)
        for i in range(r):
            term *= k - i
        for j in range(1, r + 1):
            tj = params.tau[j - 1]
            denom = 1 - j * tj
            if denom <= 0:
                raise ValueError("profile mass diverges for these tau values")
            term *= tj / denom
        total += term
    return total / params.z


def continuation_mass(params: ChainParams, avoid_present: bool = False) -> tuple[Fraction, ...]:
    """``F_r``: stationary-weight multiplier of all extensions of a state
    with ``r`` distinct letters (including the empty extension).

    With ``avoid_present`` the extensions may not reuse one fixed letter
    already present.  Satisfies ``F_0 = Z``.
    """
    k = params.k
    tau = params.tau
    d = 1 if avoid_present else 0
    F = [Fraction(0)] * (k + 1)
    denom = 1 - (k - d) * tau[k - 1]
    if denom <= 0:
        raise ValueError("continuation mass diverges for these tau values")
    F[k] = 1 / denom
    for r in range(k - 1, -1, -1):
        num = 1 + 2 * (k - r) * tau[r] * F[r + 1]
        if r == 0:
            F[0] = num
            continue
        denom = 1 - (r - d) * tau[r - 1]
        if denom <= 0:
            raise ValueError("continuation mass diverges for these tau values")
        F[r] = num / denom
    return tuple(F)


# ---------------------------------------------------------------------------
# balance equations


@dataclass(frozen=True)
class BalanceViolation:
    word: Word
    predecessor_mass: Fraction
    required_mass: Fraction
    note: str = ""


@dataclass(frozen=True)
class BalanceReport:
    k: int
    max_len: int
    checked: int
    violations: tuple[BalanceViolation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def _sigma(word: Word, params: ChainParams) -> Fraction:
    value = Fraction(1)
    for j, a in enumerate(a_profile(word)):
        value *= params.tau[j] ** a
    return value


def _geometric(mult: int, tau: Fraction) -> Fraction:
    """``sum_{m>=0} (mult*tau)^m``; raises when the series diverges."""
    ratio = mult * tau
    if ratio >= 1:
        raise ValueError("divergent predecessor series")
    return 1 / (1 - ratio)


def _extension_terms(r: int, params: ChainParams) -> list[Fraction]:
    """Weight of appending ``j`` new distinct letters with arbitrary filler.

    Term ``j`` covers tails that introduce letters ``r+1 .. r+j`` (ordered
    choice, two signs each) with any number of repeats after each new letter;
    each repeat at level ``i`` carries weight ``(i-1) tau_i`` because one
    letter value is reserved for the eventual match.
    """
    k = params.k
    terms = [Fraction(1)]
    prod = Fraction(1)
    falling = 1
    for j in range(1, k - r + 1):
        level = r + j
        tau = params.tau[level - 1]
        falling *= 2 * (k - r - j + 1)
        prod *= tau * _geometric(level - 1, tau)
        terms.append(falling * prod)
    return terms


def _predecessor_mass(word: Word, params: ChainParams) -> Fraction:
    """Exact sum of ``sigma`` over all one-step predecessors of ``word``.

    Predecessors fall into three families: (1) the one-shorter prefix, which
    reaches ``word`` by appending its last letter; (2) ``word + x + tail``
    where ``x`` already occurs in ``word`` and the arriving inverse of ``x``
    truncates the tail away; (3) ``word + t + tail`` where ``t`` is a fresh
    letter.  Families (2) and (3) are infinite and are summed as geometric
    series in the tail lengths.
    """
    r = len(set(word.letters))
    sigma_w = _sigma(word, params)
    total = Fraction(0)
    if len(word) >= 1:
        total += sigma_w / params.tau[r - 1]
    terms = _extension_terms(r, params)
    if r >= 1:
        tau_r = params.tau[r - 1]
        head = r * tau_r * _geometric(r - 1, tau_r)
        total += sigma_w * head * sum(terms)
    total += sigma_w * sum(terms[1:])
    return total


def verify_balance(k: int, max_len: int, params: ChainParams | None = None) -> BalanceReport:
    """Check ``sum_{w' -> w} sigma(w') = 2k sigma(w)`` exactly for every
    state of length <= ``max_len``.

    With the true ``tau`` values there are no violations; perturbed values
    are reported per state (a divergent predecessor series is also a
    violation).
    """
    if params is None:
        params = chain_params(k)
    if params.k != k:
        raise ValueError("params do not match k")
    violations: list[BalanceViolation] = []
    states = enumerate_omega0(k, max_len)
    for word in states:
        required = 2 * k * _sigma(word, params)
        try:
            mass = _predecessor_mass(word, params)
        except ValueError as exc:
            violations.append(BalanceViolation(word, Fraction(0), required, note=str(exc)))
            continue
        if mass != required:
            violations.append(BalanceViolation(word, mass, required))
    return BalanceReport(k=k, max_len=max_len, checked=len(states), violations=tuple(violations))


# ---------------------------------------------------------------------------
# truncated chains

TRUNCATION_CONVENTIONS = ("blocked-selfloop", "blocked-renormalize", "tail-exact")


@dataclass(frozen=True)
class TruncatedChainResult:
    k: int
    max_len: int
    convention: str
    states: tuple[Word, ...]
    probabilities: tuple[float, ...]
    residual: float

    def as_mapping(self) -> Mapping[Word, float]:
        return dict(zip(self.states, self.probabilities))

    def max_abs_diff_to_stationary(self, up_to_len: int | None = None) -> float:
        """``max |pi_L(w) - pi(w)|`` over states of length <= ``up_to_len``
        (default ``max_len - 1``)."""
        params = chain_params(self.k)
        cutoff = self.max_len - 1 if up_to_len is None else up_to_len
        return max(
            abs(p - float(stationary_pi(w, params)))
            for w, p in zip(self.states, self.probabilities)
            if len(w) <= cutoff
        )

    def proportionality_spread(self, up_to_len: int | None = None) -> tuple[float, float]:
        """Range of ``pi_L(w)/pi(w)`` over states of length <= ``up_to_len``."""
        params = chain_params(self.k)
        cutoff = self.max_len - 1 if up_to_len is None else up_to_len
        ratios = [
            p / float(stationary_pi(w, params))
            for w, p in zip(self.states, self.probabilities)
            if len(w) <= cutoff
        ]
        return min(ratios), max(ratios)


def _letters_of(k: int) -> list[int]:
    return [g for g in range(1, k + 1)] + [-g for g in range(1, k + 1)]


def truncated_chain_pi(k: int, max_len: int, convention: str = "blocked-selfloop",
                       state_budget: int = 200_000) -> TruncatedChainResult:
    """Stationary distribution of the chain restricted to length <= ``max_len``.

    Length-increasing steps out of the boundary are forbidden; the
    convention says what replaces them:

    - ``blocked-selfloop``: the blocked probability stays put.
    - ``blocked-renormalize``: boundary rows are renormalized over the
      allowed moves.
    - ``tail-exact``: boundary states stand in for all their extensions;
      their matching moves are damped by the exact conditional probability
      that an extension still allows the match (a closed-form ratio of
      continuation masses), the rest self-loops.  With this convention the
      finite stationary distribution agrees exactly with the infinite one on
      states of length <= ``max_len - 1``.

    Under the two ``blocked-*`` conventions the finite distribution is
    exactly proportional to the infinite one on those states instead.
    """
    if convention not in TRUNCATION_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; choose from {TRUNCATION_CONVENTIONS}")
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    states = enumerate_omega0(k, max_len)
    if len(states) > state_budget:
        raise ValueError(f"{len(states)} states exceed budget {state_budget}")
    index = {w.letters: i for i, w in enumerate(states)}
    m = len(states)
    letters = _letters_of(k)
    P = np.zeros((m, m))

    damping: tuple[Fraction, ...] | None = None
    if convention == "tail-exact":
        params = chain_params(k)
        full = continuation_mass(params, avoid_present=False)
        avoid = continuation_mass(params, avoid_present=True)
        damping = tuple(avoid[r] / full[r] for r in range(k + 1))

    for word in states:
        i = index[word.letters]
        moves: list[tuple[int, bool]] = []
        blocked = 0
        for x in letters:
            nxt, reduced = chain_step(word, x)
            if len(nxt) > max_len:
                blocked += 1
            else:
                moves.append((index[nxt.letters], reduced))
        if convention == "blocked-renormalize":
            for target, _ in moves:
                P[i, target] += 1.0 / len(moves)
        elif convention == "blocked-selfloop" or len(word) < max_len:
            for target, _ in moves:
                P[i, target] += 1.0 / (2 * k)
            P[i, i] += blocked / (2 * k)
        else:  # tail-exact boundary row
            r = len(set(word.letters))
            g = float(damping[r])
            out = 0.0
            for target, reduced in moves:
                if reduced:
                    P[i, target] += g / (2 * k)
                    out += g / (2 * k)
            P[i, i] += 1.0 - out

    A = P.T - np.eye(m)
    A[-1, :] = 1.0
    b = np.zeros(m)
    b[-1] = 1.0
    try:
        pi = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise ValueError(f"truncated chain system is singular: {exc}") from exc
    residual = float(np.max(np.abs(pi @ P - pi)))
    if not np.isfinite(residual) or residual > 1e-8:
        raise ValueError(f"truncated chain solve is unreliable (residual {residual:.3e})")
    return TruncatedChainResult(
        k=k,
        max_len=max_len,
        convention=convention,
        states=tuple(states),
        probabilities=tuple(float(p) for p in pi),
        residual=residual,
    )


# ---------------------------------------------------------------------------
# greedy asymptotics


def lambda_tilde(k: int) -> Fraction:
    """Exact asymptotic unmatched fraction of the one-sided greedy matcher.

    ``1 - (sum_r r 2^r C(k,r) prod_j j(j+1)/(j(2k-j)-1)) / (k Z)``; an upper
    bound for the optimal asymptotic fraction.
    """
    if k < 2:
        raise ValueError("greedy rate needs k >= 2")
    params = chain_params(k)
    numerator = Fraction(0)
    for r in range(1, k + 1):
        term = Fraction(r * 2**r * comb(k, r))
        for j in range(1, r + 1):
            term *= Fraction(j * (j + 1), j * (2 * k - j) - 1)
        numerator += term
    return 1 - numerator / (k * params.z)


def reduction_probability_bracket(k: int, max_len: int) -> tuple[Fraction, Fraction]:
    """Exact bracket for the stationary probability that a step shortens the
    state, by direct summation over states of length <= ``max_len``.

    A state with ``r`` distinct letters shortens with probability ``r/2k``.
    The unenumerated tail contributes between 0 and ``k/2k`` times its mass,
    giving rigorous lower/upper bounds that tighten as ``max_len`` grows.
    Cross-checks ``lambda_tilde`` without reusing its closed form.
    """
    params = chain_params(k)
    enumerated = Fraction(0)
    partial = Fraction(0)
    for word in enumerate_omega0(k, max_len):
        p = stationary_pi(word, params)
        enumerated += p
        r = len(set(word.letters))
        partial += p * Fraction(r, 2 * k)
    tail = 1 - enumerated
    return partial, partial + tail * Fraction(1, 2)
