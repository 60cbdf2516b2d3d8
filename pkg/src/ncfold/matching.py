"""Exact optimal non-crossing matchings and exhaustive censuses.

A matching is a set of index pairs ``(i, j)`` (1-based, ``i < j``).  It is
admissible for a word when no index is reused, no two pairs cross, and each
pair joins a letter with its inverse.  The length of a word is the minimum
number of unmatched letters over admissible matchings; ``optimal_length``
computes it with an interval dynamic program, ``brute_force_length`` by
unrolling the definition.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .words import Word

__all__ = [
    "Matching",
    "LengthResult",
    "validate_matching",
    "optimal_length",
    "brute_force_length",
    "ell_census",
    "rho_exact",
    "enumeration_budget",
]

_DEFAULT_BUDGET = 1 << 24


def enumeration_budget() -> int:
    """Cap on exhaustive-enumeration sizes; override with NCFOLD_BUDGET."""
    raw = os.environ.get("NCFOLD_BUDGET")
    if raw is None:
        return _DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"NCFOLD_BUDGET must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("NCFOLD_BUDGET must be positive")
    return value


@dataclass(frozen=True)
class Matching:
    """Index pairs on a word of length ``n``; admissibility is checked separately."""

    n: int
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("word length must be >= 0")
        if not isinstance(self.pairs, frozenset):
            object.__setattr__(self, "pairs", frozenset(self.pairs))
        for pair in self.pairs:
            i, j = pair
            if not (1 <= i < j <= self.n):
                raise ValueError(f"pair {pair} outside 1..{self.n} or not increasing")


@dataclass(frozen=True)
class LengthResult:
    """Minimum unmatched count together with a matching that attains it."""

    unmatched: int
    witness: Matching


def validate_matching(word: Word, matching: Matching) -> bool:
    """True iff no index reuse, no crossing, and all pairs join inverse letters."""
    n = len(word)
    if matching.n != n:
        raise ValueError(f"matching is over {matching.n} positions, word has {n}")
    opens: dict[int, int] = {}
    closes: dict[int, int] = {}
    for i, j in matching.pairs:
        if i in opens or i in closes or j in opens or j in closes:
            return False
        opens[i] = j
        closes[j] = i
    # crossing-free <=> the open/close sequence nests like balanced brackets
    stack: list[int] = []
    for p in range(1, n + 1):
        if p in opens:
            stack.append(opens[p])
        elif p in closes:
            if not stack or stack[-1] != p:
                return False
            stack.pop()
    for i, j in matching.pairs:
        if word.letters[i - 1] != -word.letters[j - 1]:
            return False
    return True


def _traceback(letters: tuple[int, ...], M: np.ndarray) -> frozenset[tuple[int, int]]:
    """Witness reconstruction; ties pair the interval head with its leftmost partner."""
    pairs: list[tuple[int, int]] = []
    stack = [(0, len(letters))]
    while stack:
        i, j = stack.pop()
        while j - i >= 2:
            best = int(M[i, j])
            target = -letters[i]
            for t in range(i + 1, j):
                if letters[t] == target and 1 + int(M[i + 1, t]) + int(M[t + 1, j]) == best:
                    pairs.append((i + 1, t + 1))  # 1-based
                    stack.append((t + 1, j))
                    j = t
                    i += 1
                    break
            else:
                i += 1
    return frozenset(pairs)


def optimal_length(word: Word) -> LengthResult:
    """Exact minimum number of unmatched letters, with a witness matching."""
    n = len(word)
    if n == 0:
        return LengthResult(0, Matching(0, frozenset()))
    letters = word.to_array()
    M = _kernels.max_pairs_table(letters)
    pairs = _traceback(word.letters, M)
    return LengthResult(n - 2 * int(M[0, n]), Matching(n, pairs))


def _brute(letters: tuple[int, ...], i: int, j: int) -> tuple[int, tuple[tuple[int, int], ...]]:
    """All non-crossing matchings of ``letters[i:j]`` by first-position choice."""
    if j - i <= 1:
        return 0, ()
    best, best_pairs = _brute(letters, i + 1, j)
    for t in range(i + 1, j):
        if letters[t] == -letters[i]:
            c1, p1 = _brute(letters, i + 1, t)
            c2, p2 = _brute(letters, t + 1, j)
            if 1 + c1 + c2 > best:
                best = 1 + c1 + c2
                best_pairs = ((i + 1, t + 1),) + p1 + p2
    return best, best_pairs


def brute_force_length(word: Word, max_len: int = 14) -> LengthResult:
    """Oracle for :func:`optimal_length`: exhaustive recursion, no memoization."""
    n = len(word)
    if n > max_len:
        raise ValueError(f"brute force limited to length {max_len}, got {n}")
    count, pairs = _brute(word.letters, 0, n)
    return LengthResult(n - 2 * count, Matching(n, frozenset(pairs)))


def ell_census(n: int, k: int) -> dict[int, int]:
    """Exact distribution of the unmatched count over all ``(2k)^n`` words."""
    if n < 0:
        raise ValueError("word length must be >= 0")
    if k < 1:
        raise ValueError("alphabet size k must be >= 1")
    budget = enumeration_budget()
    if (2 * k) ** n > budget:
        raise ValueError(f"census of ({2 * k})^{n} words exceeds budget {budget}")
    if n == 0:
        return {0: 1}
    counts = _kernels.census_counts(n, k)
    return {ell: int(c) for ell, c in enumerate(counts.tolist()) if c}


def rho_exact(n: int, k: int) -> Fraction:
    """Exact expected unmatched fraction at length ``n`` (rational arithmetic)."""
    if n < 1:
        raise ValueError("rho is defined for n >= 1")
    counts = ell_census(n, k)
    total_ell = sum(ell * c for ell, c in counts.items())
    return Fraction(total_ell, n * (2 * k) ** n)
