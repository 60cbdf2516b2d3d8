"""The one-sided greedy matcher and its accessible-word dynamics.

Letters are scanned left to right.  An arriving letter is matched to the
accessible occurrence of its inverse with the largest stack index, if one
exists; every accessible letter above that index is discarded for good.
Otherwise the letter joins the accessible word.  The accessible word is the
state of a Markov chain when the input letters are i.i.d. uniform.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .matching import Matching
from .words import Word

__all__ = ["GreedyTrace", "greedy_match", "chain_step", "greedy_steps"]


@dataclass(frozen=True)
class GreedyTrace:
    """Outcome of one greedy run."""

    matched_pairs: frozenset[tuple[int, int]]
    reductions: int
    final_state: Word
    unmatched: int

    @property
    def matching(self) -> Matching:
        n = self.unmatched + 2 * self.reductions
        return Matching(n, self.matched_pairs)


class _GreedyState:
    """Accessible word as a stack with per-letter occurrence indices."""

    __slots__ = ("letters", "positions", "occurrences")

    def __init__(self) -> None:
        self.letters: list[int] = []    # accessible letters, bottom to top
        self.positions: list[int] = []  # their 1-based positions in the input
        self.occurrences: dict[int, list[int]] = {}  # letter -> stack indices

    def push(self, letter: int, position: int) -> None:
        self.occurrences.setdefault(letter, []).append(len(self.letters))
        self.letters.append(letter)
        self.positions.append(position)

    def match(self, letter: int) -> int | None:
        """Match ``letter`` against its inverse, truncating the stack.

        Returns the input position of the matched partner, or None if the
        inverse is not accessible.
        """
        occ = self.occurrences.get(-letter)
        if not occ:
            return None
        j = occ[-1]
        partner = self.positions[j]
        for idx in range(len(self.letters) - 1, j - 1, -1):
            self.occurrences[self.letters[idx]].pop()
        del self.letters[j:]
        del self.positions[j:]
        return partner


def greedy_match(word: Word) -> GreedyTrace:
    """Run the greedy matcher over the whole word."""
    state = _GreedyState()
    pairs: list[tuple[int, int]] = []
    for t, x in enumerate(word.letters, 1):
        partner = state.match(x)
        if partner is None:
            state.push(x, t)
        else:
            pairs.append((partner, t))
    n = len(word)
    return GreedyTrace(
        matched_pairs=frozenset(pairs),
        reductions=len(pairs),
        final_state=Word(word.k, tuple(state.letters)),
        unmatched=n - 2 * len(pairs),
    )


def chain_step(state: Word, letter: int) -> tuple[Word, bool]:
    """One transition of the accessible-word chain.

    ``letter`` may be a signed integer or anything with a ``signed``
    attribute.  Returns the next state and whether the length dropped.
    """
    x = getattr(letter, "signed", letter)
    if not isinstance(x, int) or x == 0 or abs(x) > state.k:
        raise ValueError(f"letter {letter!r} outside alphabet of size k={state.k}")
    target = -x
    for j in range(len(state.letters) - 1, -1, -1):
        if state.letters[j] == target:
            return Word(state.k, state.letters[:j]), True
    return Word(state.k, state.letters + (x,)), False


def greedy_steps(letters: Sequence[int] | Iterable[int]):
    """Yield ``(accessible_length, cumulative_reductions)`` after each arrival.

    Fast simulation path over raw signed integers; the full trace of
    :func:`greedy_match` is not materialized.
    """
    stack: list[int] = []
    occurrences: dict[int, list[int]] = {}
    reductions = 0
    for x in letters:
        x = int(x)
        occ = occurrences.get(-x)
        if occ:
            j = occ[-1]
            for idx in range(len(stack) - 1, j - 1, -1):
                occurrences[stack[idx]].pop()
            del stack[j:]
            reductions += 1
        else:
            occurrences.setdefault(x, []).append(len(stack))
            stack.append(x)
        yield len(stack), reductions
