"""Compiled inner loops for the interval DP and whole-alphabet censuses.

Letters are signed int16 (``+g`` / ``-g``).  Intervals are half-open and
0-based: ``M[i, j]`` is the maximum number of matched pairs in
``letters[i:j]``.
"""

from __future__ import annotations

import numpy as np
from numba import config as _numba_config
from numba import njit, prange, set_num_threads

# The TBB layer is version-sensitive; workqueue behaves identically for the
# independent-writes parallelism used here.
_numba_config.THREADING_LAYER = "workqueue"

__all__ = ["max_pairs_table", "ell_values", "ell_values_batch", "census_counts", "set_num_threads"]


@njit(cache=True)
def max_pairs_table(letters):
    """Interval DP table of maximum matched pairs.

    Fills column by column.  For the column ending at position ``j-1`` only
    candidate partners ``t`` are scanned: ``letters[t]`` must be the inverse
    of ``letters[j-1]`` and pairing them must beat the best matching of the
    block ``[t, j-1)`` on its own (otherwise splitting at ``t`` dominates).
    The per-cell value can exceed the cell to its left by at most one, which
    caps the scan early.
    """
    n = letters.shape[0]
    M = np.zeros((n + 1, n + 1), dtype=np.int16)
    cand = np.empty(max(n, 1), dtype=np.int32)
    for j in range(2, n + 1):
        last = j - 1
        target = -letters[last]
        ncand = 0
        for t in range(j - 2, -1, -1):  # descending t
            if letters[t] == target and 1 + M[t + 1, last] > M[t, last]:
                cand[ncand] = t
                ncand += 1
        for i in range(j - 2, -1, -1):
            best = M[i, j - 1]
            cap = best + 1
            for ci in range(ncand):
                t = cand[ci]
                if t < i:
                    break
                v = 1 + M[i, t] + M[t + 1, last]
                if v > best:
                    best = v
                    if best == cap:
                        break
            M[i, j] = best
    return M


@njit(cache=True)
def ell_values(letters):
    """Unmatched-letter count of a single word."""
    n = letters.shape[0]
    M = max_pairs_table(letters)
    return n - 2 * int(M[0, n])


@njit(cache=True, parallel=True)
def ell_values_batch(words):
    """Unmatched-letter counts for a batch of equal-length words (rows)."""
    s, n = words.shape
    out = np.empty(s, dtype=np.int64)
    for w in prange(s):
        M = max_pairs_table(words[w])
        out[w] = n - 2 * int(M[0, n])
    return out


@njit(cache=True)
def census_counts(n, k):
    """Counts of the unmatched-letter value over all ``(2k)^n`` words.

    Words are enumerated as base-``2k`` codes; digit ``d`` maps to the
    letter ``d//2 + 1`` with sign flipped on odd ``d``.
    """
    counts = np.zeros(n + 1, dtype=np.int64)
    total = (2 * k) ** n
    letters = np.empty(n, dtype=np.int16)
    for code in range(total):
        c = code
        for p in range(n):
            d = c % (2 * k)
            c //= 2 * k
            g = d // 2 + 1
            letters[p] = g if d % 2 == 0 else -g
        M = max_pairs_table(letters)
        counts[n - 2 * int(M[0, n])] += 1
    return counts
