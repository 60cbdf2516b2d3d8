from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncfold import (
    Matching,
    Rng,
    Word,
    brute_force_length,
    ell_census,
    free_reduce,
    conjugate,
    greedy_match,
    optimal_length,
    parse_word,
    rho_exact,
    sample_word,
    validate_matching,
)


def all_words(k, n):
    letters = [g for g in range(1, k + 1)] + [-g for g in range(1, k + 1)]
    return (Word(k, combo) for combo in product(letters, repeat=n))


def random_words(max_k=3, max_len=12):
    return st.integers(1, max_k).flatmap(
        lambda k: st.lists(
            st.tuples(st.integers(1, k), st.booleans()).map(lambda t: -t[0] if t[1] else t[0]),
            max_size=max_len,
        ).map(lambda ls: Word(k, tuple(ls)))
    )


# --- validate_matching ---

def test_empty_matching_is_valid():
    assert validate_matching(Word(2, (1, 1, 2)), Matching(3, frozenset()))


def test_crossing_matching_rejected():
    w = Word(2, (1, 2, -1, -2))
    assert not validate_matching(w, Matching(4, frozenset({(1, 3), (2, 4)})))


def test_nested_matching_accepted():
    w = Word(2, (1, 2, -2, -1))
    assert validate_matching(w, Matching(4, frozenset({(1, 4), (2, 3)})))


def test_non_inverse_pair_rejected():
    assert not validate_matching(Word(2, (1, 1)), Matching(2, frozenset({(1, 2)})))


def test_reused_index_rejected():
    w = Word(2, (1, -1, -1))
    assert not validate_matching(w, Matching(3, frozenset({(1, 2), (1, 3)})))


def test_length_mismatch_raises():
    with pytest.raises(ValueError):
        validate_matching(Word(2, (1,)), Matching(2, frozenset()))


def test_matching_validates_structure():
    with pytest.raises(ValueError):
        Matching(3, frozenset({(2, 2)}))
    with pytest.raises(ValueError):
        Matching(3, frozenset({(0, 2)}))
    with pytest.raises(ValueError):
        Matching(3, frozenset({(1, 4)}))


# --- optimal_length ---

def test_empty_word():
    result = optimal_length(Word(2))
    assert result.unmatched == 0 and not result.witness.pairs


def test_single_unmatched_middle():
    # brute-force over all matchings of n=3 gives 1 with the outer pair
    result = optimal_length(Word(2, (1, 2, -1)))
    assert result.unmatched == 1
    assert result.witness.pairs == frozenset({(1, 3)})


@given(random_words())
@settings(max_examples=200)
def test_witness_consistency(w):
    result = optimal_length(w)
    assert validate_matching(w, result.witness)
    assert result.unmatched == len(w) - 2 * len(result.witness.pairs)
    assert result.unmatched % 2 == len(w) % 2


@given(random_words(max_k=3, max_len=11))
@settings(max_examples=150)
def test_dp_matches_brute_force(w):
    assert optimal_length(w).unmatched == brute_force_length(w).unmatched


def test_dp_matches_brute_force_exhaustive():
    for n in range(0, 9):
        for w in all_words(2, n):
            assert optimal_length(w).unmatched == brute_force_length(w).unmatched


@given(random_words(max_k=2, max_len=12))
@settings(max_examples=150)
def test_greedy_never_beats_optimal(w):
    assert greedy_match(w).unmatched >= optimal_length(w).unmatched


# --- brute force ---

def test_brute_force_examples():
    assert brute_force_length(Word(2, (1, -1))).unmatched == 0
    assert brute_force_length(Word(2, (1, 1))).unmatched == 2


def test_brute_force_witness_valid():
    w = parse_word("abBAa", 2)
    result = brute_force_length(w)
    assert validate_matching(w, result.witness)
    assert result.unmatched == len(w) - 2 * len(result.witness.pairs)


def test_brute_force_length_limit():
    with pytest.raises(ValueError):
        brute_force_length(Word(2, tuple([1] * 15)))
    brute_force_length(Word(2, tuple([1] * 15)), max_len=15)


# --- invariance under reduction and conjugation (small grids; the
# acceptance suite runs the full ranges) ---

def test_length_invariant_under_reduction_small():
    for n in range(0, 5):
        for w in all_words(2, n):
            assert optimal_length(w).unmatched == optimal_length(free_reduce(w)).unmatched


def test_length_invariant_under_conjugation_small():
    hs = [h for n in range(0, 3) for h in all_words(2, n)]
    for n in range(0, 4):
        for w in all_words(2, n):
            base = optimal_length(w).unmatched
            for h in hs:
                assert optimal_length(conjugate(w, h)).unmatched == base


@st.composite
def word_pairs(draw, max_k=2, max_len=8):
    k = draw(st.integers(1, max_k))
    letter = st.tuples(st.integers(1, k), st.booleans()).map(lambda t: -t[0] if t[1] else t[0])
    u = draw(st.lists(letter, max_size=max_len))
    v = draw(st.lists(letter, max_size=max_len))
    return Word(k, tuple(u)), Word(k, tuple(v))


@given(word_pairs())
@settings(max_examples=100)
def test_subadditive_on_concatenation(pair):
    u, v = pair
    assert optimal_length(u + v).unmatched <= optimal_length(u).unmatched + optimal_length(v).unmatched


# --- census / exact expectations ---

def test_census_n4_k2():
    assert ell_census(4, 2) == {0: 28, 2: 168, 4: 60}


def test_census_n0():
    assert ell_census(0, 2) == {0: 1}


def test_census_total_count():
    counts = ell_census(5, 2)
    assert sum(counts.values()) == 4**5
    assert all(ell % 2 == 1 for ell in counts)  # parity at odd n


def test_rho_exact_values():
    assert rho_exact(1, 2) == 1
    assert rho_exact(1, 5) == 1
    assert rho_exact(2, 2) == Fraction(3, 4)  # 4 of 16 words match fully
    assert rho_exact(4, 2) == Fraction(9, 16)


def test_rho_exact_needs_positive_length():
    with pytest.raises(ValueError):
        rho_exact(0, 2)


def test_mean_level_subadditivity_exact():
    # 2 L(4) >= L(8) with everything exact
    assert 2 * 4 * rho_exact(4, 2) >= 8 * rho_exact(8, 2)


def test_budget_cap(monkeypatch):
    monkeypatch.setenv("NCFOLD_BUDGET", "1000")
    with pytest.raises(ValueError):
        ell_census(10, 2)
    monkeypatch.setenv("NCFOLD_BUDGET", "zero")
    with pytest.raises(ValueError):
        ell_census(2, 2)


def test_random_agreement_with_oracle_n14():
    rng = Rng(5)
    for _ in range(50):
        w = sample_word(14, 2, rng)
        assert optimal_length(w).unmatched == brute_force_length(w).unmatched
