import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ncfold import (
    Word,
    chain_step,
    greedy_match,
    greedy_steps,
    is_omega0,
    parse_word,
    validate_matching,
)


def random_words(max_k=3, max_len=14):
    return st.integers(1, max_k).flatmap(
        lambda k: st.lists(
            st.tuples(st.integers(1, k), st.booleans()).map(lambda t: -t[0] if t[1] else t[0]),
            max_size=max_len,
        ).map(lambda ls: Word(k, tuple(ls)))
    )


def test_golden_example():
    trace = greedy_match(parse_word("ababAaBb", 2))
    assert set(trace.matched_pairs) == {(3, 5), (2, 7)}
    assert trace.unmatched == 4
    assert trace.reductions == 2
    # letters 4 and 6 were discarded when the matches truncated the stack
    assert trace.final_state == Word(2, (1, 2))


def test_empty_word():
    trace = greedy_match(Word(2))
    assert not trace.matched_pairs
    assert trace.unmatched == 0
    assert trace.final_state == Word(2)


def test_immediate_match():
    trace = greedy_match(Word(2, (1, -1)))
    assert set(trace.matched_pairs) == {(1, 2)}
    assert trace.unmatched == 0


@given(random_words())
@settings(max_examples=200)
def test_trace_invariants(w):
    trace = greedy_match(w)
    assert trace.unmatched == len(w) - 2 * trace.reductions
    assert validate_matching(w, trace.matching)
    assert is_omega0(trace.final_state)


def test_greedy_steps_agrees_with_trace():
    w = parse_word("ababAaBb", 2)
    steps = list(greedy_steps(w.letters))
    assert steps[-1][1] == greedy_match(w).reductions
    assert [s[0] for s in steps] == [1, 2, 3, 4, 2, 3, 1, 2]


# --- chain_step ---

def test_chain_step_matches_largest_index():
    state, reduced = chain_step(Word(2, (1, 2, 1)), -1)
    assert reduced and state == Word(2, (1, 2))


def test_chain_step_appends():
    state, reduced = chain_step(Word(2), 2)
    assert not reduced and state == Word(2, (2,))


def test_chain_step_discards_above_match():
    state, reduced = chain_step(Word(2, (1, 2)), -2)
    assert reduced and state == Word(2, (1,))


def test_chain_step_rejects_bad_letter():
    with pytest.raises(ValueError):
        chain_step(Word(2), 3)
    with pytest.raises(ValueError):
        chain_step(Word(2), 0)


def test_chain_step_accepts_letter_objects():
    from ncfold import Letter

    state, reduced = chain_step(Word(2, (1,)), Letter(1, inverted=True))
    assert reduced and state == Word(2)


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=60))
def test_omega0_closed_under_dynamics(letters):
    state = Word(3)
    for x in letters:
        state, _ = chain_step(state, x)
        assert is_omega0(state)


@given(random_words(max_k=2, max_len=30))
def test_chain_step_consistent_with_greedy(w):
    state = Word(w.k)
    reductions = 0
    for x in w.letters:
        state, reduced = chain_step(state, x)
        reductions += reduced
    trace = greedy_match(w)
    assert state == trace.final_state
    assert reductions == trace.reductions
