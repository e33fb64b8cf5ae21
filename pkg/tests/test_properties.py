from hypothesis import given, settings
from hypothesis import strategies as st

from gensums import (Cyclic, Free, GSet, Integers, SetSequence, applicable_bounds, generalized_product_set,
                     generalized_sumset, multiplicity_profile)
from gensums.progressions import ProgressionType, detect_progressions

from oracle import gen_product, str_to_syllables

Z = Integers()
F2 = Free(2)

int_sets = st.lists(st.sets(st.integers(-8, 8), min_size=1, max_size=4), min_size=1, max_size=5)
words = st.text(alphabet="xXyY", max_size=3).map(lambda s: F2.canonical(str_to_syllables(s)))
word_sets = st.lists(st.sets(words, min_size=1, max_size=3), min_size=1, max_size=4)


@st.composite
def seq_and_ell(draw, sets_strategy, model):
    sets = draw(sets_strategy)
    ell = draw(st.integers(1, len(sets)))
    return SetSequence(model, [list(s) for s in sets]), ell


@settings(max_examples=150, deadline=None)
@given(seq_and_ell(int_sets, Z))
def test_int_sumset_matches_oracle(case):
    seq, ell = case
    want = gen_product([set(s) for s in seq.sets], ell, lambda a, b: a + b, 0)
    assert set(generalized_sumset(seq, ell)) == want


@settings(max_examples=150, deadline=None)
@given(seq_and_ell(int_sets, Z))
def test_int_bounds_hold(case):
    seq, ell = case
    for rep in applicable_bounds(seq, ell):
        assert rep.holds, rep.to_json()


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 13), st.data())
def test_cyclic_bounds_hold(n, data):
    G = Cyclic(n)
    sets = data.draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=n), min_size=1, max_size=5))
    ell = data.draw(st.integers(1, len(sets)))
    seq = SetSequence(G, [list(s) for s in sets])
    for rep in applicable_bounds(seq, ell):
        assert rep.holds, rep.to_json()


@settings(max_examples=80, deadline=None)
@given(seq_and_ell(word_sets, F2))
def test_free_product_set(case):
    seq, ell = case
    want = gen_product([set(s) for s in seq.sets], ell, F2.op, F2.identity)
    got = generalized_product_set(seq, ell)
    assert set(got) == want
    assert len(got) >= multiplicity_profile(seq, ell).total - ell + 1


@settings(max_examples=150, deadline=None)
@given(st.integers(-10, 10), st.integers(-5, 5).filter(bool), st.integers(-10, 10), st.integers(1, 8))
def test_int_progression_roundtrip(a, g, b, n):
    S = ProgressionType(Z, a, g, b, n).realize()
    found = detect_progressions(S)
    assert found and all(t.realize() == S for t in found)
    if n >= 2:
        assert {t.g for t in found} == {g, -g}


@settings(max_examples=100, deadline=None)
@given(words, words.filter(bool), words, st.integers(1, 6))
def test_free_progression_roundtrip(a, g, b, n):
    S = ProgressionType(F2, a, g, b, n).realize()
    assert all(t.realize() == S for t in detect_progressions(S))


@settings(max_examples=100, deadline=None)
@given(seq_and_ell(int_sets, Z), st.randoms(use_true_random=False))
def test_permutation_invariance(case, rnd):
    seq, ell = case
    order = list(range(seq.m))
    rnd.shuffle(order)
    assert generalized_sumset(seq.permuted(order), ell) == generalized_sumset(seq, ell)
    assert multiplicity_profile(seq.permuted(order), ell).total == multiplicity_profile(seq, ell).total


def test_gset_is_hashable_by_value():
    assert GSet(Z, [1, 2]) == GSet(Z, [2, 1])
