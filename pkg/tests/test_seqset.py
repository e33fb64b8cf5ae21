import random

import pytest

from gensums import (Budget, BudgetExceeded, Cyclic, ElementSequence, FiniteAbelian, Free, GSet, Integers,
                     SetSequence, generalized_product_set, generalized_sumset, multiplicity_profile,
                     subsequence_sumset, sumset)
from gensums.constructions import named_example

from oracle import gen_product, mu_profile, str_to_syllables, subseq_sums

Z = Integers()
F2 = Free(2)
FIVE = [range(0, 4), range(6, 10), range(7, 11), range(8, 12), range(9, 13)]


def w(s):
    return str_to_syllables(s)


class TestProfile:
    def test_five_intervals_data(self):
        # incidence of 8, 9, 10 reaches 3 = ell, so those three are saturated
        prof = multiplicity_profile(SetSequence(Z, FIVE), 3)
        assert {a for a, v in prof.mu.items() if v == 1} == {0, 1, 2, 3, 6, 12}
        assert {a for a, v in prof.mu.items() if v == 2} == {7, 11}
        assert prof.M.elements == (8, 9, 10)
        assert prof.total == 19

    def test_disjoint(self):
        seq = SetSequence(Z, [[0, 1], [5], [9, 10, 11]])
        prof = multiplicity_profile(seq, 3)
        assert set(prof.mu.values()) == {1}
        assert prof.total == 6

    def test_all_equal(self):
        prof = multiplicity_profile(SetSequence(Z, [[0, 1]] * 4), 2)
        assert prof.mu == {0: 2, 1: 2}
        assert prof.M.elements == (0, 1)

    def test_eta_tau_decomposition(self):
        rng = random.Random(5)
        for _ in range(200):
            m = rng.randint(1, 6)
            seq = SetSequence(Z, [rng.sample(range(10), rng.randint(1, 4)) for _ in range(m)])
            ell = rng.randint(1, m)
            prof = multiplicity_profile(seq, ell)
            for a, v in prof.mu.items():
                assert 1 <= v <= ell
                if v < ell:
                    assert v == prof.eta[a] + prof.tau[a]
            assert prof.M.issubset(seq.union)

    def test_ell_range(self):
        with pytest.raises(ValueError):
            multiplicity_profile(SetSequence(Z, [[0]]), 2)
        with pytest.raises(ValueError):
            multiplicity_profile(SetSequence(Z, [[0]]), 0)


class TestSumsets:
    def test_five_intervals(self):
        S = generalized_sumset(SetSequence(Z, FIVE), 3)
        assert S.elements == tuple(range(13, 34))

    def test_five_intervals_free1(self):
        seq, ell = named_example("five-intervals", Free(1))
        assert len(generalized_product_set(seq, ell)) == 21

    def test_ell_extremes(self):
        seq = SetSequence(Z, [[0, 1], [10], [3, 5]])
        assert generalized_sumset(seq, 3) == sumset(Z, *seq.sets)
        assert generalized_sumset(seq, 1) == seq.union

    def test_free_singletons(self):
        seq = SetSequence(F2, [[w("x")], [w("y")]])
        assert set(generalized_product_set(seq, 2)) == {w("xy"), w("yx")}

    def test_non_abelian_rejected(self):
        with pytest.raises(ValueError):
            generalized_sumset(SetSequence(F2, [[w("x")], [w("y")]]), 2)

    def test_budget(self):
        seq = SetSequence(F2, [[w("x"), w("y"), w("xy")], [w("Y"), w("x")], [w("xx"), w("yy")]])
        with pytest.raises(BudgetExceeded):
            generalized_product_set(seq, 3, Budget(max_elements=5))
        with pytest.raises(BudgetExceeded):
            generalized_product_set(seq, 2, Budget(max_sets=2))

    def test_empty_sets(self):
        seq = SetSequence(Z, [[0, 1], [], [4]])
        assert generalized_sumset(seq, 2).elements == (4, 5)
        assert len(generalized_sumset(seq, 3)) == 0

    @pytest.mark.parametrize("G", [Z, Cyclic(7), Cyclic(6), FiniteAbelian((2, 4))])
    def test_matches_oracle_abelian(self, G):
        rng = random.Random(str(G))
        els = list(range(-6, 7)) if G == Z else G.elements()
        for _ in range(60):
            m = rng.randint(1, 6)
            sets = [rng.sample(els, rng.randint(1, 4)) for _ in range(m)]
            ell = rng.randint(1, m)
            seq = SetSequence(G, sets)
            want = gen_product([set(s.elements) for s in seq.sets], ell, G.op, G.identity)
            assert set(generalized_sumset(seq, ell)) == want
            mu, total = mu_profile([set(s.elements) for s in seq.sets], ell)
            assert multiplicity_profile(seq, ell).total == total

    def test_matches_oracle_free(self):
        rng = random.Random(2)
        words = [w(s) for s in ("", "x", "y", "X", "Y", "xy", "yx", "xY", "yy")]
        for _ in range(60):
            m = rng.randint(1, 4)
            sets = [rng.sample(words, rng.randint(1, 3)) for _ in range(m)]
            ell = rng.randint(1, m)
            seq = SetSequence(F2, sets)
            want = gen_product([set(s.elements) for s in seq.sets], ell, F2.op, F2.identity)
            assert set(generalized_product_set(seq, ell)) == want

    def test_permutation_invariance(self):
        rng = random.Random(9)
        words = [w(s) for s in ("x", "y", "X", "xy", "yx", "yy")]
        for _ in range(30):
            m = rng.randint(2, 4)
            seq = SetSequence(F2, [rng.sample(words, 2) for _ in range(m)])
            ell = rng.randint(1, m)
            order = list(range(m))
            rng.shuffle(order)
            assert generalized_product_set(seq.permuted(order), ell) == generalized_product_set(seq, ell)

    def test_monotone(self):
        rng = random.Random(4)
        for _ in range(50):
            m = rng.randint(3, 6)
            seq = SetSequence(Z, [rng.sample(range(12), 3) for _ in range(m)])
            sub = SetSequence(Z, seq.sets[:-1])
            assert generalized_sumset(sub, 2).issubset(generalized_sumset(seq, 2))


class TestSubsequenceSums:
    def test_examples(self):
        assert subsequence_sumset(ElementSequence(Z, [1, 1, 1]), 2).elements == (2,)
        assert subsequence_sumset(ElementSequence(Z, [0, 1, 2, 4]), 2).elements == (1, 2, 3, 4, 5, 6)
        a = ElementSequence(F2, [w("x"), w("y")])
        assert set(subsequence_sumset(a, 2)) == {w("xy"), w("yx")}

    def test_rho(self):
        a = ElementSequence(Z, [3, 1, 3, 3])
        assert a.rho == {3: 3, 1: 1}

    def test_free_matches_oracle(self):
        rng = random.Random(8)
        pool = [w(s) for s in ("x", "y", "X", "xy")]
        for _ in range(60):
            terms = [rng.choice(pool) for _ in range(rng.randint(1, 6))]
            ell = rng.randint(1, len(terms))
            a = ElementSequence(F2, terms)
            assert set(subsequence_sumset(a, ell)) == subseq_sums(terms, ell, F2.op, F2.identity)
            assert subsequence_sumset(a, ell) == generalized_product_set(a.as_set_sequence(), ell)


def test_set_sequence_json_roundtrip():
    seq = SetSequence(F2, [[w("x"), w("yX")], [()]])
    assert SetSequence.from_json(F2, seq.to_json()) == seq
    assert GSet.from_json(Z, [3, 1]).elements == (1, 3)
