import random

import pytest

from gensums import Cyclic, Free, GSet, Integers
from gensums.progressions import (ProgressionCollision, ProgressionType, are_conjugate, as_progression,
                                  chain_product, conjugator, detect_progressions, find_linked_types,
                                  is_progression, lemma31_relation, linked_chain_check, same_ratio_family,
                                  subprogression_form, union_progression)

from oracle import ap_differences_mod, is_ap_int, str_to_syllables

Z = Integers()
F2 = Free(2)


def w(s):
    return str_to_syllables(s)


class TestTypes:
    def test_terms_free(self):
        t = ProgressionType(F2, w("x"), w("y"), w("x"), 3)
        assert [F2.format(a) for a in t.terms()] == ["x^2", "x y x", "x y^2 x"]

    def test_normal_form_same_set(self):
        t = ProgressionType(F2, w("xy"), w("x"), w("Y"), 4)
        nf = t.normal_form()
        assert nf.b == () and nf.realize() == t.realize()

    def test_shift_and_reverse_preserve_set(self):
        rng = random.Random(1)
        words = ["x", "y", "xy", "Yx", "xx", ""]
        for _ in range(100):
            a, b, c = (w(rng.choice(words)) for _ in range(3))
            g = w(rng.choice(words[:-1]))
            t = ProgressionType(F2, a, g, b, rng.randint(1, 4))
            S = t.realize()
            assert t.shifted(c).realize() == S
            assert t.reversed().realize() == S

    def test_collision(self):
        with pytest.raises(ProgressionCollision):
            ProgressionType(Cyclic(4), 0, 2, 0, 3).realize()
        with pytest.raises(ProgressionCollision):
            ProgressionType(Z, 0, 0, 0, 2).realize()

    def test_bad_length(self):
        with pytest.raises(ValueError):
            ProgressionType(Z, 0, 1, 0, 0)


class TestDetection:
    def test_integers(self):
        ts = detect_progressions(GSet(Z, [1, 3, 5]))
        assert [(t.a, t.g) for t in ts] == [(1, 2), (5, -2)]
        assert not is_progression(GSet(Z, [0, 1, 3]))

    def test_zp_several_ratios(self):
        # a two-element set is read in both directions
        ts = detect_progressions(GSet(Cyclic(7), [0, 1]))
        assert {t.g for t in ts} == {1, 6}

    def test_free(self):
        S = GSet(F2, [w("x"), w("xy"), w("xyy")])
        ts = detect_progressions(S)
        assert ts[0].g == w("y") and ts[0].a == w("x")

    def test_singleton(self):
        ts = detect_progressions(GSet(Z, [4]))
        assert [t.g for t in ts] == [1, -1]

    def test_matches_oracle_int(self):
        rng = random.Random(2)
        for _ in range(300):
            S = set(rng.sample(range(15), rng.randint(1, 5)))
            assert is_progression(GSet(Z, S)) == is_ap_int(S)

    @pytest.mark.parametrize("n", [5, 7, 8, 11])
    def test_matches_oracle_cyclic(self, n):
        rng = random.Random(n)
        for _ in range(200):
            S = set(rng.sample(range(n), rng.randint(2, n - 1)))
            got = {t.g for t in detect_progressions(GSet(Cyclic(n), S))}
            assert got == ap_differences_mod(S, n)

    def test_as_progression(self):
        assert as_progression(GSet(Z, [2, 5, 8]), 3).a == 2
        assert as_progression(GSet(Z, [2, 5, 8]), -3).a == 8
        assert as_progression(GSet(Z, [2, 5, 8]), 1) is None


class TestConjugacy:
    def test_conjugator(self):
        g, h = w("xy"), w("yx")
        beta = conjugator(F2, g, h)
        assert F2.product(F2.inverse(beta), g, beta) == h
        assert not are_conjugate(F2, w("x"), w("y"))
        assert not are_conjugate(F2, w("xy"), w("xY"))
        assert conjugator(Z, 3, 3) == 0 and conjugator(Z, 3, 4) is None

    def test_random_conjugates(self):
        rng = random.Random(3)
        for _ in range(200):
            g = F2.canonical(w("".join(rng.choice("xXyY") for _ in range(rng.randint(1, 5)))))
            if g == ():
                continue
            c = F2.canonical(w("".join(rng.choice("xXyY") for _ in range(rng.randint(0, 4)))))
            h = F2.product(F2.inverse(c), g, c)
            beta = conjugator(F2, g, h)
            assert beta is not None and F2.product(F2.inverse(beta), g, beta) == h


class TestChains:
    def test_linked_chain_product(self):
        g = w("y")
        t1 = ProgressionType(F2, w("x"), g, w("X"), 2)
        t2 = ProgressionType(F2, w("x"), g, w("x"), 3)
        assert linked_chain_check([t1, t2])
        got = {F2.op(a, b) for a in t1.realize() for b in t2.realize()}
        # the chain product has sum(len) - l + 1 = 4 terms
        assert set(chain_product([t1, t2])) == got and len(got) == 4

    def test_unlinked(self):
        t1 = ProgressionType(Z, 0, 1, 0, 2)
        t2 = ProgressionType(Z, 5, 1, 0, 2)
        assert linked_chain_check([t1, t2]) is False  # Z: alpha_2 = 5 != -0
        with pytest.raises(ValueError):
            linked_chain_check([t1, ProgressionType(Z, 0, 2, 0, 2)])

    def test_find_linked_types(self):
        sets = [GSet(F2, [w("x"), w("xy")]), GSet(F2, [w("y"), w("yy")])]
        types = find_linked_types(sets)
        assert types is not None and linked_chain_check(types)
        assert [t.realize() for t in types] == sets
        assert find_linked_types([GSet(F2, [w("x"), w("xy")]), GSet(F2, [w("x"), w("xx")])]) is None

    def test_same_ratio_family(self):
        g, types = same_ratio_family([GSet(Z, [0, 2, 4]), GSet(Z, [7, 9])])
        assert g == 2 and [t.a for t in types] == [0, 7]
        assert same_ratio_family([GSet(Z, [0, 2]), GSet(Z, [0, 3])]) is None


class TestRemarkIdentities:
    def test_union(self):
        t = union_progression(GSet(Z, [0, 2, 4]), GSet(Z, [4, 6]), 2)
        assert t.a == 0 and t.length == 4
        assert union_progression(GSet(Z, [0, 2]), GSet(Z, [6, 8]), 2) is None
        with pytest.raises(ValueError):
            union_progression(GSet(F2, [w("x")]), GSet(F2, [w("x")]), w("x"))

    def test_subprogression(self):
        whole = ProgressionType(Z, 0, 1, 0, 10)
        assert subprogression_form(GSet(Z, [2, 5, 8]), whole) == (3, 2)
        assert subprogression_form(GSet(Z, [2, 5, 9]), whole) is None
        assert subprogression_form(GSet(Z, [20]), whole) is None

    def test_lemma31_forced_conjugator(self):
        t1 = ProgressionType(F2, w("x"), w("y"), w("x"), 3)
        c = w("xy")
        t2 = t1.shifted(F2.inverse(c))
        kind, got = lemma31_relation(t1, t2)
        assert kind == 1 and got == F2.op(F2.inverse(t2.a), t1.a)
        kind, _ = lemma31_relation(t1, t1.reversed())
        assert kind == 2
        other = ProgressionType(F2, w("y"), w("x"), (), 3)
        assert lemma31_relation(t1, other) is None
