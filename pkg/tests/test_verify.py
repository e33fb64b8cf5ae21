import pytest

from gensums import Cyclic, Integers, SetSequence
from gensums.verify import (exhaustive_inverse, parse_exhaustive, run_bounds, run_constructions, run_inverse,
                            run_structure, run_subseq, run_suite, shrink_sets, sparse_scan, two_set_scan)


def test_bounds_small():
    res = run_bounds(seed=1, count=20)
    assert res.ok and res.instances > 300


def test_deterministic():
    a, b = run_bounds(seed=5, count=10).to_json(), run_bounds(seed=5, count=10).to_json()
    a.pop("seconds"), b.pop("seconds")
    assert a == b


def test_inverse_small():
    res = run_inverse(seed=2, count=60)
    assert res.ok and res.instances == 60


def test_structure_small():
    assert run_structure(seed=0, count=40, scans=False).ok


def test_subseq_small():
    assert run_subseq(seed=0, count=200).ok


def test_constructions_small():
    res = run_constructions(max_sum=12, ells=(2,), max_m=5, max_k=3)
    assert res.ok and res.equality == res.instances


def test_parse_exhaustive():
    cfg = parse_exhaustive("Z,m=3,ell=2,universe=0..5")
    assert cfg["model"] == Integers() and cfg["m"] == 3 and cfg["universe"] == (0, 5)
    assert parse_exhaustive("Z7,m=2,ell=2")["model"] == Cyclic(7)
    with pytest.raises(ValueError):
        parse_exhaustive("Z,m=three")


def test_exhaustive_tiny():
    res = exhaustive_inverse("Z,m=3,ell=2,universe=0..3")
    assert res.ok and res.instances == 11 ** 3 and res.equality > 0


def test_two_set_scans_tiny():
    assert two_set_scan(Cyclic(5)).ok
    assert two_set_scan(Integers(), universe=(0, 4), max_size=3).ok


def test_sparse_scan_tiny():
    res = sparse_scan(universe=(0, 4))
    assert res.ok and res.equality == 0


def test_shrink_keeps_failure():
    seq = SetSequence(Integers(), [[0, 1, 2], [5], [7, 8]])

    def fails(s, ell):
        return ["big"] if any(len(x) >= 2 for x in s.sets) else []

    small, ell = shrink_sets(seq, 2, fails)
    assert fails(small, ell) and sum(len(x) for x in small.sets) <= sum(len(x) for x in seq.sets)


def test_run_suite_rejects():
    with pytest.raises(ValueError):
        run_suite("nope")
    with pytest.raises(ValueError):
        run_suite("bounds", exhaustive="Z,m=3,ell=2,universe=0..3")
