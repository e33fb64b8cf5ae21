import os
import subprocess
import sys

import numpy as np
import pytest

from gensums import kernels


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    prev = kernels.set_backend(request.param)
    yield request.param
    kernels.set_backend(prev)


def rand_mask(rng, n, p=0.3):
    return (rng.random(n) < p).astype(np.uint8)


def naive_finite(a, b, radix):
    from itertools import product
    els = list(product(*[range(r) for r in radix]))
    idx = {e: i for i, e in enumerate(els)}
    out = np.zeros(len(els), dtype=np.uint8)
    for i, x in enumerate(els):
        if not a[i]:
            continue
        for j, y in enumerate(els):
            if b[j]:
                out[idx[tuple((u + v) % r for u, v, r in zip(x, y, radix))]] = 1
    return out


@pytest.mark.parametrize("radix", [(7,), (6,), (2, 4), (3, 3)])
def test_finite_sumset(backend, radix):
    rng = np.random.default_rng(sum(radix))
    n = int(np.prod(radix))
    for _ in range(20):
        a, b = rand_mask(rng, n), rand_mask(rng, n)
        assert np.array_equal(kernels.finite_sumset(a, b, radix), naive_finite(a, b, radix))


def test_backends_agree():
    rng = np.random.default_rng(0)
    for radix in [(11,), (2, 4), (2, 2, 3)]:
        n = int(np.prod(radix))
        for _ in range(15):
            masks = np.stack([rand_mask(rng, n) for _ in range(rng.integers(2, 6))])
            ell = int(rng.integers(1, len(masks) + 1))
            res = {}
            for name in kernels.BACKENDS:
                prev = kernels.set_backend(name)
                res[name] = (kernels.finite_generalized_sumset(masks, ell, radix),
                             kernels.stabilizer_mask(masks[0], radix))
                kernels.set_backend(prev)
            assert np.array_equal(res["numba"][0], res["numpy"][0])
            assert np.array_equal(res["numba"][1], res["numpy"][1])
    for _ in range(30):
        masks = np.stack([rand_mask(rng, 12) for _ in range(rng.integers(2, 6))])
        ell = int(rng.integers(1, len(masks) + 1))
        outs = []
        for name in kernels.BACKENDS:
            prev = kernels.set_backend(name)
            outs.append(kernels.int_generalized_sumset(masks, ell))
            kernels.set_backend(prev)
        assert np.array_equal(*outs)


def test_int_generalized_matches_sets(backend):
    rng = np.random.default_rng(3)
    from itertools import combinations, product
    for _ in range(30):
        m = int(rng.integers(2, 5))
        masks = np.stack([rand_mask(rng, 8, 0.4) for _ in range(m)])
        ell = int(rng.integers(1, m + 1))
        sets = [np.flatnonzero(r).tolist() for r in masks]
        want = set()
        for idx in combinations(range(m), ell):
            for ch in product(*[sets[i] for i in idx]):
                want.add(sum(ch))
        got = set(np.flatnonzero(kernels.int_generalized_sumset(masks, ell)).tolist())
        assert got == want


def test_set_backend_validation():
    with pytest.raises(ValueError):
        kernels.set_backend("cuda")


def test_env_var_selects_backend():
    env = dict(os.environ, GENSUMS_BACKEND="numpy")
    out = subprocess.run([sys.executable, "-c", "from gensums import kernels; print(kernels.get_backend())"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "numpy"
