"""Compare the numba and numpy kernel backends on the hot loops.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]

Each case runs once to warm up (numba compiles on first call), then the
best of N timed runs is reported. Results are also checked for equality.
"""
import argparse
import time

import numpy as np

from gensums import kernels


def best_of(fn, repeat):
    fn()
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    # (name, callable taking no arguments)
    a = (rng.random(2003) < 0.3).astype(np.uint8)
    b = (rng.random(2003) < 0.3).astype(np.uint8)
    yield "sumset Z2003", lambda: kernels.finite_sumset(a, b, (2003,))
    rows = (rng.random((8, 257)) < 0.2).astype(np.uint8)
    yield "gen sumset Z257, m=8, l=4", lambda: kernels.finite_generalized_sumset(rows, 4, (257,))
    rows2 = (rng.random((6, 256)) < 0.2).astype(np.uint8)
    yield "gen sumset Z4^4, m=6, l=3", lambda: kernels.finite_generalized_sumset(rows2, 3, (4, 4, 4, 4))
    zrows = (rng.random((10, 400)) < 0.1).astype(np.uint8)
    yield "gen sumset Z window 400, m=10, l=5", lambda: kernels.int_generalized_sumset(zrows, 5)
    s = np.zeros(1024, dtype=np.uint8)
    s[::4] = 1
    s[1::8] = 1
    yield "stabilizer Z1024", lambda: kernels.stabilizer_mask(s, (1024,))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not kernels.HAVE_NUMBA:
        print("numba is not importable; only the numpy backend can run")
    rng = np.random.default_rng(0)
    print(f"{'case':40s} {'numba ms':>10s} {'numpy ms':>10s} {'speedup':>8s}")
    for name, fn in cases(rng):
        row = {}
        outs = {}
        for backend in kernels.BACKENDS:
            prev = kernels.set_backend(backend)
            row[backend] = best_of(fn, args.repeat)
            outs[backend] = fn()
            kernels.set_backend(prev)
        assert np.array_equal(outs["numba"], outs["numpy"]), name
        print(f"{name:40s} {row['numba'] * 1e3:10.3f} {row['numpy'] * 1e3:10.3f} "
              f"{row['numpy'] / row['numba']:7.1f}x")


if __name__ == "__main__":
    main()
