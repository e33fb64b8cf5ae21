"""Hot loops for set addition, generalized sumset DP and stabilizers.

Sets are 0/1 ``uint8`` masks. Finite models use a mixed-radix index over
``radix`` (for ``Cyclic(n)`` the radix is ``(n,)``); subsets of Z are shifted
to start at 0 and handled as plain masks with linear (non-wrapping) addition.

Two backends implement the same functions. ``numba`` compiles the loops with
``@njit``; ``numpy`` uses vectorised shifts and rolls. The backend is chosen by
the environment variable ``GENSUMS_BACKEND`` (``numba`` by default, falling
back to ``numpy`` when numba is not importable) and can be switched at run time
with :func:`set_backend`.
"""
import os

import numpy as np

try:
    from numba import njit
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


BACKENDS = ("numba", "numpy")
_backend = None


def set_backend(name: str) -> str:
    """Select the kernel backend and return the previous one."""
    global _backend
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}, expected one of {BACKENDS}")
    if name == "numba" and not HAVE_NUMBA:
        name = "numpy"
    prev = get_backend()
    _backend = name
    return prev


def get_backend() -> str:
    global _backend
    if _backend is None:
        want = os.environ.get("GENSUMS_BACKEND", "numba").strip().lower() or "numba"
        if want not in BACKENDS:
            raise ValueError(f"GENSUMS_BACKEND={want!r} is not one of {BACKENDS}")
        _backend = want if (want == "numpy" or HAVE_NUMBA) else "numpy"
    return _backend


def _digits(radix):
    radix = np.asarray(radix, dtype=np.int64)
    n = int(np.prod(radix))
    k = len(radix)
    digits = np.zeros((n, k), dtype=np.int64)
    idx = np.arange(n, dtype=np.int64)
    for t in range(k - 1, -1, -1):
        digits[:, t] = idx % radix[t]
        idx //= radix[t]
    strides = np.ones(k, dtype=np.int64)
    for t in range(k - 2, -1, -1):
        strides[t] = strides[t + 1] * radix[t + 1]
    return digits, strides


# ---------------------------------------------------------------------------
# numba kernels

@njit(cache=True)
def _nb_add_index(i, j, digits, radix, strides):
    out = 0
    for t in range(radix.shape[0]):
        out += ((digits[i, t] + digits[j, t]) % radix[t]) * strides[t]
    return out


@njit(cache=True)
def _nb_finite_add_into(out, src, b_idx, digits, radix, strides):
    for i in range(src.shape[0]):
        if src[i]:
            for jj in range(b_idx.shape[0]):
                out[_nb_add_index(i, b_idx[jj], digits, radix, strides)] = 1


@njit(cache=True)
def _nb_finite_sumset(a, b, digits, radix, strides):
    out = np.zeros(a.shape[0], dtype=np.uint8)
    b_idx = np.flatnonzero(b)
    _nb_finite_add_into(out, a, b_idx, digits, radix, strides)
    return out


@njit(cache=True)
def _nb_finite_gen_sumset(masks, ell, digits, radix, strides):
    m, n = masks.shape
    dp = np.zeros((ell + 1, n), dtype=np.uint8)
    dp[0, 0] = 1
    for i in range(m):
        b_idx = np.flatnonzero(masks[i])
        top = min(i + 1, ell)
        for c in range(top, 0, -1):
            _nb_finite_add_into(dp[c], dp[c - 1], b_idx, digits, radix, strides)
    return dp[ell].copy()


@njit(cache=True)
def _nb_int_gen_sumset(masks, ell):
    m, w = masks.shape
    width = ell * (w - 1) + 1
    dp = np.zeros((ell + 1, width), dtype=np.uint8)
    dp[0, 0] = 1
    for i in range(m):
        b_idx = np.flatnonzero(masks[i])
        top = min(i + 1, ell)
        for c in range(top, 0, -1):
            lim = (c - 1) * (w - 1) + 1
            for x in range(lim):
                if dp[c - 1, x]:
                    for jj in range(b_idx.shape[0]):
                        dp[c, x + b_idx[jj]] = 1
    return dp[ell].copy()


@njit(cache=True)
def _nb_stabilizer(mask, digits, radix, strides):
    n = mask.shape[0]
    members = np.flatnonzero(mask)
    out = np.zeros(n, dtype=np.uint8)
    for g in range(n):
        ok = True
        for jj in range(members.shape[0]):
            if not mask[_nb_add_index(g, members[jj], digits, radix, strides)]:
                ok = False
                break
        if ok:
            out[g] = 1
    return out


# ---------------------------------------------------------------------------
# numpy kernels

def _np_shift(src, shape, digit_row):
    # translate a finite mask by the element with the given digits
    return np.roll(src.reshape(shape), tuple(int(d) for d in digit_row), axis=tuple(range(len(shape)))).ravel()


def _np_finite_add_into(out, src, b_idx, digits, shape):
    for j in b_idx:
        out |= _np_shift(src, shape, digits[j])


def _np_finite_sumset(a, b, digits, radix):
    out = np.zeros_like(a)
    _np_finite_add_into(out, a, np.flatnonzero(b), digits, tuple(radix))
    return out


def _np_finite_gen_sumset(masks, ell, digits, radix):
    m, n = masks.shape
    shape = tuple(radix)
    dp = np.zeros((ell + 1, n), dtype=np.uint8)
    dp[0, 0] = 1
    for i in range(m):
        b_idx = np.flatnonzero(masks[i])
        for c in range(min(i + 1, ell), 0, -1):
            _np_finite_add_into(dp[c], dp[c - 1], b_idx, digits, shape)
    return dp[ell].copy()


def _np_int_gen_sumset(masks, ell):
    m, w = masks.shape
    width = ell * (w - 1) + 1
    dp = np.zeros((ell + 1, width), dtype=np.uint8)
    dp[0, 0] = 1
    for i in range(m):
        b_idx = np.flatnonzero(masks[i])
        for c in range(min(i + 1, ell), 0, -1):
            lim = (c - 1) * (w - 1) + 1
            src = dp[c - 1, :lim]
            for b in b_idx:
                dp[c, b:b + lim] |= src
    return dp[ell].copy()


def _np_stabilizer(mask, digits, radix):
    shape = tuple(radix)
    out = np.zeros_like(mask)
    for g in range(mask.shape[0]):
        if np.array_equal(_np_shift(mask, shape, digits[g]), mask):
            out[g] = 1
    return out


# ---------------------------------------------------------------------------
# public entry points

_digit_cache: dict = {}


def _tables(radix):
    key = tuple(int(q) for q in radix)
    if key not in _digit_cache:
        digits, strides = _digits(key)
        _digit_cache[key] = (digits, np.asarray(key, dtype=np.int64), strides)
    return _digit_cache[key]


def finite_sumset(a, b, radix) -> np.ndarray:
    """Mask of A + B in the finite abelian group with the given radix."""
    digits, rad, strides = _tables(radix)
    a = np.ascontiguousarray(a, dtype=np.uint8)
    b = np.ascontiguousarray(b, dtype=np.uint8)
    if get_backend() == "numba":
        return _nb_finite_sumset(a, b, digits, rad, strides)
    return _np_finite_sumset(a, b, digits, rad)


def finite_generalized_sumset(masks, ell: int, radix) -> np.ndarray:
    """Mask of the ell-fold sums over distinct rows of ``masks`` (finite model)."""
    digits, rad, strides = _tables(radix)
    masks = np.ascontiguousarray(masks, dtype=np.uint8)
    if get_backend() == "numba":
        return _nb_finite_gen_sumset(masks, ell, digits, rad, strides)
    return _np_finite_gen_sumset(masks, ell, digits, rad)


def int_generalized_sumset(masks, ell: int) -> np.ndarray:
    """Same over Z; rows are masks over a common window starting at 0.

    Bit ``x`` of the result stands for the integer ``x + ell * offset`` where
    ``offset`` is the value of bit 0 of the input window.
    """
    masks = np.ascontiguousarray(masks, dtype=np.uint8)
    if get_backend() == "numba":
        return _nb_int_gen_sumset(masks, ell)
    return _np_int_gen_sumset(masks, ell)


def stabilizer_mask(mask, radix) -> np.ndarray:
    digits, rad, strides = _tables(radix)
    mask = np.ascontiguousarray(mask, dtype=np.uint8)
    if get_backend() == "numba":
        return _nb_stabilizer(mask, digits, rad, strides)
    return _np_stabilizer(mask, digits, rad)
