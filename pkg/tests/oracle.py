"""Naive reference implementations, written without touching the library internals.

Free-group words are strings here: lowercase letters are generators, uppercase
their inverses ("xY" is x y^-1). Everything is plain enumeration.
"""
from itertools import combinations, permutations, product


def free_reduce(word: str) -> str:
    out = []
    for ch in word:
        if out and out[-1] != ch and out[-1].lower() == ch.lower():
            out.pop()
        else:
            out.append(ch)
    return "".join(out)


def free_mul(u: str, v: str) -> str:
    return free_reduce(u + v)


def free_inv(u: str) -> str:
    return "".join(ch.swapcase() for ch in reversed(u))


def syllables_to_str(word) -> str:
    """Library word ((gen, exp), ...) -> oracle string."""
    out = []
    for g, e in word:
        ch = "xyzw"[g]
        out.append((ch if e > 0 else ch.upper()) * abs(e))
    return "".join(out)


def str_to_syllables(s: str) -> tuple:
    out = []
    for ch in s:
        g = "xyzw".index(ch.lower())
        e = 1 if ch.islower() else -1
        if out and out[-1][0] == g:
            out[-1] = (g, out[-1][1] + e)
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def gen_product(sets, ell, op, identity):
    """Pi^ell over every ell-subset of indices and every ordering of it."""
    out = set()
    for idx in combinations(range(len(sets)), ell):
        for perm in permutations(idx):
            for choice in product(*[sets[i] for i in perm]):
                x = identity
                for y in choice:
                    x = op(x, y)
                out.add(x)
    return out


def mu_profile(sets, ell):
    union = set().union(*sets)
    inc = {a: sum(a in s for s in sets) for a in union}
    mu = {a: min(ell, c) for a, c in inc.items()}
    return mu, sum(mu.values())


def subseq_sums(terms, ell, op, identity):
    return gen_product([[t] for t in terms], ell, op, identity)


def is_ap_int(s) -> bool:
    xs = sorted(s)
    if len(xs) <= 2:
        return True
    d = xs[1] - xs[0]
    return all(b - a == d for a, b in zip(xs, xs[1:]))


def ap_differences_mod(s, n):
    """All d != 0 with s = {a, a+d, ..., a+(k-1)d} mod n for some a."""
    s = set(s)
    k = len(s)
    found = set()
    for d in range(1, n):
        for a in s:
            if {(a + j * d) % n for j in range(k)} == s and len({(a + j * d) % n for j in range(k)}) == k:
                found.add(d)
                break
    return found


def stabilizer_mod(s, n):
    s = set(s)
    return {g for g in range(n) if {(x + g) % n for x in s} == s}


def sumset_mod(a, b, n):
    return {(x + y) % n for x in a for y in b}
