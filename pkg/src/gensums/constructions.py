"""Extremal interval families for the generalized sumset bound, plus named examples."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .groups import GroupModel, GSet, Integers
from .seqset import SetSequence, generalized_sumset, multiplicity_profile

VARIANTS = ("C1", "C2", "C3")


@dataclass(frozen=True)
class ConstructionParams:
    variant: str
    ell: int
    k: tuple
    n_aux: tuple = ()
    n_blocks: int | None = None
    m: int | None = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "variant", str(self.variant).upper())
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        object.__setattr__(self, "n_aux", tuple(int(x) for x in self.n_aux))
        if self.m is None:
            object.__setattr__(self, "m", len(self.k))
        if self.variant == "C1" and self.n_blocks is None:
            # smallest legal block count
            object.__setattr__(self, "n_blocks", -(-self.m // self.ell))
        validate(self)

    def kk(self, i: int) -> int:
        """k_i with k_i = 0 for i <= 0."""
        return self.k[i - 1] if i >= 1 else 0

    def nn(self, i: int) -> int:
        """n_i with n_i = 0 outside the declared range."""
        return self.n_aux[i - 1] if 1 <= i <= len(self.n_aux) else 0

    def to_json(self) -> dict:
        out = {"variant": self.variant, "ell": self.ell, "m": self.m, "k": list(self.k)}
        if self.variant == "C1":
            out["n_blocks"] = self.n_blocks
        else:
            out["n_aux"] = list(self.n_aux)
        return out


def _nonincreasing(xs) -> bool:
    return all(a >= b for a, b in zip(xs, xs[1:]))


def validate(p: ConstructionParams):
    if p.variant not in VARIANTS:
        raise ValueError(f"unknown variant {p.variant!r}; expected one of {VARIANTS}")
    if not isinstance(p.ell, int) or p.ell < 2:
        raise ValueError("ell must be an integer >= 2")
    if p.m != len(p.k):
        raise ValueError(f"m = {p.m} but {len(p.k)} values of k were given")
    if p.m <= p.ell:
        raise ValueError("the constructions need ell < m")
    if any(x < 1 for x in p.k) or list(p.k) != sorted(p.k):
        raise ValueError("k must be a nondecreasing list of positive integers")
    if p.variant == "C1":
        if p.n_blocks is None or p.n_blocks * p.ell < p.m:
            raise ValueError("C1 needs n_blocks * ell >= m")
        return
    if p.k[0] < 2:
        raise ValueError(f"{p.variant} needs k_1 >= 2")
    if p.variant == "C2":
        if p.m > 2 * p.ell:
            raise ValueError("C2 needs ell < m <= 2 ell")
        need = p.m - p.ell
    else:
        if p.m <= 2 * p.ell:
            raise ValueError("C3 needs m > 2 ell")
        need = p.ell
    if len(p.n_aux) != need:
        raise ValueError(f"{p.variant} needs {need} auxiliary values n_i, got {len(p.n_aux)}")
    if not _nonincreasing(p.n_aux):
        raise ValueError("n_aux must be nonincreasing")
    for i, n in enumerate(p.n_aux, start=1):
        if not 1 <= n <= p.kk(i) - 1:
            raise ValueError(f"n_{i} = {n} must lie in [1, k_{i} - 1]")


def _interval(lo: int, hi: int) -> list:
    return list(range(lo, hi + 1))


def construction_intervals(p: ConstructionParams, literal_block_index: bool = False) -> list:
    """The (lo, hi) endpoints of A_1..A_m."""
    ell, kk, nn = p.ell, p.kk, p.nn
    out = []
    for j in range(1, p.m + 1):
        if p.variant == "C1":
            s = sum(kk(j - t * ell) for t in range(1, p.n_blocks + 1))
            out.append((s + 1, kk(j) + s))
        elif p.variant == "C2":
            base = kk(j - ell) - nn(j - ell)
            out.append((base + 1, kk(j) + base))
        elif j <= ell:
            out.append((1, kk(j)))
        else:
            # the printed index floor(j / ell) overshoots when ell | j; see the ledger
            blocks = j // ell if literal_block_index else (j - 1) // ell
            base = sum(kk(j - t * ell) for t in range(1, blocks + 1)) - nn(j - blocks * ell)
            out.append((base + 1, kk(j) + base))
    return out


def construct(p: ConstructionParams, model: GroupModel | None = None,
              literal_block_index: bool = False) -> SetSequence:
    """Build the interval family over Z, or over Free(1) as powers of the generator."""
    model = model or Integers()
    sets = [_interval(lo, hi) for lo, hi in construction_intervals(p, literal_block_index)]
    return _realize(model, sets)


def _realize(model: GroupModel, sets) -> SetSequence:
    if model.kind == "integers":
        return SetSequence(model, sets)
    if model.kind == "free" and model.rank == 1:
        return SetSequence(model, [[model.pow(((0, 1),), e) for e in s] for s in sets])
    raise ValueError(f"constructions live in Z or Free(1), not {model}")


def expected_equality_value(p: ConstructionParams) -> int:
    total = sum(p.k) - sum(p.n_aux) if p.variant != "C1" else sum(p.k)
    return total - p.ell + 1


def auxiliary_sequence(p: ConstructionParams) -> SetSequence | None:
    """The comparison family B used to prove the lower half of the equality (C2/C3 only)."""
    if p.variant == "C1":
        return None
    A = construct(p)
    sets = list(A.sets)
    stop = p.m if p.variant == "C2" else 2 * p.ell
    for j in range(p.ell + 1, stop + 1):
        lo, hi = p.kk(j - p.ell) + 1, p.kk(j) + p.kk(j - p.ell) - p.nn(j - p.ell)
        sets[j - 1] = GSet(A.model, _interval(lo, hi))
    return SetSequence(A.model, sets)


def check_construction(p: ConstructionParams) -> list:
    """Everything claimed about one family, as a list of failure strings (empty when fine)."""
    A = construct(p)
    problems = []
    size = len(generalized_sumset(A, p.ell))
    want = expected_equality_value(p)
    if size != want:
        problems.append(f"|Sigma| = {size}, expected {want}")
    prof = multiplicity_profile(A, p.ell)
    if prof.total - p.ell + 1 != size:
        problems.append(f"sum mu - ell + 1 = {prof.total - p.ell + 1} differs from |Sigma| = {size}")
    capped = any(A.incidence[a] > p.ell for a in A.union)
    if p.variant == "C1" and capped:
        problems.append("C1 family has an element of incidence > ell")
    if p.variant != "C1" and not capped:
        problems.append(f"{p.variant} family has no element of incidence > ell")
    B = auxiliary_sequence(p)
    if B is not None:
        if B.union != A.union:
            problems.append("auxiliary family has a different union")
        SB = generalized_sumset(B, p.ell)
        if not SB.issubset(generalized_sumset(A, p.ell)):
            problems.append("Sigma(B) is not contained in Sigma(A)")
        if any(c > p.ell for c in B.incidence.values()):
            problems.append("auxiliary family has an element of incidence > ell")
        if sum(len(s) for s in B.sets) != sum(p.k) - sum(p.n_aux):
            problems.append("auxiliary family has the wrong total size")
    return problems


def enumerate_params(max_sum: int = 40, ells=(2, 3), max_m: int = 8, max_k: int = 6,
                     variants=VARIANTS):
    """Every valid parameter set on a bounded grid, in a fixed order."""
    for ell in ells:
        for m in range(ell + 1, max_m + 1):
            for k in itertools.combinations_with_replacement(range(1, max_k + 1), m):
                if sum(k) > max_sum:
                    continue
                if "C1" in variants:
                    yield ConstructionParams("C1", ell, k)
                if k[0] < 2:
                    continue
                variant = "C2" if m <= 2 * ell else "C3"
                if variant not in variants:
                    continue
                need = m - ell if variant == "C2" else ell
                ranges = [range(1, k[i]) for i in range(need)]
                for n in itertools.product(*ranges):
                    if _nonincreasing(n):
                        yield ConstructionParams(variant, ell, k, n)


FIVE_INTERVALS = {"ell": 3, "intervals": [(0, 3), (6, 9), (7, 10), (8, 11), (9, 12)]}

NAMED_EXAMPLES = {"five-intervals": FIVE_INTERVALS}


def named_example(name: str, model: GroupModel | None = None):
    """Return (sequence, ell) for a named instance."""
    if name not in NAMED_EXAMPLES:
        raise KeyError(f"unknown example {name!r}; known: {sorted(NAMED_EXAMPLES)}")
    data = NAMED_EXAMPLES[name]
    model = model or Integers()
    sets = [_interval(lo, hi) for lo, hi in data["intervals"]]
    return _realize(model, sets), data["ell"]

