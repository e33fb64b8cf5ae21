"""Subsequence sums: multiplicities, the X-set witness construction and the inverse check."""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field

from .groups import GSet, smallest_subgroup_order
from .progressions import detect_progressions
from .seqset import Budget, DEFAULT_BUDGET, ElementSequence, _check_ell, subsequence_sumset, sumset

# Above this many subsets the minimality of t is taken from the sorted-prefix argument alone.
EXHAUSTIVE_T_LIMIT = 200_000


@dataclass
class SubseqProfile:
    ell: int
    rho: dict
    mu_a: dict
    X: GSet
    order: list
    t: int | None = None
    t_checked: bool = False

    @property
    def mu_total(self) -> int:
        return sum(self.mu_a.values())

    def to_json(self) -> dict:
        model = self.X.model
        enc = model.element_to_json
        return {"ell": self.ell,
                "rho": [[enc(a), self.rho[a]] for a in sorted(self.rho, key=model.key)],
                "mu_total": self.mu_total, "X": self.X.to_json(), "t": self.t}


def _least_t(values, ell) -> int | None:
    s = 0
    for i, v in enumerate(values, start=1):
        s += v
        if i >= 2 and s >= ell + i:
            return i
    return None


def subseq_profile(a: ElementSequence, ell: int) -> SubseqProfile:
    _check_ell(a.m, ell)
    model = a.model
    rho = dict(a.rho)
    mu = {x: min(ell, r) for x, r in rho.items()}
    X = [x for x in rho if mu[x] >= 2]
    # proof ordering: rho descending, ties broken canonically
    order = sorted(X, key=lambda x: (-rho[x], model.key(x)))
    t = _least_t([rho[x] for x in order], ell)
    prof = SubseqProfile(ell, rho, mu, GSet(model, X, canonical=True), order, t)
    # exhaustive confirmation that no smaller subset of X meets the threshold
    n = len(order)
    top = (t - 1) if t is not None else n
    if sum(math.comb(n, s) for s in range(2, top + 1)) <= EXHAUSTIVE_T_LIMIT:
        for s in range(2, top + 1):
            for combo in itertools.combinations(order, s):
                if sum(rho[x] for x in combo) >= ell + s:
                    raise AssertionError(f"greedy t = {t} is not minimal: {s} elements suffice")
        prof.t_checked = True
    return prof


def witness_block_sequence(prof: SubseqProfile) -> list:
    """x = (a_1 * rho_1, a_2 * (rho_2 - 1), ..., a_t * (rho_t - 2))."""
    if prof.t is None:
        return []
    out = []
    for i, x in enumerate(prof.order[:prof.t], start=1):
        r = prof.rho[x]
        reps = r if i == 1 else (r - 2 if i == prof.t else r - 1)
        out.extend([x] * reps)
    return out


def build_x_sets(a: ElementSequence, ell: int, prof: SubseqProfile | None = None) -> list | None:
    """X_j = A_j | A'_j from the block sequence; None when t is absent or x is shorter than ell."""
    prof = prof or subseq_profile(a, ell)
    x = witness_block_sequence(prof)
    if len(x) < ell:
        return None
    model = a.model
    rest = Counter(a.terms)
    rest.subtract(x[:ell])
    b_rho = {v: c for v, c in rest.items() if c > 0}
    out = []
    for j in range(1, ell + 1):
        members = {x[j - 1]} | {v for v, c in b_rho.items() if c >= j}
        out.append(GSet(model, members, canonical=True))
    return out


def x_set_checks(a: ElementSequence, ell: int, xs: list, prof: SubseqProfile,
                 budget: Budget = DEFAULT_BUDGET) -> dict:
    """The five properties the proof asks of X_1..X_l, each as a bool, plus r."""
    model = a.model
    A = a.support
    sigma = subsequence_sumset(a, ell, budget)
    counts = Counter()
    for s in xs:
        counts.update(s.members)
    sizes = [len(s) for s in xs]
    r = 0
    while r < len(sizes) and sizes[r] >= 2 and (r == 0 or sizes[r] <= sizes[r - 1]):
        r += 1
    out = {
        "X1_is_A": xs[0] == A,
        "incidence_is_mu": all(counts[v] == prof.mu_a[v] for v in A) and set(counts) <= A.members,
        "product_in_sigma": sumset(model, *xs).issubset(sigma),
        "sizes_sum_to_mu": sum(sizes) == prof.mu_total,
        "decreasing_prefix": r >= 2 and all(sz == 1 for sz in sizes[r:]),
        "r": r,
    }
    return out


def _cap(model, ell):
    pg = smallest_subgroup_order(model)
    if pg == math.inf:
        return math.inf
    return pg - 2 if ell == 2 else pg - 1


@dataclass
class SubseqInverseReport:
    ell: int
    size: int
    bound: int
    mu_total: int
    equality: bool
    hypotheses: dict = field(default_factory=dict)
    applicable: list = field(default_factory=list)
    is_progression: bool | None = None
    progression: dict | None = None
    x_sets: list | None = None
    x_checks: dict | None = None
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"ell": self.ell, "size": self.size, "bound": self.bound, "mu_total": self.mu_total,
                "equality": self.equality, "hypotheses": self.hypotheses, "applicable": self.applicable,
                "is_progression": self.is_progression, "progression": self.progression,
                "x_sets": None if self.x_sets is None else [s.to_json() for s in self.x_sets],
                "x_checks": self.x_checks, "violations": self.violations}


def subseq_inverse_check(a: ElementSequence, ell: int, budget: Budget = DEFAULT_BUDGET) -> SubseqInverseReport:
    """Equality in the subsequence mu-bound and the structure it forces on the set of distinct terms."""
    model = a.model
    prof = subseq_profile(a, ell)
    sigma = subsequence_sumset(a, ell, budget)
    bound = prof.mu_total - ell + 1
    rep = SubseqInverseReport(ell, len(sigma), bound, prof.mu_total, len(sigma) == bound)
    h = rep.hypotheses
    h["model_ok"] = model.is_torsion_free or (model.is_abelian and len(sigma) <= _cap(model, ell))
    h["ell_at_least_2"] = ell >= 2
    h["some_mu_is_ell"] = any(v == ell for v in prof.mu_a.values())
    h["two_repeated_terms"] = len(prof.X) >= 2
    h["ell_at_most_m_minus_2"] = ell <= a.m - 2
    h["t_exists"] = prof.t is not None
    if h["model_ok"] and h["ell_at_least_2"] and h["some_mu_is_ell"] and h["two_repeated_terms"]:
        rep.applicable.append("saturated-term inverse")
    if h["model_ok"] and h["ell_at_most_m_minus_2"] and h["two_repeated_terms"] and h["t_exists"]:
        rep.applicable.append("block-sequence inverse")
    if not rep.equality or not rep.applicable:
        return rep
    found = detect_progressions(a.support)
    rep.is_progression = bool(found)
    if found:
        rep.progression = found[0].to_json()
    else:
        rep.violations.append("equality holds but the distinct terms do not form a progression")
    xs = build_x_sets(a, ell, prof)
    if xs is not None:
        rep.x_sets = xs
        checks = x_set_checks(a, ell, xs, prof, budget)
        r = checks["r"]
        if r >= 2:
            head = xs[:r]
            checks["head_extremal"] = len(sumset(model, *head)) == sum(len(s) for s in head) - r + 1
        rep.x_checks = checks
        for name, ok in checks.items():
            if ok is False:
                rep.violations.append(f"X-set property {name} fails")
    return rep
