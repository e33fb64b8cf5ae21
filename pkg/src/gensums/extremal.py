"""Witness constructions and equality (inverse) classifiers.

The main pieces are

* the sets A_j^1, A_j^2, S_j built from a sequence so that the A_j^2 carry
  exactly the multiplicities mu and their product stays inside Pi^l;
* the chain A'_j = {a : mu(a) >= j};
* detection of (l, g)-minimizing sequences, and the structural reports that
  the inverse theorems promise when the mu-bound is attained.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations

from .groups import GSet, GroupModel, is_prime, product_set, smallest_subgroup_order
from .progressions import (find_linked_types, normal_forms, ratio_representative,
                           same_ratio_family, detect_progressions, linked_chain_check)
from .seqset import (DEFAULT_BUDGET, Budget, BudgetExceeded, SetSequence, generalized_product_set,
                     multiplicity_profile, sumset)


def _product(model: GroupModel, sets) -> GSet:
    if model.is_abelian:
        return sumset(model, *sets)
    return product_set(model, *sets)


# ---------------------------------------------------------------------------
# L(a) and the A^1 / A^2 / S construction

def compute_L(seq: SetSequence, ell: int, a) -> int:
    """Smallest i >= 0 with P(i) = i + #{j in [i+1, l] : a in A_j} equal to mu(a)."""
    inc = sum(1 for s in seq.sets if a in s)
    mu = min(ell, inc)
    head = [a in seq.sets[j] for j in range(ell)]
    eta = sum(head)
    if not (1 <= eta <= mu < ell):
        raise ValueError(f"L(a) needs 1 <= eta(a) <= mu(a) < l, got eta={eta}, mu={mu}, l={ell}")
    for i in range(ell + 1):
        if i + sum(head[i:]) == mu:
            return i
    raise AssertionError("P never reaches mu(a)")  # impossible: P climbs by steps of 0 or 1


@dataclass
class WitnessSets:
    ell: int
    B: list
    A1: list
    A2: list
    S: list
    X: GSet
    Lmap: dict
    mu_total: int

    def to_json(self) -> dict:
        model = self.X.model
        return {"B": [s.to_json() for s in self.B], "A1": [s.to_json() for s in self.A1],
                "A2": [s.to_json() for s in self.A2], "S": [s.to_json() for s in self.S],
                "X": self.X.to_json(),
                "L": [[model.element_to_json(a), v] for a, v in sorted(self.Lmap.items(),
                                                                       key=lambda kv: model.key(kv[0]))]}


def build_witness_sets(seq: SetSequence, ell: int) -> WitnessSets:
    if not 2 <= ell <= seq.m:
        raise ValueError("the witness construction needs 2 <= l <= m")
    model = seq.model
    prof = multiplicity_profile(seq, ell)
    M = prof.M.members
    tail = set()
    for s in seq.sets[ell:]:
        tail |= s.members
    head = set()
    for s in seq.sets[:ell]:
        head |= s.members
    B = [{a for a in tail if a not in M and prof.tau[a] >= j} for j in range(1, ell + 1)]
    A1 = [seq.sets[j].members | B[j] | M for j in range(ell)]
    X = [a for a in (head & tail) - M if sum(a in s for s in A1) < prof.mu[a]]
    X.sort(key=model.key)
    Lmap = {}
    A2 = [set(s) for s in A1]
    for a in X:
        L = compute_L(seq, ell, a)
        Lmap[a] = L
        for j in range(prof.tau[a] + 1, L + 1):
            A2[j - 1].add(a)
    mk = lambda s: GSet(model, s, canonical=True)
    return WitnessSets(ell, [mk(s) for s in B], [mk(s) for s in A1], [mk(s) for s in A2],
                       [mk(A2[j] - A1[j]) for j in range(ell)], mk(X), Lmap, prof.total)


def witness_violations(seq: SetSequence, ws: WitnessSets, check_product: bool = True,
                       budget: Budget = DEFAULT_BUDGET) -> list:
    """Every way in which ``ws`` fails the properties promised by the construction."""
    ell = ws.ell
    model = seq.model
    prof = multiplicity_profile(seq, ell)
    out = []
    for j in range(ell):
        if ws.A2[j] != (ws.A1[j] | ws.S[j]):
            out.append(f"A2_{j + 1} != A1_{j + 1} | S_{j + 1}")
        if ws.S[j] != ws.A2[j] - ws.A1[j]:
            out.append(f"S_{j + 1} != A2_{j + 1} - A1_{j + 1}")
        if len(ws.A2[j]) < len(seq.sets[j]):
            out.append(f"|A2_{j + 1}| < |A_{j + 1}|")
        if not ws.A2[j].issubset(seq.union):
            out.append(f"A2_{j + 1} is not inside A")
    for a in seq.union:
        c = sum(a in s for s in ws.A2)
        if c != prof.mu[a]:
            out.append(f"sum chi_A2({model.format(a)}) = {c} != mu = {prof.mu[a]}")
    if sum(len(s) for s in ws.A2) != prof.total:
        out.append("sum |A2_j| != sum mu")
    for a, L in ws.Lmap.items():
        if L <= prof.tau[a]:
            out.append(f"L({model.format(a)}) = {L} <= tau = {prof.tau[a]}")
    # every a in S_r lies in >= r of A_1..A_{r-1}, A_{l+1}..A_m
    for r in range(2, ell + 1):
        pool = list(seq.sets[:r - 1]) + list(seq.sets[ell:])
        for a in ws.S[r - 1]:
            if sum(a in s for s in pool) < r:
                out.append(f"{model.format(a)} in S_{r} lies in fewer than {r} admissible sets")
    if check_product:
        prod = _product(model, ws.A2)
        pi = generalized_product_set(seq, ell, budget)
        if not prod.issubset(pi):
            out.append("A2_1 ... A2_l is not inside Pi^l")
    return out


class PrimeChain(list):
    """The sets A'_1 >= A'_2 >= ... >= A'_l, with a flag for the mu = l hypothesis."""

    def __init__(self, sets, hypothesis_met: bool):
        super().__init__(sets)
        self.hypothesis_met = hypothesis_met


def build_prime_chain(seq: SetSequence, ell: int) -> PrimeChain:
    if not 2 <= ell <= seq.m:
        raise ValueError("the chain is defined for 2 <= l <= m")
    prof = multiplicity_profile(seq, ell)
    sets = [prof.level(j) for j in range(1, ell + 1)]
    return PrimeChain(sets, hypothesis_met=len(prof.M) > 0)


def prime_chain_violations(seq: SetSequence, ell: int, chain: PrimeChain, budget=DEFAULT_BUDGET) -> list:
    prof = multiplicity_profile(seq, ell)
    out = []
    if chain[0] != seq.union:
        out.append("A'_1 != A")
    for j in range(len(chain) - 1):
        if not chain[j + 1].issubset(chain[j]):
            out.append(f"A'_{j + 2} is not inside A'_{j + 1}")
    if sum(len(s) for s in chain) != prof.total:
        out.append("sum |A'_j| != sum mu")
    if chain.hypothesis_met:
        prod = _product(seq.model, chain)
        if not prod.issubset(generalized_product_set(seq, ell, budget)):
            out.append("A'_1 ... A'_l is not inside Pi^l")
    return out


# ---------------------------------------------------------------------------
# (l, g)-minimizing sequences

@dataclass
class MinimizingWitness:
    g: object
    B: list
    types: list
    source: str = "construction"

    def to_json(self) -> dict:
        model = self.B[0].model
        return {"g": model.element_to_json(self.g), "B": [s.to_json() for s in self.B],
                "types": [t.to_json() for t in self.types], "source": self.source}


def minimizing_violations(seq: SetSequence, ell: int, B, types=None, budget=DEFAULT_BUDGET) -> list:
    """Check the four defining conditions of an (l, g)-minimizing family B_1..B_l."""
    out = []
    model = seq.model
    if len(B) != ell:
        return [f"expected {ell} sets, got {len(B)}"]
    if any(len(b) < 2 for b in B):
        out.append("some |B_i| < 2")
    if any(not b.issubset(seq.union) for b in B):
        out.append("some B_i is not inside A")
    prof = multiplicity_profile(seq, ell)
    for a in seq.union:
        if sum(a in b for b in B) != prof.mu[a]:
            out.append(f"sum chi_B({model.format(a)}) != mu")
            break
    if types is None and not out:
        types = find_linked_types(B)
    if types is None:
        out.append("B is not a linked chain of progressions")
    else:
        if not linked_chain_check(types) or any(t.g == model.identity for t in types):
            out.append("types are not linked")
        if any(t.realize() != b for t, b in zip(types, B)):
            out.append("types do not realize B")
    if not out and _product(model, B) != generalized_product_set(seq, ell, budget):
        out.append("B_1 ... B_l != Pi^l")
    return out


def _ratio_class(model, h):
    r1 = ratio_representative(model, h)
    r2 = ratio_representative(model, model.inverse(h))
    return min(r1, r2, key=model.key)


def _fallback_search(seq, ell, prof, pi, max_union, node_budget, budget):
    """Exhaustive search for B_1..B_l over progression subsets of A, grouped by ratio class."""
    model = seq.model
    A = list(seq.union)
    if len(A) > max_union:
        raise BudgetExceeded(f"|A| = {len(A)} exceeds the fallback search limit {max_union}")
    classes: dict = {}
    for k in range(2, len(A) + 1):
        for combo in combinations(A, k):
            s = GSet(model, combo, canonical=True)
            seen = set()
            for c, h in normal_forms(s):
                key = _ratio_class(model, h)
                if key not in seen:
                    seen.add(key)
                    classes.setdefault(key, []).append(s)
    total = prof.total
    nodes = [0]
    for key in sorted(classes, key=model.key):
        cands = classes[key]
        counts = {a: 0 for a in A}
        chosen: list = []

        def rec(i, used):
            nodes[0] += 1
            if nodes[0] > node_budget:
                raise BudgetExceeded("minimizing-sequence search budget exhausted")
            if i == ell:
                if used != total or any(counts[a] != prof.mu[a] for a in A):
                    return None
                types = find_linked_types(chosen)
                if types is None:
                    return None
                if _product(model, chosen) == pi:
                    return MinimizingWitness(types[0].g, list(chosen), types, source="search")
                return None
            remaining = ell - i - 1
            for s in cands:
                size = len(s)
                # the sets still to choose need at least 2 elements each
                if used + size + 2 * remaining > total:
                    continue
                if remaining == 0 and used + size != total:
                    continue
                if any(counts[a] + 1 > prof.mu[a] for a in s):
                    continue
                for a in s:
                    counts[a] += 1
                chosen.append(s)
                hit = rec(i + 1, used + size)
                chosen.pop()
                for a in s:
                    counts[a] -= 1
                if hit is not None:
                    return hit
            return None

        hit = rec(0, 0)
        if hit is not None:
            return hit
    return None


def check_minimizing(seq: SetSequence, ell: int, budget: Budget = DEFAULT_BUDGET,
                     max_union: int = 12, node_budget: int = 200_000) -> MinimizingWitness | None:
    """Find B_1..B_l witnessing that the sequence is (l, g)-minimizing, or return None.

    The candidate A_j^2 from the witness construction is tried first. A linked
    chain multiplies to at most sum mu - l + 1 elements, so when Pi^l is larger
    no witness exists; otherwise a budgeted exhaustive search follows.
    """
    if not 2 <= ell <= seq.m:
        raise ValueError("minimizing sequences need 2 <= l <= m")
    prof = multiplicity_profile(seq, ell)
    pi = generalized_product_set(seq, ell, budget)
    if len(pi) > prof.total - ell + 1:
        return None
    ws = build_witness_sets(seq, ell)
    B = ws.A2
    if all(len(b) >= 2 for b in B):
        types = find_linked_types(B)
        if types is not None and not minimizing_violations(seq, ell, B, types, budget):
            return MinimizingWitness(types[0].g, list(B), types)
    return _fallback_search(seq, ell, prof, pi, max_union, node_budget, budget)


# ---------------------------------------------------------------------------
# reports

def _cap(model: GroupModel, ell: int):
    """Largest |Sigma^l| allowed by the size hypotheses of the finite inverse theorems."""
    pg = smallest_subgroup_order(model)
    if pg == math.inf:
        return math.inf
    return pg - 2 if ell == 2 else pg - 1


@dataclass
class ExtremalReport:
    equality: bool
    size: int
    bound: int
    mu_total: int
    applicable_theorems: list = field(default_factory=list)
    witnesses: dict = field(default_factory=dict)
    hypothesis_failures: list = field(default_factory=list)
    conclusions: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"equality": self.equality, "size": self.size, "bound": self.bound, "mu_total": self.mu_total,
                "applicable_theorems": self.applicable_theorems, "witnesses": self.witnesses,
                "hypothesis_failures": self.hypothesis_failures, "conclusions": self.conclusions,
                "violations": self.violations}


def _family_json(fam):
    if fam is None:
        return None
    g, types = fam
    model = types[0].model
    return {"g": model.element_to_json(g), "types": [t.to_json() for t in types]}


def classify_extremal(seq: SetSequence, ell: int, budget: Budget = DEFAULT_BUDGET,
                      search: bool = True) -> ExtremalReport:
    """Decide equality in the mu-bound and check the structure the inverse theorems predict."""
    model = seq.model
    m = seq.m
    prof = multiplicity_profile(seq, ell)
    pi = generalized_product_set(seq, ell, budget)
    bound = prof.total - ell + 1
    rep = ExtremalReport(len(pi) == bound, len(pi), bound, prof.total)
    fails = rep.hypothesis_failures
    if not 2 <= ell <= m:
        fails.append("needs 2 <= l <= m")
    if any(len(s) < 2 for s in seq.sets):
        fails.append("needs |A_i| >= 2 for every i")
    cap = _cap(model, ell)
    if len(pi) > cap:
        fails.append(f"|Sigma^l| = {len(pi)} exceeds the size cap {cap} of the finite inverse theorems")
    base_ok = not fails
    two_level = len([a for a, v in prof.mu.items() if v >= 2])

    if base_ok:
        if model.is_torsion_free:
            rep.applicable_theorems.append("torsion-free inverse (minimizing <=> equality)")
        elif model.kind == "cyclic" and is_prime(model.n):
            if ell < m:
                rep.applicable_theorems.append("Z_p inverse (minimizing <=> equality)")
            else:
                fails.append("the Z_p inverse theorem needs l < m")
        else:
            if ell < m:
                rep.applicable_theorems.append("abelian inverse (minimizing <=> equality)")
            else:
                fails.append("the abelian inverse theorem needs l < m")
    applicable = bool(rep.applicable_theorems)

    if applicable and search:
        try:
            w = check_minimizing(seq, ell, budget)
        except BudgetExceeded as exc:
            w = None
            rep.witnesses["minimizing_search"] = f"budget exceeded: {exc}"
        rep.conclusions["minimizing"] = w is not None
        if w is not None:
            rep.witnesses["minimizing"] = w.to_json()
        if (w is not None) != rep.equality:
            rep.violations.append("equality and the existence of a minimizing witness disagree")

    if applicable and rep.equality:
        M = prof.M
        family = [s | M for s in seq.sets]
        fam = same_ratio_family(family)
        each_ap = all(detect_progressions(s) for s in family)
        rep.witnesses["A_i_union_M"] = _family_json(fam)
        rep.conclusions["A_i_union_M_same_ratio"] = fam is not None
        rep.conclusions["A_i_union_M_progressions"] = each_ap
        finite_two = model.is_finite and ell == 2
        if finite_two:
            if not each_ap:
                rep.violations.append("some A_i | M is not a progression")
        elif fam is None:
            rep.violations.append("the sets A_i | M are not progressions with one ratio")
        if model.is_abelian and ell < m and not finite_two:
            whole = same_ratio_family(family + [seq.union])
            rep.conclusions["A_progression"] = bool(detect_progressions(seq.union))
            rep.conclusions["A_same_ratio"] = whole is not None
            if whole is None:
                rep.violations.append("A is not a progression with the family's ratio")

    # chain conclusion: mu reaches l somewhere and at least two elements have mu >= 2
    if applicable and rep.equality and ell < m and len(prof.M) > 0 and two_level >= 2:
        chain = build_prime_chain(seq, ell)
        k = 0
        while k < ell and len(chain[k]) >= 2:
            k += 1
        rep.applicable_theorems.append("prime chain (A'_j linked for j <= k)")
        types = find_linked_types(chain[:k]) if k >= 1 else None
        if model.is_abelian and types is None and k >= 1:
            fam = same_ratio_family(chain[:k])
            types = fam[1] if fam is not None else None
        rep.conclusions["prime_chain_k"] = k
        rep.conclusions["prime_chain_linked"] = types is not None
        if types is not None:
            rep.witnesses["prime_chain"] = [t.to_json() for t in types]
        else:
            rep.violations.append("the A'_j chain is not a linked family of progressions")

    # sparse nonexistence: torsion-free abelian, l < m, at most one element with mu >= 2
    if model.is_torsion_free and model.is_abelian and 2 <= ell < m and base_ok and two_level <= 1:
        rep.applicable_theorems.append("sparse nonexistence (no equality when |{mu >= 2}| <= 1)")
        if rep.equality:
            rep.violations.append("equality with at most one element of multiplicity >= 2")
    return rep


@dataclass
class VosperReport:
    equality: bool
    size: int
    expected: int
    hypothesis_met: bool
    structural: bool
    witness: dict | None = None
    hypothesis_failures: list = field(default_factory=list)
    applicable_theorems: list = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.hypothesis_met or self.equality == self.structural

    def to_json(self) -> dict:
        return {"equality": self.equality, "size": self.size, "expected": self.expected,
                "hypothesis_met": self.hypothesis_met, "structural": self.structural,
                "consistent": self.consistent, "witnesses": self.witness,
                "applicable_theorems": self.applicable_theorems,
                "hypothesis_failures": self.hypothesis_failures}


def vosper_classify(*sets) -> VosperReport:
    """Plain sumset A_1 + ... + A_l: equality in |sum| >= sum |A_i| - l + 1 versus common-difference APs.

    Size caps: l = 2 needs |sum| <= p(G) - 2, l >= 3 needs |sum| < p(G);
    torsion-free models have no cap.
    """
    if len(sets) == 1 and not isinstance(sets[0], GSet):
        sets = tuple(sets[0])
    model = sets[0].model
    if not model.is_abelian:
        raise ValueError("vosper_classify works in abelian models; use brailovsky_classify for words")
    ell = len(sets)
    S = sumset(model, *sets)
    expected = sum(len(s) for s in sets) - ell + 1
    fails = []
    if ell < 2:
        fails.append("needs at least two sets")
    if any(len(s) < 2 for s in sets):
        fails.append("needs |A_i| >= 2")
    cap = _cap(model, ell)
    if len(S) > cap:
        fails.append(f"|sum| = {len(S)} exceeds the cap {cap}")
    fam = same_ratio_family(sets)
    rep = VosperReport(len(S) == expected, len(S), expected, not fails, fam is not None,
                       _family_json(fam), fails)
    if not fails:
        if model.is_torsion_free:
            rep.applicable_theorems.append("torsion-free equality <=> linked progressions")
        elif model.kind == "cyclic" and is_prime(model.n):
            rep.applicable_theorems.append("Vosper-type (Z_p)")
        else:
            rep.applicable_theorems.append("Kemperman-type (abelian, p(G) cap)")
    return rep


def brailovsky_classify(sets) -> list | None:
    """Linked types realizing A_1, ..., A_l when |A_1 ... A_l| = sum |A_i| - l + 1 (torsion-free)."""
    sets = list(sets)
    model = sets[0].model
    if not model.is_torsion_free:
        raise ValueError("brailovsky_classify is stated for torsion-free models")
    if any(len(s) < 2 for s in sets):
        raise ValueError("needs |A_i| >= 2")
    prod = _product(model, sets)
    if len(prod) != sum(len(s) for s in sets) - len(sets) + 1:
        return None
    return find_linked_types(sets)


# ---------------------------------------------------------------------------
# scans

def _universe_masks(lo: int, hi: int, min_size: int):
    width = hi - lo + 1
    return [mask for mask in range(1 << width) if bin(mask).count("1") >= min_size]


def _mask_to_set(model, mask, lo):
    return GSet(model, [lo + i for i in range(mask.bit_length()) if mask >> i & 1], canonical=True)


def no_sparse_extremal_scan(m: int = 3, ell: int = 2, universe=(0, 6), min_size: int = 2,
                            stats: dict | None = None) -> list:
    """Every Z-instance inside ``universe`` with |A_i| >= 2 and |{mu >= 2}| <= 1 that attains equality.

    The nonexistence theorem predicts an empty list. Sets are scanned as bit
    masks, pruning any prefix that already has two elements of multiplicity >= 2.
    """
    from .groups import Integers
    if not 2 <= ell < m:
        raise ValueError("the scan needs 2 <= l < m")
    model = Integers()
    lo, hi = universe
    masks = _universe_masks(lo, hi, min_size)
    violations = []
    scanned = 0

    def rec(prefix, seen1, seen2):
        nonlocal scanned
        if len(prefix) == m:
            scanned += 1
            seq = SetSequence(model, [_mask_to_set(model, x, lo) for x in prefix])
            prof = multiplicity_profile(seq, ell)
            size = len(generalized_product_set(seq, ell))
            if size == prof.total - ell + 1:
                violations.append(seq.to_json())
            return
        for x in masks:
            two = seen2 | (seen1 & x)
            if two & (two - 1):
                continue
            rec(prefix + [x], seen1 | x, two)

    rec([], 0, 0)
    if stats is not None:
        stats["scanned"] = scanned
    return violations
