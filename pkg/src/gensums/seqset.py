"""Sequences of finite sets, multiplicity profiles, and generalized sum/product sets."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

import numpy as np

from . import kernels
from .groups import GSet, GroupModel, ModelMismatch, from_mask, to_mask

# Above this window width a subset of Z is summed with Python sets instead of masks.
MAX_INT_WINDOW = 1 << 22


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Budget:
    max_sets: int = 14
    max_elements: int = 10 ** 6


DEFAULT_BUDGET = Budget()


class SetSequence:
    """An ordered sequence (A_1, ..., A_m) of finite sets in one group model."""

    def __init__(self, model: GroupModel, sets):
        sets = [s if isinstance(s, GSet) else GSet(model, s) for s in sets]
        if not sets:
            raise ValueError("a set sequence needs m >= 1")
        for s in sets:
            if s.model != model:
                raise ModelMismatch(f"set over {s.model} in a sequence over {model}")
        self.model = model
        self.sets = tuple(sets)
        inc: Counter = Counter()
        for s in sets:
            inc.update(s.members)
        self.incidence = dict(inc)
        self.union = GSet(model, inc.keys(), canonical=True)

    @property
    def m(self) -> int:
        return len(self.sets)

    def __len__(self):
        return len(self.sets)

    def __getitem__(self, i):
        return self.sets[i]

    def __iter__(self):
        return iter(self.sets)

    def __eq__(self, other):
        return isinstance(other, SetSequence) and self.model == other.model and self.sets == other.sets

    def __hash__(self):
        return hash((self.model, self.sets))

    def __repr__(self):
        return f"SetSequence[{self.model}]({', '.join(map(repr, self.sets))})"

    def permuted(self, order) -> "SetSequence":
        return SetSequence(self.model, [self.sets[i] for i in order])

    def to_json(self) -> list:
        return [s.to_json() for s in self.sets]

    @classmethod
    def from_json(cls, model, data) -> "SetSequence":
        return cls(model, [GSet.from_json(model, s) for s in data])


class ElementSequence:
    """A finite sequence of group elements (repetitions allowed)."""

    def __init__(self, model: GroupModel, terms):
        self.model = model
        self.terms = tuple(model.canonical(x) for x in terms)
        if not self.terms:
            raise ValueError("an element sequence needs m >= 1")
        self.rho = dict(Counter(self.terms))

    @property
    def m(self) -> int:
        return len(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"ElementSequence[{self.model}]({', '.join(self.model.format(x) for x in self.terms)})"

    @property
    def support(self) -> GSet:
        return GSet(self.model, self.rho.keys(), canonical=True)

    def as_set_sequence(self) -> SetSequence:
        return SetSequence(self.model, [GSet(self.model, [x], canonical=True) for x in self.terms])

    def to_json(self) -> list:
        return [self.model.element_to_json(x) for x in self.terms]

    @classmethod
    def from_json(cls, model, data) -> "ElementSequence":
        return cls(model, [model.element_from_json(x) for x in data])


@dataclass
class MultiplicityProfile:
    ell: int
    mu: dict
    eta: dict
    tau: dict
    M: GSet

    @property
    def total(self) -> int:
        return sum(self.mu.values())

    def level(self, j: int) -> GSet:
        """{a : mu(a) >= j}"""
        return GSet(self.M.model, [a for a, v in self.mu.items() if v >= j], canonical=True)


def _check_ell(m: int, ell: int):
    if not (isinstance(ell, int) and 1 <= ell <= m):
        raise ValueError(f"ell must satisfy 1 <= ell <= m = {m}, got {ell!r}")


def multiplicity_profile(seq: SetSequence, ell: int) -> MultiplicityProfile:
    _check_ell(seq.m, ell)
    head: Counter = Counter()
    tail: Counter = Counter()
    for j, s in enumerate(seq.sets):
        (head if j < ell else tail).update(s.members)
    mu, eta, tau = {}, {}, {}
    for a in seq.union:
        mu[a] = min(ell, seq.incidence[a])
        eta[a] = head[a]
        tau[a] = min(ell, tail[a])
    M = GSet(seq.model, [a for a in seq.union if mu[a] == ell], canonical=True)
    return MultiplicityProfile(ell, mu, eta, tau, M)


# ---------------------------------------------------------------------------
# sum / product sets

def _free1_to_int(w) -> int:
    return w[0][1] if w else 0


def _int_to_free1(e: int):
    return ((0, e),) if e else ()


def _int_gen_sumset(lists, ell) -> list:
    """Generalized sumset of integer lists, returned as a sorted list."""
    lo = min(min(s) for s in lists)
    hi = max(max(s) for s in lists)
    width = hi - lo + 1
    if width * ell > MAX_INT_WINDOW:
        return sorted(_python_gen_sumset(lists, ell, lambda x, y: x + y, 0))
    masks = np.zeros((len(lists), width), dtype=np.uint8)
    for i, s in enumerate(lists):
        masks[i, np.asarray(s, dtype=np.int64) - lo] = 1
    out = kernels.int_generalized_sumset(masks, ell)
    return (np.flatnonzero(out) + ell * lo).tolist()


def _python_gen_sumset(lists, ell, add, zero) -> set:
    dp = [set() for _ in range(ell + 1)]
    dp[0].add(zero)
    for i, s in enumerate(lists):
        for c in range(min(i + 1, ell), 0, -1):
            dp[c].update(add(x, y) for x in dp[c - 1] for y in s)
    return dp[ell]


def generalized_sumset(seq: SetSequence, ell: int) -> GSet:
    """Sigma^ell: all sums of ell elements taken from ell distinct sets (abelian models)."""
    _check_ell(seq.m, ell)
    model = seq.model
    if not model.is_abelian:
        raise ModelMismatch(f"{model} is not abelian; use generalized_product_set")
    if any(len(s) == 0 for s in seq.sets):
        # empty sets contribute nothing; if fewer than ell nonempty sets remain the result is empty
        nonempty = [s for s in seq.sets if len(s)]
        if len(nonempty) < ell:
            return GSet(model, (), canonical=True)
        return generalized_sumset(SetSequence(model, nonempty), ell)
    if model.kind == "integers":
        return GSet(model, _int_gen_sumset([s.elements for s in seq.sets], ell), canonical=True)
    if model.kind == "free":
        lists = [[_free1_to_int(w) for w in s] for s in seq.sets]
        return GSet(model, [_int_to_free1(e) for e in _int_gen_sumset(lists, ell)], canonical=True)
    masks = np.stack([to_mask(s) for s in seq.sets])
    return from_mask(model, kernels.finite_generalized_sumset(masks, ell, model.radix))


def sumset(model: GroupModel, *sets) -> GSet:
    """Plain sumset/product set A_1 A_2 ... A_k in the listed order."""
    if model.is_abelian and len(sets) >= 1:
        return generalized_sumset(SetSequence(model, sets), len(sets))
    from .groups import product_set
    return product_set(model, *sets)


def generalized_product_set(seq: SetSequence, ell: int, budget: Budget = DEFAULT_BUDGET) -> GSet:
    """Pi^ell: products of ell elements from ell distinct sets, in every order."""
    _check_ell(seq.m, ell)
    model = seq.model
    if model.is_abelian:
        return generalized_sumset(seq, ell)
    m = seq.m
    if m > budget.max_sets:
        raise BudgetExceeded(f"m = {m} exceeds the budget of {budget.max_sets} sets")
    op = model.op
    # level[mask] = products over all orderings of the sets in mask
    level = {0: {model.identity}}
    work = 0
    for _ in range(ell):
        nxt: dict = {}
        for mask, words in level.items():
            for i in range(m):
                bit = 1 << i
                if mask & bit:
                    continue
                target = nxt.setdefault(mask | bit, set())
                for w in words:
                    for y in seq.sets[i]:
                        target.add(op(w, y))
        work += sum(len(v) for v in nxt.values())
        if work > budget.max_elements:
            raise BudgetExceeded(f"more than {budget.max_elements} intermediate elements")
        level = nxt
    out: set = set()
    for words in level.values():
        out |= words
    return GSet(model, out, canonical=True)


def subsequence_sumset(a: ElementSequence, ell: int, budget: Budget = DEFAULT_BUDGET) -> GSet:
    """Sigma^ell(a) / Pi^ell(a) over ell distinct indices of the sequence."""
    _check_ell(a.m, ell)
    model = a.model
    if model.is_abelian:
        return generalized_sumset(a.as_set_sequence(), ell)
    # distinct indices only matter through the multiplicities rho
    values = sorted(a.rho, key=model.key)
    caps = tuple(min(ell, a.rho[v]) for v in values)
    op = model.op
    level = {tuple(0 for _ in values): {model.identity}}
    work = 0
    for _ in range(ell):
        nxt: dict = {}
        for used, words in level.items():
            for i, v in enumerate(values):
                if used[i] >= caps[i]:
                    continue
                key = used[:i] + (used[i] + 1,) + used[i + 1:]
                target = nxt.setdefault(key, set())
                target.update(op(w, v) for w in words)
        work += sum(len(s) for s in nxt.values())
        if work > budget.max_elements:
            raise BudgetExceeded(f"more than {budget.max_elements} intermediate elements")
        level = nxt
    out: set = set()
    for words in level.values():
        out |= words
    return GSet(model, out, canonical=True)
