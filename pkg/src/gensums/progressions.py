"""Geometric (arithmetic) progressions of type (a, g, b) and their algebra.

A set S is a progression of type (a, g, b) when S = {a g^j b : 0 <= j < |S|}.
Every type has the normal form (ab, b^-1 g b, 1), which is unchanged by the
shift (a, g, b) -> (ac, c^-1 g c, c^-1 b). Detection therefore works with
normal forms (c, h, 1): c is the first term and h = c^-1 * (second term).
"""
from __future__ import annotations

from dataclasses import dataclass

from .groups import GSet, GroupModel, cyclic_reduction, word_from_letters, word_letters


class ProgressionCollision(ValueError):
    """Two exponents give the same element, so the type does not realize a set of that length."""


@dataclass(frozen=True)
class ProgressionType:
    model: GroupModel
    a: object
    g: object
    b: object
    length: int

    def __post_init__(self):
        if self.length < 1:
            raise ValueError("a progression has length >= 1")

    def term(self, j: int):
        m = self.model
        return m.op(m.op(self.a, m.pow(self.g, j)), self.b)

    def terms(self) -> list:
        m = self.model
        out = []
        x = m.op(self.a, self.b)
        step = m.op(m.op(m.inverse(self.b), self.g), self.b)
        for _ in range(self.length):
            out.append(x)
            x = m.op(x, step)
        return out

    def realize(self) -> GSet:
        if self.length >= 2 and self.g == self.model.identity:
            raise ProgressionCollision("ratio is the identity")
        ts = self.terms()
        s = GSet(self.model, ts, canonical=True)
        if len(s) != self.length:
            raise ProgressionCollision(f"type {self} repeats an element")
        return s

    def normal_form(self) -> "ProgressionType":
        m = self.model
        return ProgressionType(m, m.op(self.a, self.b), m.op(m.op(m.inverse(self.b), self.g), self.b),
                               m.identity, self.length)

    def reversed(self) -> "ProgressionType":
        """The same set read backwards: type (a, g^-1, g^(n-1) b)."""
        m = self.model
        return ProgressionType(m, self.a, m.inverse(self.g), m.op(m.pow(self.g, self.length - 1), self.b),
                               self.length)

    def shifted(self, c) -> "ProgressionType":
        """The same set as type (ac, c^-1 g c, c^-1 b)."""
        m = self.model
        ci = m.inverse(c)
        return ProgressionType(m, m.op(self.a, c), m.op(m.op(ci, self.g), c), m.op(ci, self.b), self.length)

    def to_json(self) -> dict:
        m = self.model
        return {"a": m.element_to_json(self.a), "g": m.element_to_json(self.g),
                "b": m.element_to_json(self.b), "length": self.length}

    def __str__(self):
        f = self.model.format
        return f"({f(self.a)}, {f(self.g)}, {f(self.b)})x{self.length}"


# ---------------------------------------------------------------------------
# ratio conventions

def preferred_ratio(model: GroupModel, h) -> bool:
    """True for the orientation reported first (Z: d > 0; words: positive leading exponent)."""
    if model.kind == "integers":
        return h > 0
    if model.kind == "free":
        return bool(h) and h[0][1] > 0
    if model.kind == "cyclic":
        return h <= model.inverse(h)
    return model.index(h) <= model.index(model.inverse(h))


def _ratio_sort_key(model, h):
    return (not preferred_ratio(model, h), model.key(h))


def default_generator(model: GroupModel):
    if model.kind == "integers":
        return 1
    if model.kind == "cyclic":
        return 1 % model.n
    if model.kind == "abelian":
        return (0,) * (len(model.moduli) - 1) + (1,)
    return ((0, 1),)


def is_progression_with(S: GSet, c, h) -> bool:
    model = S.model
    x = c
    seen = set()
    for _ in range(len(S)):
        if x not in S or x in seen:
            return False
        seen.add(x)
        x = model.op(x, h)
    return True


def normal_forms(S: GSet) -> list:
    """Every (c, h) with S = {c h^j : 0 <= j < |S|}, for |S| >= 2."""
    model = S.model
    if len(S) < 2:
        raise ValueError("normal forms are enumerated for |S| >= 2")
    out = []
    for c in S:
        ci = model.inverse(c)
        for d in S:
            if d == c:
                continue
            h = model.op(ci, d)
            if is_progression_with(S, c, h):
                out.append((c, h))
    return out


def detect_progressions(S: GSet) -> list:
    """All ratios for which S is a progression, each with one witness of type (c, h, 1).

    The witness for a ratio uses the smallest possible first term c. A set of
    size 1 is reported with the default generator of the model and its inverse.
    """
    model = S.model
    n = len(S)
    if n == 0:
        return []
    e = model.identity
    if n == 1:
        g = default_generator(model)
        ratios = [g] if g == model.inverse(g) else [g, model.inverse(g)]
        if model.is_finite and model.order == 1:
            ratios = [e]
        return [ProgressionType(model, S.min(), h, e, 1) for h in ratios]
    best: dict = {}
    for c, h in normal_forms(S):
        if h not in best or model.key(c) < model.key(best[h]):
            best[h] = c
    ratios = sorted(best, key=lambda h: _ratio_sort_key(model, h))
    return [ProgressionType(model, best[h], h, e, n) for h in ratios]


def is_progression(S: GSet) -> bool:
    return bool(detect_progressions(S))


def as_progression(S: GSet, g) -> ProgressionType | None:
    """A type (c, g, 1) realizing S with exactly the ratio g, if one exists."""
    model = S.model
    if not len(S):
        return None
    if len(S) == 1:
        return ProgressionType(model, S.min(), g, model.identity, 1)
    if g == model.identity:
        return None
    for c in S:
        if is_progression_with(S, c, g):
            return ProgressionType(model, c, g, model.identity, len(S))
    return None


# ---------------------------------------------------------------------------
# conjugacy

def conjugator(model: GroupModel, g, h):
    """Some beta with beta^-1 g beta = h, or None when g and h are not conjugate."""
    if model.kind != "free":
        return model.identity if g == h else None
    c1, w1 = cyclic_reduction(g)
    c2, w2 = cyclic_reduction(h)
    l1, l2 = word_letters(c1), word_letters(c2)
    if len(l1) != len(l2):
        return None
    n = len(l1)
    if n == 0:
        return model.identity
    for k in range(n):
        # c1 = u v with u = l1[:k]; v u = u^-1 c1 u
        if l1[k:] + l1[:k] == l2:
            u = word_from_letters(l1[:k])
            return model.op(model.op(w1, u), model.inverse(w2))
    return None


def are_conjugate(model, g, h) -> bool:
    return conjugator(model, g, h) is not None


def ratio_representative(model: GroupModel, h):
    """A canonical member of the conjugacy class of h (the class itself for abelian models)."""
    if model.kind != "free":
        return h
    core, _ = cyclic_reduction(h)
    letters = word_letters(core)
    rots = [word_from_letters(letters[k:] + letters[:k]) for k in range(len(letters))] or [core]
    return min(rots, key=model.key)


# ---------------------------------------------------------------------------
# families and linked chains

def with_ratio(S: GSet, g) -> ProgressionType | None:
    """Express S as a progression of type (alpha, g, beta), if S has a ratio conjugate to g."""
    model = S.model
    if len(S) == 1:
        return ProgressionType(model, S.min(), g, model.identity, 1)
    for c, h in normal_forms(S):
        beta = conjugator(model, g, h)
        if beta is not None:
            return ProgressionType(model, model.op(c, model.inverse(beta)), g, beta, len(S))
    return None


def same_ratio_family(sets) -> tuple | None:
    """A single ratio g with every set a progression of type (., g, .), plus per-set types."""
    sets = list(sets)
    if not sets:
        return None
    model = sets[0].model
    big = [s for s in sets if len(s) >= 2]
    if not big:
        g = default_generator(model)
        return g, [with_ratio(s, g) for s in sets]
    candidates = []
    for c, h in normal_forms(big[0]):
        r = ratio_representative(model, h)
        if r not in candidates:
            candidates.append(r)
    candidates.sort(key=lambda h: _ratio_sort_key(model, h))
    for g in candidates:
        types = [with_ratio(s, g) for s in sets]
        if all(t is not None for t in types):
            return g, types
    return None


def linked_chain_check(types) -> bool:
    """True iff all types share one ratio and alpha_{i+1} = beta_i^-1 for every i."""
    types = list(types)
    if not types:
        raise ValueError("empty chain")
    model = types[0].model
    g = types[0].g
    for t in types:
        if t.model != model or t.g != g:
            raise ValueError("types in a chain must share the same ratio")
    return all(types[i + 1].a == model.inverse(types[i].b) for i in range(len(types) - 1))


def chain_product(types) -> GSet:
    """{alpha_1 g^j beta_l : 0 <= j <= sum(len) - l}, the product of a linked chain."""
    types = list(types)
    model = types[0].model
    top = sum(t.length for t in types) - len(types)
    return ProgressionType(model, types[0].a, types[0].g, types[-1].b, top + 1).realize()


def find_linked_types(sets) -> list | None:
    """Linked types (alpha_i, g, beta_i) realizing each set (|set| >= 2), or None.

    With normal forms (c_i, h_i) the chain beta_1 = w, beta_{i+1} = beta_i c_{i+1}
    links iff h_{i+1} = c_{i+1}^-1 h_i c_{i+1}; the free choice of w only
    conjugates g, and is used to make g a cyclically reduced word.
    """
    sets = list(sets)
    if not sets or any(len(s) < 2 for s in sets):
        return None
    model = sets[0].model
    forms = []
    for s in sets:
        nf = normal_forms(s)
        nf.sort(key=lambda ch: (_ratio_sort_key(model, ch[1]), model.key(ch[0])))
        forms.append(nf)
    chosen: list = []

    def dfs(i):
        if i == len(sets):
            return True
        for c, h in forms[i]:
            if i:
                hp = chosen[-1][1]
                if model.op(model.op(model.inverse(c), hp), c) != h:
                    continue
            chosen.append((c, h))
            if dfs(i + 1):
                return True
            chosen.pop()
        return False

    if not dfs(0):
        return None
    c1, h1 = chosen[0]
    g = ratio_representative(model, h1)
    beta = conjugator(model, g, h1)
    types = []
    for i, (c, h) in enumerate(chosen):
        if i:
            beta = model.op(beta, c)
        types.append(ProgressionType(model, model.op(c, model.inverse(beta)), g, beta, len(sets[i])))
    return types


def union_progression(A: GSet, B: GSet, g) -> ProgressionType | None:
    """Type with ratio g for A | B when A, B are progressions with ratio g that meet (abelian)."""
    if not A.model.is_abelian:
        raise ValueError("union_progression is stated for abelian models")
    if not (A.members & B.members):
        return None
    if as_progression(A, g) is None or as_progression(B, g) is None:
        return None
    return as_progression(A | B, g)


def subprogression_form(A: GSet, whole: ProgressionType) -> tuple | None:
    """(p, r) with A = {alpha g^s beta : s = r, r + p, ..., r + (|A|-1)p} inside `whole`."""
    idx = {x: j for j, x in enumerate(whole.terms())}
    if not len(A) or any(x not in idx for x in A):
        return None
    ks = sorted(idx[x] for x in A)
    if len(ks) == 1:
        return 1, ks[0]
    p = ks[1] - ks[0]
    if any(ks[i + 1] - ks[i] != p for i in range(len(ks) - 1)):
        return None
    return p, ks[0]


def lemma31_relation(t1: ProgressionType, t2: ProgressionType) -> tuple | None:
    """Relate two types (a, g, b), (alpha, g1, beta) of the same set in a torsion-free group.

    The conjugator is forced: c = alpha^-1 a. Returns (1, c) when
    b = c^-1 beta and g = c^-1 g1 c, (2, c) when b = c^-1 g1^(m-1) beta and
    g = c^-1 g1^-1 c, and None if neither relation holds.
    """
    model = t1.model
    c = model.op(model.inverse(t2.a), t1.a)
    ci = model.inverse(c)
    m = t1.length
    if t1.b == model.op(ci, t2.b) and t1.g == model.op(model.op(ci, t2.g), c):
        return 1, c
    if (t1.b == model.op(ci, model.op(model.pow(t2.g, m - 1), t2.b))
            and t1.g == model.op(model.op(ci, model.inverse(t2.g)), c)):
        return 2, c
    return None
