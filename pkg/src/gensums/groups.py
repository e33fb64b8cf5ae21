"""Computable group models, canonical elements and finite sets of elements.

Four models are supported:

* ``Integers()``            -- the additive group Z (torsion-free, abelian)
* ``Cyclic(n)``             -- Z/nZ, elements are residues ``0 <= x < n``
* ``FiniteAbelian(moduli)`` -- Z/n1 x ... x Z/nk, elements are residue tuples
* ``Free(rank)``            -- the free group on ``rank`` generators; elements are
  reduced words, stored as tuples of ``(generator, exponent)`` syllables

All the models are written with one group law ``op``; for the abelian models it
is addition, for free groups it is concatenation followed by free reduction.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from itertools import product

import numpy as np

INFINITY = math.inf

GENERATOR_NAMES = "xyzwuvst"


class ModelMismatch(ValueError):
    pass


class InfiniteGroupError(ValueError):
    pass


# ---------------------------------------------------------------------------
# free group words

def reduce_word(syllables) -> tuple:
    """Freely reduce a list of ``(generator, exponent)`` syllables."""
    out: list = []
    for gen, exp in syllables:
        if exp == 0:
            continue
        if out and out[-1][0] == gen:
            e = out[-1][1] + exp
            out.pop()
            if e:
                out.append((gen, e))
        else:
            out.append((gen, exp))
    return tuple(out)


def word_mul(u: tuple, v: tuple) -> tuple:
    if not u:
        return v
    if not v:
        return u
    out = list(u)
    i = 0
    while i < len(v):
        gen, exp = v[i]
        if out and out[-1][0] == gen:
            e = out[-1][1] + exp
            out.pop()
            if e:
                out.append((gen, e))
                i += 1
                break
            i += 1
            continue
        break
    out.extend(v[i:])
    return tuple(out)


def word_inv(u: tuple) -> tuple:
    return tuple((g, -e) for g, e in reversed(u))


def word_length(u: tuple) -> int:
    return sum(abs(e) for _, e in u)


def word_letters(u: tuple) -> list:
    """Expand a word into single letters ``(generator, +-1)``."""
    out = []
    for g, e in u:
        s = 1 if e > 0 else -1
        out.extend([(g, s)] * abs(e))
    return out


def word_from_letters(letters) -> tuple:
    return reduce_word(letters)


def cyclic_reduction(u: tuple) -> tuple[tuple, tuple]:
    """Return ``(core, w)`` with ``u = w core w^-1`` and ``core`` cyclically reduced."""
    letters = word_letters(u)
    i, j = 0, len(letters) - 1
    while i < j and letters[i][0] == letters[j][0] and letters[i][1] == -letters[j][1]:
        i += 1
        j -= 1
    return word_from_letters(letters[i:j + 1]), word_from_letters(letters[:i])


# ---------------------------------------------------------------------------
# models

@dataclass(frozen=True)
class GroupModel:
    kind: str
    n: int = 0
    moduli: tuple = ()
    rank: int = 0

    def __post_init__(self):
        if self.kind == "cyclic":
            if self.n < 1:
                raise ValueError("Cyclic(n) requires n >= 1")
        elif self.kind == "abelian":
            if not self.moduli or any(q < 2 for q in self.moduli):
                raise ValueError("FiniteAbelian moduli must all be >= 2")
        elif self.kind == "free":
            if self.rank < 1:
                raise ValueError("Free(rank) requires rank >= 1")
        elif self.kind != "integers":
            raise ValueError(f"unknown group kind {self.kind!r}")

    # -- classification -----------------------------------------------------
    @property
    def is_finite(self) -> bool:
        return self.kind in ("cyclic", "abelian")

    @property
    def is_abelian(self) -> bool:
        return self.kind != "free" or self.rank == 1

    @property
    def is_torsion_free(self) -> bool:
        return self.kind in ("integers", "free")

    @property
    def order(self):
        if self.kind == "cyclic":
            return self.n
        if self.kind == "abelian":
            return math.prod(self.moduli)
        return INFINITY

    @property
    def radix(self) -> tuple:
        """Moduli used for the mixed-radix index of a finite model."""
        if self.kind == "cyclic":
            return (self.n,)
        if self.kind == "abelian":
            return self.moduli
        raise InfiniteGroupError(f"{self} is infinite")

    def __str__(self):
        if self.kind == "integers":
            return "Z"
        if self.kind == "cyclic":
            return f"Z{self.n}"
        if self.kind == "abelian":
            return "x".join(f"Z{q}" for q in self.moduli)
        return f"F{self.rank}"

    # -- elements -----------------------------------------------------------
    @property
    def identity(self):
        if self.kind in ("integers", "cyclic"):
            return 0
        if self.kind == "abelian":
            return (0,) * len(self.moduli)
        return ()

    def canonical(self, x):
        """Validate ``x`` and bring it into canonical form."""
        k = self.kind
        if k == "integers":
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise TypeError(f"not an integer: {x!r}")
            return int(x)
        if k == "cyclic":
            if isinstance(x, bool) or not isinstance(x, (int, np.integer)):
                raise TypeError(f"not a residue: {x!r}")
            return int(x) % self.n
        if k == "abelian":
            x = tuple(x)
            if len(x) != len(self.moduli):
                raise ModelMismatch(f"{x!r} has wrong length for {self}")
            return tuple(int(a) % q for a, q in zip(x, self.moduli))
        syl = []
        for s in x:
            g, e = s
            g, e = int(g), int(e)
            if not 0 <= g < self.rank:
                raise ModelMismatch(f"generator {g} out of range for {self}")
            syl.append((g, e))
        return reduce_word(syl)

    def op(self, x, y):
        k = self.kind
        if k == "integers":
            return x + y
        if k == "cyclic":
            return (x + y) % self.n
        if k == "abelian":
            return tuple((a + b) % q for a, b, q in zip(x, y, self.moduli))
        return word_mul(x, y)

    def inverse(self, x):
        k = self.kind
        if k == "integers":
            return -x
        if k == "cyclic":
            return -x % self.n
        if k == "abelian":
            return tuple(-a % q for a, q in zip(x, self.moduli))
        return word_inv(x)

    def pow(self, x, e: int):
        k = self.kind
        if k == "integers":
            return x * e
        if k == "cyclic":
            return x * e % self.n
        if k == "abelian":
            return tuple(a * e % q for a, q in zip(x, self.moduli))
        if e < 0:
            x, e = word_inv(x), -e
        if len(x) == 1:
            return ((x[0][0], x[0][1] * e),) if e else ()
        result: tuple = ()
        base = x
        while e:
            if e & 1:
                result = word_mul(result, base)
            base = word_mul(base, base)
            e >>= 1
        return result

    def product(self, *xs):
        return reduce(self.op, xs, self.identity)

    def key(self, x):
        """Sort key implementing the canonical total order."""
        if self.kind == "free":
            return (word_length(x), x)
        return x

    def element_order(self, x):
        if not self.is_finite:
            return 1 if x == self.identity else INFINITY
        if self.kind == "cyclic":
            return self.n // math.gcd(x, self.n)
        return math.lcm(*(q // math.gcd(a, q) for a, q in zip(x, self.moduli)))

    # -- finite machinery ---------------------------------------------------
    def index(self, x) -> int:
        if self.kind == "cyclic":
            return x
        i = 0
        for a, q in zip(x, self.radix):
            i = i * q + a
        return i

    def from_index(self, i: int):
        if self.kind == "cyclic":
            return i
        digits = []
        for q in reversed(self.radix):
            i, a = divmod(i, q)
            digits.append(a)
        return tuple(reversed(digits))

    def elements(self) -> list:
        if self.kind == "cyclic":
            return list(range(self.n))
        if self.kind == "abelian":
            return list(product(*(range(q) for q in self.moduli)))
        raise InfiniteGroupError(f"cannot enumerate the infinite group {self}")

    # -- text / json --------------------------------------------------------
    def format(self, x) -> str:
        if self.kind == "free":
            if not x:
                return "1"
            names = GENERATOR_NAMES if self.rank <= len(GENERATOR_NAMES) else None
            parts = []
            for g, e in x:
                name = names[g] if names else f"g{g}"
                parts.append(name if e == 1 else f"{name}^{e}")
            return " ".join(parts)
        if self.kind == "abelian":
            return "(" + ",".join(map(str, x)) + ")"
        return str(x)

    def parse(self, text):
        """Parse an element from text (``"x y^-2"``, ``"3"``, ``"(1,0)"``) or JSON data."""
        if not isinstance(text, str):
            return self.element_from_json(text)
        s = text.strip()
        if self.kind in ("integers", "cyclic"):
            return self.canonical(int(s))
        if self.kind == "abelian":
            return self.canonical(int(t) for t in s.strip("()").split(","))
        if s in ("", "1", "e"):
            return ()
        syl = []
        pos = 0
        pattern = re.compile(r"\s*(g\d+|[a-z])(?:\^(-?\d+))?")
        while pos < len(s):
            mt = pattern.match(s, pos)
            if not mt:
                raise ValueError(f"cannot parse word {text!r}")
            name, exp = mt.group(1), mt.group(2)
            gen = int(name[1:]) if name.startswith("g") and len(name) > 1 else GENERATOR_NAMES.find(name)
            if gen < 0:
                raise ValueError(f"unknown generator {name!r}")
            syl.append((gen, int(exp) if exp is not None else 1))
            pos = mt.end()
            while pos < len(s) and s[pos].isspace():
                pos += 1
        return self.canonical(syl)

    def element_to_json(self, x):
        if self.kind == "abelian":
            return list(x)
        if self.kind == "free":
            return [[g, e] for g, e in x]
        return x

    def element_from_json(self, data):
        if self.kind == "free":
            return self.canonical(tuple(s) for s in data)
        return self.canonical(data)

    def to_json(self) -> dict:
        if self.kind == "integers":
            return {"kind": "integers"}
        if self.kind == "cyclic":
            return {"kind": "cyclic", "n": self.n}
        if self.kind == "abelian":
            return {"kind": "abelian", "moduli": list(self.moduli)}
        return {"kind": "free", "rank": self.rank}

    @classmethod
    def from_json(cls, data) -> "GroupModel":
        if isinstance(data, str):
            return parse_model(data)
        kind = data.get("kind")
        if kind == "integers":
            return Integers()
        if kind == "cyclic":
            return Cyclic(int(data["n"]))
        if kind == "abelian":
            return FiniteAbelian(data["moduli"])
        if kind == "free":
            return Free(int(data["rank"]))
        raise ValueError(f"unknown model kind {kind!r}")


def Integers() -> GroupModel:
    return GroupModel("integers")


def Cyclic(n: int) -> GroupModel:
    return GroupModel("cyclic", n=int(n))


def FiniteAbelian(moduli) -> GroupModel:
    moduli = tuple(int(q) for q in moduli)
    return GroupModel("abelian", moduli=moduli)


def Free(rank: int) -> GroupModel:
    return GroupModel("free", rank=int(rank))


_MODEL_RE = re.compile(r"^(?:Z(\d+)?(?:x.*)?|F(\d+))$")


def parse_model(text: str) -> GroupModel:
    """Parse a shorthand like ``Z``, ``Z7``, ``Z2xZ4`` or ``F2`` (JSON also accepted)."""
    s = text.strip()
    if s.startswith("{"):
        import json
        return GroupModel.from_json(json.loads(s))
    if s == "Z":
        return Integers()
    if s.startswith("F") and s[1:].isdigit():
        return Free(int(s[1:]))
    parts = s.split("x")
    if all(p.startswith("Z") and p[1:].isdigit() for p in parts):
        mods = [int(p[1:]) for p in parts]
        return Cyclic(mods[0]) if len(mods) == 1 else FiniteAbelian(mods)
    raise ValueError(f"cannot parse group model {text!r}")


# ---------------------------------------------------------------------------
# the free-standing group operations

def _check(model, *xs):
    for x in xs:
        try:
            if model.canonical(x) != x:
                raise ModelMismatch(f"{x!r} is not a canonical element of {model}")
        except (TypeError, ValueError) as exc:
            raise ModelMismatch(str(exc)) from exc


def op(model: GroupModel, x, y):
    _check(model, x, y)
    return model.op(x, y)


def inverse(model: GroupModel, x):
    _check(model, x)
    return model.inverse(x)


def power(model: GroupModel, x, e: int):
    _check(model, x)
    return model.pow(x, e)


def smallest_subgroup_order(model: GroupModel):
    """Order of the smallest nontrivial subgroup, or ``inf`` if there is none."""
    if not model.is_finite:
        return INFINITY
    n = model.order
    if n == 1:
        return INFINITY
    p = 2
    while p * p <= n:
        if n % p == 0:
            return p
        p += 1
    return n


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


# ---------------------------------------------------------------------------
# finite sets

class GSet:
    """An immutable finite set of canonical elements of one group model.

    Iteration follows the canonical total order of the model, so two equal
    sets always serialize identically.
    """

    __slots__ = ("model", "elements", "_members", "_hash")

    def __init__(self, model: GroupModel, elements=(), *, canonical: bool = False):
        if not canonical:
            elements = [model.canonical(x) for x in elements]
        members = frozenset(elements)
        if model.kind == "free":
            ordered = tuple(sorted(members, key=model.key))
        else:
            ordered = tuple(sorted(members))
        self.model = model
        self.elements = ordered
        self._members = members
        self._hash = None

    @classmethod
    def parse(cls, model, items) -> "GSet":
        return cls(model, [model.parse(x) for x in items], canonical=True)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __contains__(self, x):
        return x in self._members

    def __eq__(self, other):
        if not isinstance(other, GSet):
            return NotImplemented
        return self.model == other.model and self._members == other._members

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.model, self._members))
        return self._hash

    def __repr__(self):
        body = ", ".join(self.model.format(x) for x in self.elements)
        return f"GSet[{self.model}]{{{body}}}"

    def __bool__(self):
        return bool(self.elements)

    @property
    def members(self) -> frozenset:
        return self._members

    def _same(self, other):
        if self.model != other.model:
            raise ModelMismatch(f"{self.model} != {other.model}")

    def __or__(self, other):
        self._same(other)
        return GSet(self.model, self._members | other._members, canonical=True)

    def __and__(self, other):
        self._same(other)
        return GSet(self.model, self._members & other._members, canonical=True)

    def __sub__(self, other):
        self._same(other)
        return GSet(self.model, self._members - other._members, canonical=True)

    def __le__(self, other):
        return self._members <= other._members

    def issubset(self, other) -> bool:
        return self._members <= other._members

    def left_translate(self, g) -> "GSet":
        op_ = self.model.op
        return GSet(self.model, (op_(g, x) for x in self.elements), canonical=True)

    def right_translate(self, g) -> "GSet":
        op_ = self.model.op
        return GSet(self.model, (op_(x, g) for x in self.elements), canonical=True)

    def min(self):
        return self.elements[0]

    def to_json(self) -> list:
        return [self.model.element_to_json(x) for x in self.elements]

    @classmethod
    def from_json(cls, model, data) -> "GSet":
        return cls(model, [model.element_from_json(x) for x in data], canonical=True)


def enumerate_group(model: GroupModel) -> GSet:
    return GSet(model, model.elements(), canonical=True)


def product_set(model: GroupModel, *sets) -> GSet:
    """The ordered product set ``A_1 A_2 ... A_k``."""
    current = {model.identity}
    op_ = model.op
    for s in sets:
        current = {op_(x, y) for x in current for y in s}
    return GSet(model, current, canonical=True)


def to_mask(s: GSet) -> np.ndarray:
    model = s.model
    mask = np.zeros(model.order, dtype=np.uint8)
    for x in s:
        mask[model.index(x)] = 1
    return mask


def from_mask(model: GroupModel, mask) -> GSet:
    idx = np.flatnonzero(mask)
    if model.kind == "cyclic":
        return GSet(model, idx.tolist(), canonical=True)
    return GSet(model, [model.from_index(int(i)) for i in idx], canonical=True)


def stabilizer(model: GroupModel, s: GSet) -> GSet:
    """Stab(S) = {g : gS = S}, by testing every group element.

    In the torsion-free models a nonempty finite set has trivial stabilizer,
    which is returned directly.
    """
    if not len(s):
        raise ValueError("stabilizer of the empty set")
    if not model.is_finite:
        return GSet(model, [model.identity], canonical=True)
    from . import kernels
    mask = kernels.stabilizer_mask(to_mask(s), np.asarray(model.radix, dtype=np.int64))
    return from_mask(model, mask)


def is_subgroup(model: GroupModel, h: GSet) -> bool:
    if model.identity not in h:
        return False
    return all(model.op(x, y) in h for x in h for y in h)


def cosets(model: GroupModel, h: GSet) -> list:
    """Partition of a finite group into the cosets of ``h``, in canonical order."""
    if not model.is_finite:
        raise InfiniteGroupError(f"cannot list cosets in the infinite group {model}")
    if not is_subgroup(model, h):
        raise ValueError("H is not a subgroup")
    seen: set = set()
    out = []
    for g in model.elements():
        if g in seen:
            continue
        c = h.left_translate(g)
        seen.update(c.members)
        out.append(c)
    return out
