"""Seeded fuzz suites and exhaustive scans that check the theorems on generated instances.

Each suite returns a SuiteResult with instance counts and a sorted list of
violations. A violation carries the (shrunk) instance as JSON so it can be fed
straight back to the CLI.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field

from .bounds import applicable_bounds, hamidoune_check
from .constructions import (ConstructionParams, check_construction, construct, enumerate_params,
                            expected_equality_value)
from .groups import Free, GroupModel, GSet, Integers, parse_model, product_set
from .instances import dumps, sequence_instance, sets_instance
from .extremal import (brailovsky_classify, build_witness_sets, classify_extremal, no_sparse_extremal_scan,
                      vosper_classify, witness_violations, _cap)
from .progressions import (ProgressionType, are_conjugate, chain_product, detect_progressions,
                           lemma31_relation, linked_chain_check)
from .seqset import BudgetExceeded, ElementSequence, SetSequence, generalized_sumset
from .subseq import subseq_inverse_check

MODEL_CLASSES = ("Z", "Z2", "Z3", "Z5", "Z7", "Z11", "Z13", "Z6", "Z2xZ4", "F2")

# documented fuzz sizes: m <= 6, |A_i| <= 5, Z-universe [0, 16); free groups are kept smaller
MAX_M = 6
MAX_SIZE = 5
UNIVERSE = 16
FREE_MAX_M = 4
FREE_MAX_SIZE = 3
FREE_WORD = 2


@dataclass
class SuiteResult:
    suite: str
    instances: int = 0
    equality: int = 0
    skipped: int = 0
    violations: list = field(default_factory=list)
    seconds: float = 0.0
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add_violation(self, kind: str, instance: dict, detail):
        self.violations.append({"suite": self.suite, "kind": kind, "instance": instance, "detail": detail})

    def merge(self, other: "SuiteResult"):
        self.instances += other.instances
        self.equality += other.equality
        self.skipped += other.skipped
        self.violations.extend(other.violations)
        for k, v in other.details.items():
            self.details[f"{other.suite}.{k}"] = v

    def to_json(self) -> dict:
        return {"suite": self.suite, "instances": self.instances, "equality": self.equality,
                "skipped": self.skipped, "violations": sorted(self.violations, key=dumps),
                "seconds": round(self.seconds, 3), "details": self.details}


# ---------------------------------------------------------------------------
# generators

def random_word(rng: random.Random, model: GroupModel, max_len: int = FREE_WORD):
    n = rng.randint(0, max_len)
    letters = [((rng.randrange(model.rank), rng.choice((1, -1))),) for _ in range(n)]
    return model.product(*letters) if letters else model.identity


def random_element(rng: random.Random, model: GroupModel, universe: int = UNIVERSE):
    if model.kind == "integers":
        return rng.randrange(universe)
    if model.kind == "free":
        return random_word(rng, model)
    return model.from_index(rng.randrange(model.order))


def random_set(rng: random.Random, model: GroupModel, size: int, universe: int = UNIVERSE) -> GSet:
    if model.kind == "integers":
        return GSet(model, rng.sample(range(universe), min(size, universe)))
    if model.is_finite:
        return GSet(model, [model.from_index(i) for i in rng.sample(range(model.order), min(size, model.order))])
    out = set()
    for _ in range(8 * size):
        if len(out) >= size:
            break
        out.add(random_element(rng, model))
    return GSet(model, out, canonical=True)


def random_instance(rng: random.Random, model: GroupModel, min_size: int = 1,
                    max_m: int | None = None, max_size: int | None = None) -> tuple:
    free = model.kind == "free"
    max_m = max_m or (FREE_MAX_M if free else MAX_M)
    max_size = max_size or (FREE_MAX_SIZE if free else MAX_SIZE)
    m = rng.randint(1, max_m)
    sets = [random_set(rng, model, rng.randint(min_size, max_size)) for _ in range(m)]
    return SetSequence(model, sets), rng.randint(1, m)


def random_sequence(rng: random.Random, model: GroupModel, max_m: int = 8) -> tuple:
    m = rng.randint(1, max_m)
    # draw from a small pool so repeated terms are common
    pool = [random_element(rng, model) for _ in range(rng.randint(1, 4))]
    terms = [rng.choice(pool) for _ in range(m)]
    return ElementSequence(model, terms), rng.randint(1, m)


def shrink_sets(seq: SetSequence, ell: int, fails) -> tuple:
    """Greedily drop sets and elements while ``fails(seq, ell)`` stays true."""
    changed = True
    while changed:
        changed = False
        for i in range(seq.m):
            if seq.m <= 1:
                break
            sets = list(seq.sets[:i]) + list(seq.sets[i + 1:])
            cand = SetSequence(seq.model, sets)
            for new_ell in sorted({min(ell, cand.m), max(1, ell - 1)}):
                if _still(fails, cand, new_ell):
                    seq, ell, changed = cand, new_ell, True
                    break
            if changed:
                break
        if changed:
            continue
        for i, s in enumerate(seq.sets):
            if len(s) <= 1:
                continue
            for x in s:
                sets = list(seq.sets)
                sets[i] = GSet(seq.model, [y for y in s if y != x], canonical=True)
                cand = SetSequence(seq.model, sets)
                if _still(fails, cand, ell):
                    seq, changed = cand, True
                    break
            if changed:
                break
    return seq, ell


def _still(fails, seq, ell) -> bool:
    try:
        return bool(fails(seq, ell))
    except (ValueError, BudgetExceeded):
        return False


# ---------------------------------------------------------------------------
# bounds

def _bound_failures(seq, ell):
    reports = applicable_bounds(seq, ell)
    out = [f"{r.bound_name}: value {r.bound_value} > actual {r.actual_size}" for r in reports if not r.holds]
    by = {r.bound_name: r for r in reports}
    if "DGM" in by and "ZpMu" in by and by["DGM"].witness["H_order"] == 1 \
            and by["DGM"].bound_value != by["ZpMu"].bound_value:
        out.append("DGM with trivial stabilizer differs from the Z_p mu-bound")
    if "Kneser" in by and "ZpMu" in by and by["Kneser"].witness["H_order"] not in (1, seq.model.n):
        out.append("Kneser stabilizer in Z_p is neither trivial nor the whole group")
    return out


def run_bounds(seed: int = 0, count: int = 200, models=MODEL_CLASSES) -> SuiteResult:
    """``count`` random set sequences and element sequences per model class."""
    res = SuiteResult("bounds")
    t0 = time.perf_counter()
    for name in models:
        model = parse_model(name)
        rng = random.Random(f"bounds:{seed}:{name}")
        for _ in range(count):
            seq, ell = random_instance(rng, model)
            try:
                fails = _bound_failures(seq, ell)
            except BudgetExceeded:
                res.skipped += 1
                continue
            res.instances += 1
            res.equality += seq.m >= ell and len(generalized_sumset(seq, ell)) == \
                sum(min(ell, c) for c in seq.incidence.values()) - ell + 1 if seq.model.is_abelian else 0
            if fails:
                small, sell = shrink_sets(seq, ell, _bound_failures)
                res.add_violation("bound", sets_instance(small, sell).to_json(), fails)
            a, ell2 = random_sequence(rng, model)
            try:
                rep = hamidoune_check(a, ell2)
            except BudgetExceeded:
                res.skipped += 1
                continue
            res.instances += 1
            if not rep.holds:
                res.add_violation("subsequence disjunction", sequence_instance(a, ell2).to_json(), rep.to_json())
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------------------
# inverse

INVERSE_MODELS = ("Z", "Z5", "Z7", "Z11", "Z13")


def _witness_failures(seq, ell):
    if ell < 2:
        return []
    return witness_violations(seq, build_witness_sets(seq, ell))


def _classify_failures(seq, ell):
    if ell < 2:
        return []
    return classify_extremal(seq, ell).violations


def run_inverse(seed: int = 0, count: int = 200, models=INVERSE_MODELS) -> SuiteResult:
    """Witness-set invariants and the inverse classifiers on random Z and Z_p instances."""
    res = SuiteResult("inverse")
    t0 = time.perf_counter()
    rng = random.Random(f"inverse:{seed}")
    for i in range(count):
        model = parse_model(models[i % len(models)])
        seq, ell = random_instance(rng, model, min_size=2, max_m=5, max_size=4)
        if seq.m < 2:
            seq = SetSequence(model, list(seq.sets) + [random_set(rng, model, 2)])
        ell = max(ell, 2)
        res.instances += 1
        fails = _witness_failures(seq, ell)
        if fails:
            small, sell = shrink_sets(seq, ell, _witness_failures)
            res.add_violation("witness sets", sets_instance(small, sell).to_json(), fails)
        rep = classify_extremal(seq, ell)
        res.equality += rep.equality
        if not rep.applicable_theorems:
            res.skipped += 1
        if rep.violations:
            small, sell = shrink_sets(seq, ell, _classify_failures)
            res.add_violation("inverse", sets_instance(small, sell).to_json(), rep.violations)
    res.seconds = time.perf_counter() - t0
    return res


def parse_exhaustive(spec: str) -> dict:
    """``"Z,m=3,ell=2,universe=0..5"`` or ``"Z7,m=3,ell=2"`` (finite models scan the whole group)."""
    parts = [p.strip() for p in spec.split(",") if p.strip()]
    if not parts:
        raise ValueError("empty exhaustive spec")
    out = {"model": parse_model(parts[0]), "m": 3, "ell": 2, "universe": None, "min_size": 2}
    for p in parts[1:]:
        if "=" not in p:
            raise ValueError(f"bad exhaustive spec field {p!r}")
        k, v = (s.strip() for s in p.split("=", 1))
        if k in ("m", "ell", "min_size"):
            out[k] = int(v)
        elif k == "universe":
            lo, hi = v.split("..")
            out["universe"] = (int(lo), int(hi))
        else:
            raise ValueError(f"unknown exhaustive spec field {k!r}")
    model = out["model"]
    if model.kind == "integers" and out["universe"] is None:
        raise ValueError("a Z scan needs universe=lo..hi")
    if model.kind == "free":
        raise ValueError("exhaustive scans run over Z or finite abelian models")
    return out


def _shift_or(x: int, y: int) -> int:
    out = 0
    while y:
        low = y & -y
        out |= x << (low.bit_length() - 1)
        y ^= low
    return out


def _cyc_add(x: int, y: int, n: int) -> int:
    full = (1 << n) - 1
    out = 0
    while y:
        low = y & -y
        a = low.bit_length() - 1
        out |= ((x << a) | (x >> (n - a))) & full
        y ^= low
    return out


def _mask_gen_sumset(masks, ell, add) -> int:
    dp = [0] * (ell + 1)
    dp[0] = None  # the neutral "empty sum" marker
    for i, s in enumerate(masks):
        for c in range(min(i + 1, ell), 0, -1):
            prev = dp[c - 1]
            if prev is None:
                dp[c] |= s
            elif prev:
                dp[c] |= add(prev, s)
    return dp[ell]


def exhaustive_inverse(spec: str, on_instance=None) -> SuiteResult:
    """Every instance of the spec: equality <=> minimizing witness, plus the predicted structure."""
    cfg = parse_exhaustive(spec)
    model, m, ell, min_size = cfg["model"], cfg["m"], cfg["ell"], cfg["min_size"]
    res = SuiteResult("inverse-exhaustive")
    t0 = time.perf_counter()
    if model.kind == "integers":
        lo, hi = cfg["universe"]
        elements = list(range(lo, hi + 1))
        add = _shift_or
    elif model.kind == "cyclic":
        elements = model.elements()
        n = model.n
        add = lambda x, y: _cyc_add(x, y, n)  # noqa: E731
    else:
        elements = model.elements()
        add = None
    width = len(elements)
    masks = [x for x in range(1, 1 << width) if bin(x).count("1") >= min_size]
    cap = _cap(model, ell)
    for combo in itertools.product(masks, repeat=m):
        if add is not None and model.is_finite:
            if bin(_mask_gen_sumset(combo, ell, add)).count("1") > cap:
                res.skipped += 1
                continue
        seq = SetSequence(model, [[elements[i] for i in range(width) if x >> i & 1] for x in combo])
        rep = classify_extremal(seq, ell)
        res.instances += 1
        res.equality += rep.equality
        if not rep.applicable_theorems:
            res.skipped += 1
        problems = list(rep.violations)
        if rep.equality and model.is_torsion_free and not rep.conclusions.get("A_i_union_M_same_ratio"):
            problems.append("A_i | M family has no common ratio")
        if problems:
            res.add_violation("inverse", sets_instance(seq, ell).to_json(), problems)
        if on_instance is not None:
            on_instance(seq, rep)
    res.details = {"spec": spec, "cap": None if cap == float("inf") else cap}
    res.seconds = time.perf_counter() - t0
    return res


def sparse_scan(m: int = 3, ell: int = 2, universe=(0, 6)) -> SuiteResult:
    res = SuiteResult("sparse-nonexistence")
    t0 = time.perf_counter()
    stats: dict = {}
    found = no_sparse_extremal_scan(m, ell, universe, stats=stats)
    res.instances = stats.get("scanned", 0)
    res.equality = len(found)
    for inst in found:
        res.add_violation("sparse equality", {"model": "Z", "ell": ell, "sets": inst},
                          "equality with at most one element of multiplicity >= 2")
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------------------
# structure

def random_type(rng: random.Random, model: GroupModel, max_len: int = 8) -> ProgressionType:
    if model.kind == "integers":
        g = rng.choice([d for d in range(-5, 6) if d])
        return ProgressionType(model, rng.randint(-10, 10), g, rng.randint(-10, 10), rng.randint(1, max_len))
    g = model.identity
    while g == model.identity:
        g = random_word(rng, model, 3)
    return ProgressionType(model, random_word(rng, model, 3), g, random_word(rng, model, 3),
                           rng.randint(1, max_len))


def type_identity_failures(t: ProgressionType, c) -> list:
    """Representation identities for one type, plus detection round trips."""
    model = t.model
    e = model.identity
    inv = model.inverse
    op = model.op
    S = t.realize()
    n = t.length
    out = []
    if ProgressionType(model, op(t.a, t.b), op(op(inv(t.b), t.g), t.b), e, n).realize() != S:
        out.append("(a,g,b) != (ab, b^-1 g b, 1)")
    if ProgressionType(model, e, op(op(t.a, t.g), inv(t.a)), op(t.a, t.b), n).realize() != S:
        out.append("(a,g,b) != (1, a g a^-1, ab)")
    back = ProgressionType(model, t.a, inv(t.g), t.b, n).realize()
    if back != ProgressionType(model, t.a, t.g, op(model.pow(t.g, -(n - 1)), t.b), n).realize():
        out.append("(a,g^-1,b) != (a, g, g^-(n-1) b)")
    if t.shifted(c).realize() != S:
        out.append("(a,g,b) != (ac, c^-1 g c, c^-1 b)")
    if t.reversed().realize() != S:
        out.append("reversal changes the set")
    found = detect_progressions(S)
    if not found:
        out.append("realized set not detected as a progression")
        return out
    keys = [str(w) for w in found]
    for w in found:
        if w.realize() != S:
            out.append(f"witness {w} does not realize the set")
        if [str(x) for x in detect_progressions(w.realize())] != keys:
            out.append("detect . realize is not a fixed point")
        if n >= 2 and model.kind == "free" and lemma31_relation(t, w) is None:
            out.append(f"no conjugator relation between {t} and {w}")
    if n >= 2:
        if model.is_abelian:
            ok = any(w.g in (t.g, inv(t.g)) for w in found)
        else:
            ok = any(are_conjugate(model, w.g, t.g) or are_conjugate(model, w.g, inv(t.g)) for w in found)
        if not ok:
            out.append("no detected ratio matches the generating ratio")
    return out


def random_chain(rng: random.Random, model: GroupModel, k: int) -> list:
    base = random_type(rng, model, 5)
    g = base.g
    types = [ProgressionType(model, base.a, g, base.b, max(2, base.length))]
    for _ in range(k - 1):
        beta = random_element(rng, model, 10) if model.kind != "integers" else rng.randint(-10, 10)
        types.append(ProgressionType(model, model.inverse(types[-1].b), g, beta, rng.randint(2, 5)))
    return types


def chain_failures(types) -> list:
    model = types[0].model
    out = []
    if not linked_chain_check(types):
        out.append("generated chain not recognized as linked")
    prod = product_set(model, *[t.realize() for t in types])
    if prod != chain_product(types):
        out.append("product of a linked chain differs from the chain progression")
    if len(prod) != sum(t.length for t in types) - len(types) + 1:
        out.append("linked chain product has the wrong size")
    return out


def run_structure(seed: int = 0, count: int = 200, scans: bool = True) -> SuiteResult:
    """Progression algebra round trips in Z and Free(2), plus the two-set classifier scans."""
    res = SuiteResult("structure")
    t0 = time.perf_counter()
    rng = random.Random(f"structure:{seed}")
    for i in range(count):
        model = Integers() if i % 2 == 0 else Free(2)
        t = random_type(rng, model)
        c = random_element(rng, model) if model.kind == "free" else rng.randint(-10, 10)
        res.instances += 1
        fails = type_identity_failures(t, c)
        if fails:
            res.add_violation("progression identities", {"model": str(model), "type": t.to_json()}, fails)
        types = random_chain(rng, model, rng.randint(2, 3))
        fails = chain_failures(types)
        if fails:
            res.add_violation("linked chain", {"model": str(model), "types": [x.to_json() for x in types]}, fails)
    if scans:
        for sub in (two_set_scan(parse_model("Z7")), two_set_scan(Integers(), universe=(0, 6), max_size=4)):
            res.merge(sub)
    res.seconds = time.perf_counter() - t0
    return res


def _affine_reps(n: int, min_size: int) -> list:
    """One mask per orbit of subsets of Z_n under x -> u x + c (u a unit)."""
    units = [u for u in range(1, n) if _gcd(u, n) == 1]
    reps = []
    for x in range(1, 1 << n):
        if bin(x).count("1") < min_size:
            continue
        pts = [i for i in range(n) if x >> i & 1]
        best = x
        for u in units:
            for c in range(n):
                y = 0
                for p in pts:
                    y |= 1 << ((u * p + c) % n)
                if y < best:
                    best = y
                    break
            if best < x:
                break
        if best == x:
            reps.append(x)
    return reps


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def two_set_scan(model: GroupModel, universe=None, max_size: int | None = None) -> SuiteResult:
    """Every pair (A, B): equality in |A + B| >= |A| + |B| - 1 <=> common-difference progressions.

    Finite cyclic groups are scanned with A up to affine maps (translating A or B
    separately, or dilating both, changes neither side); pairs outside the size
    cap are counted as skipped. In Z the torsion-free linked-type classifier is
    cross-checked as well.
    """
    res = SuiteResult(f"two-set[{model}]")
    t0 = time.perf_counter()
    if model.kind == "integers":
        lo, hi = universe
        elements = list(range(lo, hi + 1))
        width = len(elements)
        all_masks = [x for x in range(1, 1 << width) if 2 <= bin(x).count("1") <= (max_size or width)]
        left = all_masks
        cap = float("inf")
    elif model.kind == "cyclic":
        n = model.n
        elements = model.elements()
        width = n
        all_masks = [x for x in range(1, 1 << n) if 2 <= bin(x).count("1") <= (max_size or n)]
        left = [x for x in _affine_reps(n, 2) if bin(x).count("1") <= (max_size or n)]
        cap = _cap(model, 2)
    else:
        raise ValueError("two_set_scan runs over Z or a cyclic group")
    for xa in left:
        A = GSet(model, [elements[i] for i in range(width) if xa >> i & 1], canonical=True)
        for xb in all_masks:
            if model.kind == "cyclic" and bin(_cyc_add(xa, xb, width)).count("1") > cap:
                res.skipped += 1
                continue
            B = GSet(model, [elements[i] for i in range(width) if xb >> i & 1], canonical=True)
            rep = vosper_classify(A, B)
            res.instances += 1
            res.equality += rep.equality
            inst = {"model": str(model), "sets": [A.to_json(), B.to_json()]}
            if not rep.consistent:
                res.add_violation("two-set classifier", inst, rep.to_json())
            if model.is_torsion_free:
                types = brailovsky_classify([A, B])
                if (types is not None) != rep.equality:
                    res.add_violation("linked-type classifier", inst, "equality and linked types disagree")
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------------------
# constructions

def run_constructions(max_sum: int = 40, **grid) -> SuiteResult:
    res = SuiteResult("constructions")
    t0 = time.perf_counter()
    by_variant: dict = {}
    for p in enumerate_params(max_sum=max_sum, **grid):
        res.instances += 1
        by_variant[p.variant] = by_variant.get(p.variant, 0) + 1
        fails = check_construction(p)
        if fails:
            res.add_violation("construction", p.to_json(), fails)
        else:
            res.equality += 1
    # the multiplicative mirror in Free(1) on a few families
    for p in (ConstructionParams("C1", 2, (2, 2, 3), n_blocks=2), ConstructionParams("C2", 2, (2, 2, 2), (1,)),
              ConstructionParams("C3", 2, (2, 2, 2, 2, 2), (1, 1))):
        seq = construct(p, Free(1))
        if len(generalized_sumset(seq, p.ell)) != expected_equality_value(p):
            res.add_violation("construction mirror", p.to_json(), "Free(1) mirror misses the equality value")
    res.details = {"by_variant": by_variant}
    res.seconds = time.perf_counter() - t0
    return res


# ---------------------------------------------------------------------------
# subsequences

def run_subseq(seed: int = 0, count: int = 200, models=MODEL_CLASSES) -> SuiteResult:
    """The size-or-multiple disjunction and the distinct-terms inverse check on random sequences."""
    res = SuiteResult("subseq")
    t0 = time.perf_counter()
    rng = random.Random(f"subseq:{seed}")
    for i in range(count):
        model = parse_model(models[i % len(models)])
        a, ell = random_sequence(rng, model)
        try:
            dis = hamidoune_check(a, ell)
            rep = subseq_inverse_check(a, ell)
        except BudgetExceeded:
            res.skipped += 1
            continue
        res.instances += 1
        inst = sequence_instance(a, ell).to_json()
        if not dis.holds:
            res.add_violation("subsequence disjunction", inst, dis.to_json())
        if rep.equality and rep.applicable:
            res.equality += 1
        elif not rep.applicable:
            res.skipped += 1
        if rep.violations:
            res.add_violation("subsequence inverse", inst, rep.violations)
    res.seconds = time.perf_counter() - t0
    return res


SUITES = ("bounds", "inverse", "structure", "constructions", "subseq", "all")


def run_suite(name: str, seed: int = 0, count: int = 200, exhaustive: str | None = None) -> SuiteResult:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; expected one of {SUITES}")
    if exhaustive is not None:
        if name != "inverse":
            raise ValueError("--exhaustive applies to the inverse suite")
        return exhaustive_inverse(exhaustive)
    if name == "bounds":
        return run_bounds(seed, count)
    if name == "inverse":
        return run_inverse(seed, count)
    if name == "structure":
        return run_structure(seed, count)
    if name == "constructions":
        return run_constructions()
    if name == "subseq":
        return run_subseq(seed, count)
    total = SuiteResult("all")
    t0 = time.perf_counter()
    for sub in ("bounds", "inverse", "structure", "constructions", "subseq"):
        total.merge(run_suite(sub, seed, count))
    total.merge(sparse_scan())
    total.seconds = time.perf_counter() - t0
    return total
