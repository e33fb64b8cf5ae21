"""Lower bounds for sumsets and generalized sum/product sets, with slack reports."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .groups import GSet, GroupModel, ModelMismatch, is_prime, smallest_subgroup_order, stabilizer
from .seqset import ElementSequence, SetSequence, generalized_product_set, generalized_sumset, \
    multiplicity_profile, subsequence_sumset, sumset

BOUND_NAMES = ("CauchyDavenport", "KempermanTF", "Kneser", "DGM", "TorsionFreeMu", "ZpMu", "AbelianMu",
               "SubseqHamidoune")


class HypothesisError(ValueError):
    """The instance is outside the hypotheses of the requested bound."""


@dataclass
class BoundReport:
    bound_name: str
    bound_value: int
    actual_size: int
    witness: dict = field(default_factory=dict)
    holds: bool | None = None

    def __post_init__(self):
        if self.holds is None:
            self.holds = self.actual_size >= self.bound_value

    @property
    def slack(self) -> int:
        return self.actual_size - self.bound_value

    def to_json(self) -> dict:
        return {"bound": self.bound_name, "value": self.bound_value, "actual": self.actual_size,
                "slack": self.slack, "holds": self.holds, "witness": self.witness}


def _require_prime_cyclic(model: GroupModel):
    if model.kind != "cyclic" or not is_prime(model.n):
        raise HypothesisError(f"{model} is not a cyclic group of prime order")


def _ell_default(seq, ell):
    if ell is None:
        return seq.m
    if ell != seq.m:
        raise HypothesisError("this bound is stated for the plain sumset, so ell must equal m")
    return ell


def cauchy_davenport_bound(seq: SetSequence, ell: int | None = None) -> BoundReport:
    """|A_1 + ... + A_l| >= min(p, sum |A_i| - l + 1) in Z_p."""
    _require_prime_cyclic(seq.model)
    ell = _ell_default(seq, ell)
    p = seq.model.n
    value = min(p, sum(len(s) for s in seq.sets) - ell + 1)
    actual = len(generalized_sumset(seq, ell))
    return BoundReport("CauchyDavenport", value, actual, {"p": p})


def kemperman_tf_bound(seq: SetSequence, ell: int | None = None) -> BoundReport:
    """|A_1 ... A_l| >= sum |A_i| - l + 1 in a torsion-free group (listed order)."""
    if not seq.model.is_torsion_free:
        raise HypothesisError(f"{seq.model} is not torsion-free")
    ell = _ell_default(seq, ell)
    value = sum(len(s) for s in seq.sets) - ell + 1
    actual = len(sumset(seq.model, *seq.sets))
    return BoundReport("KempermanTF", value, actual)


def kneser_bound(A: GSet, B: GSet) -> BoundReport:
    """|A + B| >= |A + H| + |B + H| - |H| with H = Stab(A + B)."""
    model = A.model
    if B.model != model:
        raise ModelMismatch("A and B live in different models")
    if not model.is_finite:
        raise HypothesisError(f"Kneser's bound is evaluated on finite abelian models only, not {model}")
    S = sumset(model, A, B)
    H = stabilizer(model, S)
    value = len(sumset(model, A, H)) + len(sumset(model, B, H)) - len(H)
    return BoundReport("Kneser", value, len(S), {"H": H.to_json(), "H_order": len(H)})


def coset_labels(model: GroupModel, H: GSet) -> dict:
    """Map every group element to the index of its coset x + H (cosets numbered in canonical order)."""
    labels: dict = {}
    count = 0
    hs = H.elements
    for g in model.elements():
        if g in labels:
            continue
        for h in hs:
            labels[model.op(g, h)] = count
        count += 1
    return labels


def dgm_bound(seq: SetSequence, ell: int) -> BoundReport:
    """|Sigma^l| >= |H| (sum over cosets Q of mu(Q) - l + 1), H = Stab(Sigma^l)."""
    model = seq.model
    if not model.is_finite:
        raise HypothesisError("DGM is evaluated on finite abelian models; use torsion_free_mu_bound on Z")
    S = generalized_sumset(seq, ell)
    H = stabilizer(model, S)
    labels = coset_labels(model, H)
    hits: dict = {}
    for s in seq.sets:
        for q in {labels[a] for a in s}:
            hits[q] = hits.get(q, 0) + 1
    mu_q = {q: min(ell, c) for q, c in hits.items()}
    value = len(H) * (sum(mu_q.values()) - ell + 1)
    witness = {"H": H.to_json(), "H_order": len(H), "cosets": len(model.elements()) // len(H),
               "mu_cosets": sum(mu_q.values())}
    return BoundReport("DGM", value, len(S), witness)


def _mu_total(seq, ell) -> int:
    return multiplicity_profile(seq, ell).total


def torsion_free_mu_bound(seq: SetSequence, ell: int) -> BoundReport:
    """|Pi^l| >= sum mu(a) - l + 1 in a torsion-free group."""
    if not seq.model.is_torsion_free:
        raise HypothesisError(f"{seq.model} is not torsion-free")
    total = _mu_total(seq, ell)
    actual = len(generalized_product_set(seq, ell))
    return BoundReport("TorsionFreeMu", total - ell + 1, actual, {"mu_total": total})


def zp_mu_bound(seq: SetSequence, ell: int) -> BoundReport:
    """|Sigma^l| >= min(p, sum mu(a) - l + 1) in Z_p."""
    _require_prime_cyclic(seq.model)
    p = seq.model.n
    total = _mu_total(seq, ell)
    actual = len(generalized_sumset(seq, ell))
    return BoundReport("ZpMu", min(p, total - ell + 1), actual, {"mu_total": total, "p": p})


def abelian_mu_bound(seq: SetSequence, ell: int) -> BoundReport:
    """|Sigma^l| >= min(p(G), sum mu(a) - l + 1); p(G) is infinite for torsion-free models."""
    pg = smallest_subgroup_order(seq.model)
    total = _mu_total(seq, ell)
    actual = len(generalized_product_set(seq, ell))
    value = total - ell + 1 if pg == math.inf else min(pg, total - ell + 1)
    return BoundReport("AbelianMu", value, actual,
                       {"mu_total": total, "p_G": None if pg == math.inf else pg})


def hamidoune_check(a: ElementSequence, ell: int) -> BoundReport:
    """Either |Sigma^l(a)| >= min(p(G), m - l + 1) or some l*a_i lies in Sigma^l(a)."""
    model = a.model
    S = subsequence_sumset(a, ell)
    pg = smallest_subgroup_order(model)
    size_bound = a.m - ell + 1
    if pg != math.inf:
        size_bound = min(pg, size_bound)
    first = len(S) >= size_bound
    witnesses = [x for x in sorted(a.rho, key=model.key) if model.pow(x, ell) in S]
    second = bool(witnesses)
    witness = {"size_disjunct": first, "multiple_disjunct": second}
    if witnesses:
        witness["element"] = model.element_to_json(witnesses[0])
    return BoundReport("SubseqHamidoune", size_bound, len(S), witness, holds=first or second)


def applicable_bounds(seq: SetSequence, ell: int) -> list:
    """Every bound whose hypotheses the instance meets (listed order matters for the plain-sumset ones)."""
    model = seq.model
    out = []
    if model.kind == "cyclic" and is_prime(model.n):
        out.append(zp_mu_bound(seq, ell))
        if ell == seq.m:
            out.append(cauchy_davenport_bound(seq))
    if model.is_finite:
        out.append(dgm_bound(seq, ell))
        if seq.m == 2:
            out.append(kneser_bound(seq.sets[0], seq.sets[1]))
    if model.is_torsion_free:
        out.append(torsion_free_mu_bound(seq, ell))
        if ell == seq.m:
            out.append(kemperman_tf_bound(seq))
    out.append(abelian_mu_bound(seq, ell))
    return out


BOUNDS_BY_NAME = {
    "cauchy-davenport": cauchy_davenport_bound,
    "kemperman": kemperman_tf_bound,
    "kneser": kneser_bound,
    "dgm": dgm_bound,
    "torsion-free-mu": torsion_free_mu_bound,
    "zp-mu": zp_mu_bound,
    "abelian-mu": abelian_mu_bound,
    "hamidoune": hamidoune_check,
}
