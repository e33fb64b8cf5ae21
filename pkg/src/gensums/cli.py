"""Command-line front end: ``gensums compute|bound|classify|construct|verify``.

JSON goes to stdout, diagnostics to stderr. Exit codes: 0 fine, 1 a theorem
violation was found, 2 bad input, 3 budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys

from .bounds import BOUNDS_BY_NAME, HypothesisError, applicable_bounds, hamidoune_check, kneser_bound
from .constructions import ConstructionParams, construct, expected_equality_value, named_example
from .groups import parse_model
from .instances import Instance, InstanceError, sets_instance
from .extremal import classify_extremal
from .seqset import DEFAULT_BUDGET, Budget, BudgetExceeded, generalized_product_set, multiplicity_profile, \
    subsequence_sumset
from .subseq import subseq_inverse_check, subseq_profile
from .verify import SUITES, run_suite

EXIT_VIOLATION = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


class UsageError(ValueError):
    pass


def _emit(obj):
    json.dump(obj, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")


def _budget(args) -> Budget:
    if args.budget is None and args.max_sets is None:
        return DEFAULT_BUDGET
    return Budget(max_sets=args.max_sets or DEFAULT_BUDGET.max_sets,
                  max_elements=args.budget or DEFAULT_BUDGET.max_elements)


def load_instance(args) -> Instance:
    if getattr(args, "example", None):
        seq, ell = named_example(args.example, parse_model(args.model) if args.model else None)
        return sets_instance(seq, args.ell or ell)
    if not args.input:
        raise UsageError("give --input FILE (or - for stdin) or --example NAME")
    text = sys.stdin.read() if args.input == "-" else open(args.input, encoding="utf-8").read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise InstanceError("an instance is a JSON object")
    if args.model:
        data["model"] = args.model
    if args.ell is not None:
        data["ell"] = args.ell
    inst = Instance.from_json(data)
    if inst.ell is None:
        # the plain sumset of all the sets / all the terms
        inst.ell = inst.m
    return inst


def _profile_json(inst: Instance) -> dict:
    model = inst.model
    enc = model.element_to_json
    if inst.sets is not None:
        prof = multiplicity_profile(inst.sets, inst.ell)
        rows = [{"element": enc(a), "incidence": inst.sets.incidence[a], "mu": prof.mu[a], "eta": prof.eta[a],
                 "tau": prof.tau[a]} for a in inst.sets.union]
        return {"rows": rows, "mu_total": prof.total, "M": prof.M.to_json()}
    prof = subseq_profile(inst.sequence, inst.ell)
    rows = [{"element": enc(a), "rho": prof.rho[a], "mu": prof.mu_a[a]}
            for a in sorted(prof.rho, key=model.key)]
    return {"rows": rows, "mu_total": prof.mu_total, "X": prof.X.to_json(), "t": prof.t}


def cmd_compute(args) -> int:
    inst = load_instance(args)
    budget = _budget(args)
    if inst.sets is not None:
        S = generalized_product_set(inst.sets, inst.ell, budget)
        what = "generalized sumset" if inst.model.is_abelian else "generalized product set"
    else:
        S = subsequence_sumset(inst.sequence, inst.ell, budget)
        what = "subsequence sums"
    out = {"model": str(inst.model), "ell": inst.ell, "kind": what, "size": len(S), "set": S.to_json()}
    if args.profile:
        out["profile"] = _profile_json(inst)
        for row in out["profile"]["rows"]:
            print("  ".join(f"{k}={v}" for k, v in row.items()), file=sys.stderr)
    _emit(out)
    return 0


def cmd_bound(args) -> int:
    inst = load_instance(args)
    if inst.sequence is not None:
        if args.name not in (None, "hamidoune"):
            raise UsageError(f"bound {args.name!r} takes a set sequence, not an element sequence")
        _emit([hamidoune_check(inst.sequence, inst.ell).to_json()])
        return 0
    seq = inst.sets
    if args.name is None:
        reports = applicable_bounds(seq, inst.ell)
    elif args.name == "kneser":
        if seq.m != 2:
            raise UsageError("the kneser bound takes exactly two sets")
        reports = [kneser_bound(seq.sets[0], seq.sets[1])]
    elif args.name == "hamidoune":
        raise UsageError("the hamidoune check takes an element sequence")
    elif args.name in ("cauchy-davenport", "kemperman"):
        reports = [BOUNDS_BY_NAME[args.name](seq)]
    else:
        reports = [BOUNDS_BY_NAME[args.name](seq, inst.ell)]
    _emit([r.to_json() for r in reports])
    return EXIT_VIOLATION if any(not r.holds for r in reports) else 0


def cmd_classify(args) -> int:
    inst = load_instance(args)
    budget = _budget(args)
    if inst.sets is not None:
        rep = classify_extremal(inst.sets, inst.ell, budget)
    else:
        rep = subseq_inverse_check(inst.sequence, inst.ell, budget)
    _emit(rep.to_json())
    return EXIT_VIOLATION if rep.violations else 0


def _int_list(text):
    if text is None:
        return []
    try:
        return [int(x) for x in str(text).split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected a comma-separated list of integers, got {text!r}") from None


def cmd_construct(args) -> int:
    model = parse_model(args.model) if args.model else None
    if args.example:
        seq, ell = named_example(args.example, model)
        _emit(sets_instance(seq, ell).to_json())
        return 0
    if not args.variant or args.ell is None or not args.k:
        raise UsageError("construct needs --variant, --ell and --k (or --example)")
    variant = args.variant.upper()
    n = _int_list(args.n)
    if variant == "C1":
        if len(n) > 1:
            raise UsageError("C1 takes a single block count --n")
        params = ConstructionParams("C1", args.ell, _int_list(args.k), n_blocks=n[0] if n else None)
    else:
        params = ConstructionParams(variant, args.ell, _int_list(args.k), tuple(n))
    seq = construct(params, model, literal_block_index=args.literal_block_index)
    out = sets_instance(seq, params.ell).to_json()
    out["params"] = params.to_json()
    out["expected_size"] = expected_equality_value(params)
    _emit(out)
    return 0


def cmd_verify(args) -> int:
    res = run_suite(args.suite, seed=args.seed, count=args.count, exhaustive=args.exhaustive)
    out = res.to_json()
    print(f"{res.suite}: {res.instances} instances, {res.equality} equality cases, {res.skipped} skipped, "
          f"{len(res.violations)} violations in {res.seconds:.1f}s", file=sys.stderr)
    _emit(out)
    return EXIT_VIOLATION if res.violations else 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gensums", description="Generalized sumsets, bounds and inverse checks.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, instance=True):
        sp.add_argument("--model", help="group model: Z, Z7, Z2xZ4, F2, ... (overrides the instance)")
        sp.add_argument("--ell", type=int, help="number of distinct sets/terms per sum (default: m)")
        sp.add_argument("--budget", type=int, help="cap on intermediate elements in product-set searches")
        sp.add_argument("--max-sets", type=int, help="cap on m for non-abelian product sets")
        if instance:
            sp.add_argument("--input", help="instance JSON file, or - for stdin")
            sp.add_argument("--example", help="a named instance instead of --input (five-intervals)")

    sp = sub.add_parser("compute", help="print Sigma^l / Pi^l of an instance")
    common(sp)
    sp.add_argument("--profile", action="store_true", help="include the multiplicity table")
    sp.set_defaults(func=cmd_compute)

    sp = sub.add_parser("bound", help="evaluate lower bounds and their slack")
    common(sp)
    sp.add_argument("--name", choices=sorted(BOUNDS_BY_NAME), help="one bound (default: all applicable)")
    sp.set_defaults(func=cmd_bound)

    sp = sub.add_parser("classify", help="decide equality and report the predicted structure")
    common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("construct", help="emit an extremal family or a named example")
    common(sp, instance=False)
    sp.add_argument("--variant", choices=["c1", "c2", "c3", "C1", "C2", "C3"])
    sp.add_argument("--k", help="comma-separated k_1..k_m")
    sp.add_argument("--n", help="C1: block count; C2/C3: comma-separated n_i")
    sp.add_argument("--example", help="named example, e.g. five-intervals")
    sp.add_argument("--literal-block-index", action="store_true",
                    help="C3 only: use floor(j/l) for the block count exactly as printed")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("verify", help="run a seeded verification suite")
    sp.add_argument("suite", choices=SUITES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=200, help="instances per model class (default 200)")
    sp.add_argument("--exhaustive", metavar="SPEC", help='exhaustive scan, e.g. "Z,m=3,ell=2,universe=0..5"')
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except HypothesisError as exc:
        print(f"hypotheses not met: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (UsageError, InstanceError, ValueError, KeyError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
