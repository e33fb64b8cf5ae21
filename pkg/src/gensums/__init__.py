"""Generalized sumsets and product sets: computation, bounds and inverse checks."""
from .groups import (GroupModel, GSet, InfiniteGroupError, ModelMismatch, Cyclic, FiniteAbelian, Free, Integers,
                     cosets, enumerate_group, inverse, is_subgroup, op, parse_model, power, product_set,
                     smallest_subgroup_order, stabilizer)
from .seqset import (Budget, BudgetExceeded, DEFAULT_BUDGET, ElementSequence, MultiplicityProfile, SetSequence,
                     generalized_product_set, generalized_sumset, multiplicity_profile, subsequence_sumset, sumset)
from .bounds import (BoundReport, HypothesisError, abelian_mu_bound, applicable_bounds, cauchy_davenport_bound,
                     dgm_bound, hamidoune_check, kemperman_tf_bound, kneser_bound, torsion_free_mu_bound,
                     zp_mu_bound)
from .progressions import (ProgressionType, as_progression, chain_product, conjugator, detect_progressions,
                           find_linked_types, is_progression, lemma31_relation, linked_chain_check,
                           same_ratio_family, subprogression_form, union_progression)
from .extremal import (ExtremalReport, MinimizingWitness, VosperReport, WitnessSets, brailovsky_classify,
                      build_prime_chain, build_witness_sets, check_minimizing, classify_extremal, compute_L,
                      no_sparse_extremal_scan, vosper_classify, witness_violations)
from .constructions import (ConstructionParams, auxiliary_sequence, construct, expected_equality_value,
                            named_example)
from .subseq import SubseqInverseReport, SubseqProfile, build_x_sets, subseq_inverse_check, subseq_profile
from .instances import Instance

# the operation names used in the documentation
pow = power
enumerate = enumerate_group

__version__ = "0.1.0"
