"""Genus-3 curves over odd-characteristic finite fields whose Jacobian
splits, up to isogeny, into three prescribed elliptic curves.

The pipeline: pick admissible Frobenius traces, decide whether a
(Z/2)^3-cover of the projective line can realize them, build the cover as
three hyperelliptic components sharing five branch points, and verify the
claimed zeta numerator by independent point counting.
"""
from .construct import (ConstructionCertificate, Genus3Cover,
                        InvalidCoverError, InvalidTracesError, NotConsistent,
                        TriplePlan, arrange_triple, build_cover,
                        construct_from_traces, decide_consistency,
                        degree8_check, enumerate_triples, hurwitz_ram_count,
                        realize_plan)
from .ecurve import (CurveClass, EllipticModel, admissible_traces,
                     classes_with_trace, count_points, enumerate_classes,
                     extension_count, j_invariant_model, quadratic_twist,
                     trace, trace_power_sum, two_torsion_rational,
                     waterhouse_admissible, waterhouse_clauses)
from .ff import Fel, FieldDesc, Poly, embed, first_nonsquare, make_field, qchar
from .legendre import (ProjPoint, canonical_lambda, isomorphic_curves,
                       j_invariant, legendre_equivalent, model_j,
                       model_lambda, orbit, ram_set)
from .zeta import (LPoly, ReconstructionError, ZetaReport, claimed_char_poly,
                   claimed_lpoly, count_cover, expected_count,
                   local_splitting, reconstruct_lpoly, verify)

__version__ = "0.1.0"

__all__ = [
    "ConstructionCertificate", "Genus3Cover", "InvalidCoverError",
    "InvalidTracesError", "NotConsistent", "TriplePlan", "arrange_triple",
    "build_cover", "construct_from_traces", "decide_consistency",
    "degree8_check", "enumerate_triples", "hurwitz_ram_count",
    "realize_plan",
    "CurveClass", "EllipticModel", "admissible_traces", "classes_with_trace",
    "count_points", "enumerate_classes", "extension_count",
    "j_invariant_model", "quadratic_twist", "trace", "trace_power_sum",
    "two_torsion_rational", "waterhouse_admissible", "waterhouse_clauses",
    "Fel", "FieldDesc", "Poly", "embed", "first_nonsquare", "make_field",
    "qchar",
    "ProjPoint", "canonical_lambda", "isomorphic_curves", "j_invariant",
    "legendre_equivalent", "model_j", "model_lambda", "orbit", "ram_set",
    "LPoly", "ReconstructionError", "ZetaReport", "claimed_char_poly",
    "claimed_lpoly", "count_cover", "expected_count", "local_splitting",
    "reconstruct_lpoly", "verify",
    "__version__",
]
