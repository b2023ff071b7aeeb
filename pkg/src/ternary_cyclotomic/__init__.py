"""Exact coefficients of binary and ternary cyclotomic polynomials and Beiter counterexamples."""

from .binary import BinaryContext, PartPair, a_pq, make_context as binary_context, parts, same_range
from .construction import (
    ConstructionCertificate,
    ConstructionParams,
    TargetIndex,
    construct,
    delta_minus_variant,
    m_p_q_value,
    verify_tables,
)
from .kaplan import CoefficientSet, KaplanContext, a_pqr, coefficient_set, flip_partner
from .kaplan import make_context as kaplan_context
from .landscape import BetaProfile, beta_profile, cobeli_check, m_p_claims, scan_exceeding, s1_s2_intersection, x0_classify
from .numtheory import Residue, euler_phi, is_prime, mod_inverse, moebius, next_prime_in_ap
from .oracle import phi_coeffs, ternary_product_coeffs

__version__ = "0.1.0"
