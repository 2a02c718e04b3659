"""Exact q,t symmetric functions, modified Macdonald polynomials and Garsia-Haiman modules."""
from .errors import (ChecksumError, IdentityMismatch, IntegrityError, NotPolynomialError, ParseError,
                     PoleError, QTSFError, SizeGuardError)
from .qtalgebra import ONE, Q, T, ZERO, QTPoly, QTRat, is_positive_integral, limit_q1, substitute
from .partitions import (conjugate, corner_data, dominance_leq, minimal_raising_pairs, parse_partition,
                         partitions)
from .symfunc import SymFunc, convert, del_p1, down_arrow, hall_inner, omega, power_sum, qt_inner, schur
from .macdonald import get_table, kostka, nabla, tilde_H
from .identities import butler_split, phi_k, phi_mu, phi_superset, positivity_audit, sf_dimension_limit
from .bh import bh_assign, bh_reassemble, pi_recursion, two_corner_regions
from .orbit import BiPoly, BiPolySpace, bigraded_frobenius, delta_mu, derivative_span, intersect, module

__version__ = "0.1.0"

__all__ = [
    "ChecksumError", "IdentityMismatch", "IntegrityError", "NotPolynomialError", "ParseError",
    "PoleError", "QTSFError", "SizeGuardError",
    "ONE", "Q", "T", "ZERO", "QTPoly", "QTRat", "is_positive_integral", "limit_q1", "substitute",
    "conjugate", "corner_data", "dominance_leq", "minimal_raising_pairs", "parse_partition", "partitions",
    "SymFunc", "convert", "del_p1", "down_arrow", "hall_inner", "omega", "power_sum", "qt_inner", "schur",
    "get_table", "kostka", "nabla", "tilde_H",
    "butler_split", "phi_k", "phi_mu", "phi_superset", "positivity_audit", "sf_dimension_limit",
    "bh_assign", "bh_reassemble", "pi_recursion", "two_corner_regions",
    "BiPoly", "BiPolySpace", "bigraded_frobenius", "delta_mu", "derivative_span", "intersect", "module",
]
