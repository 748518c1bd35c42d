"""Exact-arithmetic certification of graphs determined by their generalized
spectrum, with the supporting integer and finite-field linear algebra."""

from .certify import (
    DgsVerdict,
    STATUS_CONDITION_FAILS,
    STATUS_DGS_BY_MAIN,
    STATUS_DGS_BY_SQF,
    STATUS_FACTORIZATION_INCOMPLETE,
    STATUS_NOT_CONTROLLABLE,
    certify_dgs,
    check_controllable,
    check_sqf_condition,
)
from .cospec import (
    EnumerationResult,
    RationalOrthogonal,
    SpectrumKey,
    enumerate_generalized_cospectral_classes,
    level_parity_audit,
    recover_q,
    spectrum_key,
    verify_regular_orthogonal,
)
from .errors import InvariantViolation
from .fpalg import (
    ModPoly,
    SquarefreeDecomposition,
    char_poly_mod_p,
    format_poly,
    nullity_p,
    nullspace_basis_p,
    poly_gcd,
    rank_p,
    sfp,
    sqrt_poly,
    squarefree_decomposition,
)
from .graphcore import (
    Graph,
    Graph6Error,
    Xorshift64Star,
    complement,
    derive_seed,
    emit_adjacency,
    emit_graph6,
    parse_adjacency,
    parse_graph6,
    random_graph,
)
from .specinv import PhiReport, p_main_poly, phi_p, phi_report, reduced_walk_matrix, restricted_char_poly
from .zlinalg import (
    FactorizationResult,
    IntMatrix,
    SnfResult,
    char_poly_int,
    determinant,
    factor_integer,
    is_prime,
    rational_solve,
    smith_normal_form,
    walk_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "DgsVerdict",
    "EnumerationResult",
    "FactorizationResult",
    "Graph",
    "Graph6Error",
    "IntMatrix",
    "InvariantViolation",
    "ModPoly",
    "PhiReport",
    "RationalOrthogonal",
    "SnfResult",
    "SpectrumKey",
    "SquarefreeDecomposition",
    "STATUS_CONDITION_FAILS",
    "STATUS_DGS_BY_MAIN",
    "STATUS_DGS_BY_SQF",
    "STATUS_FACTORIZATION_INCOMPLETE",
    "STATUS_NOT_CONTROLLABLE",
    "certify_dgs",
    "char_poly_int",
    "char_poly_mod_p",
    "Xorshift64Star",
    "char_poly_mod_p",
    "check_controllable",
    "check_sqf_condition",
    "complement",
    "derive_seed",
    "determinant",
    "emit_adjacency",
    "emit_graph6",
    "enumerate_generalized_cospectral_classes",
    "factor_integer",
    "format_poly",
    "is_prime",
    "level_parity_audit",
    "nullity_p",
    "nullspace_basis_p",
    "p_main_poly",
    "parse_adjacency",
    "parse_graph6",
    "phi_p",
    "phi_report",
    "poly_gcd",
    "random_graph",
    "rank_p",
    "rational_solve",
    "recover_q",
    "reduced_walk_matrix",
    "restricted_char_poly",
    "sfp",
    "smith_normal_form",
    "spectrum_key",
    "sqrt_poly",
    "squarefree_decomposition",
    "verify_regular_orthogonal",
    "walk_matrix",
]
