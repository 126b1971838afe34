"""Exact computation and range verification of Legendre-symbol determinant
identities: squares matrices, their eigenvalue character sums, Carlitz and
Chapman closed forms, and the associated quadratic-field invariants."""

from .ntcore import (
    PrimeCtx,
    TwoSquare,
    is_perfect_square,
    is_prime,
    jacobsthal_sum,
    legendre,
    perm_sign_cycles,
    perm_sign_formula,
    two_square_decompose,
)
from .matrices import (
    AffineMatrix,
    SignMatrix,
    carlitz_matrix,
    chapman_matrix,
    evil_matrix,
    squares_matrix,
    squares_star_matrix,
)
from .exactla import IntPoly, char_poly, det_affine, det_exact, det_mod, hadamard_bound
from .charsums import (
    CyclotomicElt,
    EigenReport,
    eigen_verify,
    eigenvalue_exact,
    eigenvalue_float,
    pair_product_square,
    product_identity,
    row_identity_check,
)
from .quadfield import (
    ClassData,
    QuadUnit,
    chapman_verify,
    class_data,
    class_number,
    fundamental_unit,
)
from .harness import CheckResult, RunConfig, run, run_check

__all__ = [
    "AffineMatrix",
    "CheckResult",
    "ClassData",
    "CyclotomicElt",
    "EigenReport",
    "IntPoly",
    "PrimeCtx",
    "QuadUnit",
    "RunConfig",
    "SignMatrix",
    "TwoSquare",
    "carlitz_matrix",
    "chapman_matrix",
    "chapman_verify",
    "char_poly",
    "class_data",
    "class_number",
    "det_affine",
    "det_exact",
    "det_mod",
    "eigen_verify",
    "eigenvalue_exact",
    "eigenvalue_float",
    "evil_matrix",
    "fundamental_unit",
    "hadamard_bound",
    "is_perfect_square",
    "is_prime",
    "jacobsthal_sum",
    "legendre",
    "pair_product_square",
    "perm_sign_cycles",
    "perm_sign_formula",
    "product_identity",
    "row_identity_check",
    "run",
    "run_check",
    "squares_matrix",
    "squares_star_matrix",
    "two_square_decompose",
]

__version__ = "0.1.0"
