"""Exact fields, sparse polynomials, matrices and minor identities."""

from .fields import QQ, ExactField, parse_field, prime_field
from .identities import check_binet_cauchy, check_jacobi, check_laplace
from .matrices import (
    C_matrix,
    ConstMatrix,
    H_matrix,
    J_matrix,
    VarMatrix,
    bideterminant,
    conjugate_variables,
    minor,
)
from .poly import ExactPoly, PolyRing, monomials_of_degree

__all__ = [
    "QQ",
    "ExactField",
    "parse_field",
    "prime_field",
    "check_binet_cauchy",
    "check_jacobi",
    "check_laplace",
    "C_matrix",
    "ConstMatrix",
    "H_matrix",
    "J_matrix",
    "VarMatrix",
    "bideterminant",
    "conjugate_variables",
    "minor",
    "ExactPoly",
    "PolyRing",
    "monomials_of_degree",
]
