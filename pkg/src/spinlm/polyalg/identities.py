"""Exact checks of the Laplace, Binet-Cauchy and Jacobi minor identities."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ..errors import InvalidInput, SingularMatrix
from ..indexcomb import complement, perm_sign, sign_sigma
from .matrices import ConstMatrix


def laplace_epsilon(F: Sequence[int], U: Sequence[int], d: int) -> int:
    """Sign of the Laplace term, as the product of the parities of ``F + D\\F`` and ``U + D\\U``."""
    return perm_sign(list(F) + list(complement(F, d))) * perm_sign(list(U) + list(complement(U, d)))


def laplace_expansion(A: ConstMatrix, F: Sequence[int]):
    d, c = A.shape
    if d != c:
        raise InvalidInput("Laplace expansion needs a square matrix")
    F = sorted(F)
    Fc = complement(F, d)
    K = A.field
    total = 0
    for U in combinations(range(1, d + 1), len(F)):
        Uc = complement(U, d)
        total += laplace_epsilon(F, U, d) * A.minor(F, U) * A.minor(Fc, Uc)
    return K(total)


def check_laplace(A: ConstMatrix, F: Sequence[int]) -> bool:
    return laplace_expansion(A, F) == A.det()


def binet_cauchy_sum(A: ConstMatrix, B: ConstMatrix, S: Sequence[int], S2: Sequence[int]):
    r, e = A.shape
    e2, c = B.shape
    if e != e2:
        raise InvalidInput(f"inner dimensions differ: {A.shape} x {B.shape}")
    if len(S) != len(S2) or len(S) > min(r, e, c):
        raise InvalidInput("index sets must have equal size p <= min dims")
    K = A.field
    return K(sum(A.minor(S, U) * B.minor(U, S2) for U in combinations(range(1, e + 1), len(S))))


def check_binet_cauchy(A: ConstMatrix, B: ConstMatrix, S: Sequence[int], S2: Sequence[int]) -> bool:
    return (A @ B).minor(S, S2) == binet_cauchy_sum(A, B, S, S2)


def jacobi_rhs(A: ConstMatrix, S: Sequence[int], S2: Sequence[int], det_power: int = 1):
    """``det(A)^det_power (-1)^(sum S + sum S') [D\\S' : D\\S](A^{-1})``.

    ``det_power = 1`` is the valid identity.  ``det_power = -1`` gives the
    variant with an inverted determinant, which agrees only when ``det A = +-1``.
    """
    d = A.shape[0]
    K = A.field
    det = A.det()
    if det == 0:
        raise SingularMatrix("Jacobi identity needs an invertible matrix")
    inv = A.inverse()
    sign = -1 if (sum(S) + sum(S2)) % 2 else 1
    factor = det if det_power == 1 else K.inv(det)
    return K(factor * sign * inv.minor(complement(S2, d), complement(S, d)))


def jacobi_rhs_sigma(A: ConstMatrix, S: Sequence[int], S2: Sequence[int]):
    """Same as :func:`jacobi_rhs` for ``d = 2p``, with the sign written as ``sgn(sigma_S) sgn(sigma_S')``."""
    d = A.shape[0]
    if d % 2 or len(S) != d // 2:
        raise InvalidInput("the sigma form needs d even and |S| = d/2")
    K = A.field
    det = A.det()
    if det == 0:
        raise SingularMatrix("Jacobi identity needs an invertible matrix")
    p = d // 2
    sign = sign_sigma(S, p) * sign_sigma(S2, p)
    return K(det * sign * A.inverse().minor(complement(S2, d), complement(S, d)))


def check_jacobi(A: ConstMatrix, S: Sequence[int], S2: Sequence[int]) -> bool:
    """Both the parity form and, when ``d = 2|S|``, the sigma-sign form."""
    S, S2 = sorted(S), sorted(S2)
    if len(S) != len(S2):
        raise InvalidInput("index sets must have the same size")
    lhs = A.minor(S, S2)
    ok = lhs == jacobi_rhs(A, S, S2)
    d = A.shape[0]
    if ok and d % 2 == 0 and len(S) == d // 2:
        ok = lhs == jacobi_rhs_sigma(A, S, S2)
    return ok
