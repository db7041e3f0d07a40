from __future__ import annotations

from math import prod

import pytest

from spinlm.config import Budget
from spinlm.errors import BudgetExceeded, CharacteristicError, InvalidInput
from spinlm.polyalg.fields import prime_field
from spinlm.repthy import (
    check_canonical_identity, contraction_subspace, m_lambda_dim, o_lambda_dim, verify_evaluation_map,
    wedge, young_apply,
)
from spinlm.tableaux import Tableau, canonical_tableau, conjugate, enumerate_on_standard, partitions_of


def hook_content(lam, N):
    # independent GL(N) Weyl dimension oracle
    conj = conjugate(lam)
    num = prod(N + c - r for r, length in enumerate(lam) for c in range(length))
    hooks = prod(length - c + conj[c] - r - 1 for r, length in enumerate(lam) for c in range(length))
    return num // hooks


def test_young_apply_small_cases():
    assert young_apply((1,), Tableau(((1,),))) == {(1,): 1}
    # a single column gives the wedge of its entries
    assert young_apply((1, 1, 1), Tableau(((1,), (3,), (4,)))) == wedge([1, 3, 4])


@pytest.mark.parametrize("lam", [lam for d in range(1, 5) for lam in partitions_of(d)])
def test_canonical_identity(lam):
    assert check_canonical_identity(lam)


def test_canonical_identity_needs_row_first_order():
    assert not check_canonical_identity((2, 1), order="column_first")


@pytest.mark.parametrize("N", [2, 3, 4])
def test_m_lambda_is_gl_weyl_module(N):
    for d in range(1, 4):
        for lam in partitions_of(d):
            if len(lam) <= N:
                assert m_lambda_dim(lam, N) == hook_content(lam, N)
    assert m_lambda_dim((1, 1), 2) == 1 and m_lambda_dim((1,), 2) == 2 and m_lambda_dim((2,), 3) == 6


@pytest.mark.parametrize("lam,order", [((2, 1), "row_first"), ((2,), "column_first"), ((1, 1, 1), "row_first")])
def test_restricted_generating_set_is_exact(lam, order):
    assert m_lambda_dim(lam, 3, restrict=True, order=order) == m_lambda_dim(lam, 3, restrict=False, order=order)


def test_contraction_subspace_examples():
    vecs, r = contraction_subspace(2, 2)
    assert r == 1 and vecs[0] == {(1, 2): 1, (2, 1): 1}
    assert contraction_subspace(1, 3) == ([], 0)
    # l=3, N=2: the three slot pairs span a 6-dimensional space
    assert contraction_subspace(3, 2)[1] == 6


def test_o_lambda_known_values():
    assert o_lambda_dim((1,), 2) == 2
    assert o_lambda_dim((1, 1), 2) == 1
    assert o_lambda_dim((2,), 2) == 2
    # traceless symmetric squares and exterior squares
    assert o_lambda_dim((2,), 3) == 5 and o_lambda_dim((2,), 4) == 9
    assert o_lambda_dim((1, 1), 4) == 6


@pytest.mark.parametrize("N", [2, 3, 4])
def test_o_lambda_matches_o_standard_count(N):
    for d in range(1, 5):
        for lam in partitions_of(d):
            conj = conjugate(lam)
            if conj[0] + (conj[1] if len(conj) > 1 else 0) > N:
                continue
            assert o_lambda_dim(lam, N) == len(enumerate_on_standard(lam, N))


def test_evaluation_map():
    assert verify_evaluation_map((2, 1), 4)
    assert verify_evaluation_map((), 2)
    assert verify_evaluation_map((1,), 2)


def test_errors():
    with pytest.raises(InvalidInput):
        o_lambda_dim((1, 1, 1), 2)
    with pytest.raises(CharacteristicError):
        young_apply((2, 1), canonical_tableau((2, 1)), prime_field(3))
    with pytest.raises(BudgetExceeded):
        o_lambda_dim((1,) * 3, 4, budget=Budget(max_tensor_length=2))
