from __future__ import annotations

import random
from itertools import combinations

import pytest

from spinlm.config import Budget
from spinlm.errors import BudgetExceeded, InvalidInput, Unsupported
from spinlm.indexcomb import perp_barred, sign_tau
from spinlm.polyalg.fields import QQ, prime_field
from spinlm.polyalg.matrices import ConstMatrix, bideterminant
from spinlm.rings import (
    GradedRing, build_ideal, cayley_element, compare_char_p, convert_J_to_H, graded_quotient_dims,
    is_special_orthogonal, l_sum, membership, normal_form, nzd_f_ranks, shapes_respect_order,
    spin_generator, standard_bitableaux, verify_L_lemma, verify_so_invariance, verify_standard_basis,
)
from spinlm.tableaux import Bitableau, Tableau, canonical_tableau, count_row, partitions_of

F3 = prime_field(3)


def dims(N, variant, d, field=QQ, form="J"):
    return [g.quotient_dim for g in graded_quotient_dims(build_ideal(N, form, variant, field), d)]


def test_n2_naive_generators_by_hand():
    I = build_ideal(2, "J", "naive")
    R = I.ring
    a, b, c, d = (R.var(k) for k in range(4))
    expected = {2 * a * b, a * d + b * c, 2 * c * d, 2 * a * c, 2 * b * d, a * d - b * c}
    assert {repr(sorted(g.terms.items())) for g in I.generators} == {repr(sorted(g.terms.items())) for g in expected}


def test_n2_plus_adds_linear_generators():
    I = build_ideal(2, "J", "plus")
    R = I.ring
    b, c = R.var(1), R.var(2)
    assert I.generators[-2:] == [b * 2, c * 2]


@pytest.mark.parametrize("field", [QQ, F3, prime_field(5)])
@pytest.mark.parametrize("form", ["J", "H"])
def test_n2_closed_forms(field, form):
    # plus: k[x1,x4]/(x1 x4); naive: monomial basis {a^d, b^d, c^d, d^d}
    assert dims(2, "plus", 5, field, form) == [1, 2, 2, 2, 2, 2]
    assert dims(2, "minus", 5, field, form) == [1, 2, 2, 2, 2, 2]
    assert dims(2, "naive", 4, field, form) == [1, 4, 4, 4, 4]


def test_n3_naive_matches_row_count_squares():
    # only one-row shapes survive; each contributes (#O(3)-standard rows)^2
    oracle = [1] + [count_row((d,), 3)["count_ON"] ** 2 for d in range(1, 5)]
    assert dims(3, "naive", 4) == oracle == [1, 9, 25, 49, 81]


def test_n4_frozen_dims():
    assert dims(4, "naive", 3) == [1, 16, 117, 512]
    assert dims(4, "plus", 3) == [1, 16, 99, 384]
    assert dims(4, "minus", 3) == [1, 16, 99, 384]


def test_membership_examples():
    I = build_ideal(2, "J", "naive")
    R = GradedRing(I)
    for g in I.generators:
        assert membership(g, R)
    a = I.ring.var(0)
    assert not membership(a * a, R)


@pytest.mark.parametrize("N,variant,d", [(2, "naive", 3), (2, "plus", 3), (2, "minus", 3), (3, "naive", 3), (4, "plus", 2)])
def test_standard_basis(N, variant, d):
    for v in verify_standard_basis(N, variant, QQ, d):
        assert v.passed, v


def test_standard_basis_n2_examples():
    v = verify_standard_basis(2, "naive", QQ, 2)[2]
    assert (v.standard_count, v.quotient_dim) == (4, 4)
    v = verify_standard_basis(2, "plus", QQ, 1)[1]
    assert (v.standard_count, v.quotient_dim) == (2, 2)


def test_both_rule_undercounts():
    # both tableaux SO-standard gives one basis element per degree at N=2
    assert len(standard_bitableaux(2, 3, "plus", rule="both")) == 1
    assert len(standard_bitableaux(4, 2, "plus", rule="both")) == 90


def test_normal_form():
    I = build_ideal(3, "J", "naive")
    R = GradedRing(I)
    B = standard_bitableaux(3, 2)[5]
    nf = normal_form(bideterminant(B, I.X), R)
    assert nf == {2: [(B, 1)]}
    assert normal_form(I.generators[0], R) == {2: []}
    # a non-standard column (1bar,1) against itself: supported on shapes at most (1,1)
    bad = Bitableau(Tableau(((1, 1), (2,))), Tableau(((1, 1), (2,))))
    nf = normal_form(bideterminant(bad, I.X), R)
    assert shapes_respect_order(nf[3], (2, 1))


def perp_generator_sign(N, U, U2, rel):
    return rel * sign_tau(U, N) * sign_tau(U2, N)


@pytest.mark.parametrize("N", [2, 4])
@pytest.mark.parametrize("variant,rel", [("plus", -1), ("minus", 1)])
def test_spin_generators_perp_consistent(N, variant, rel):
    X = build_ideal(N, "J", "naive").X
    m = N // 2
    for U in combinations(range(1, N + 1), m):
        for U2 in combinations(range(1, N + 1), m):
            f = spin_generator(X, "J", U, U2, rel)
            g = spin_generator(X, "J", perp_barred(U, N), perp_barred(U2, N), rel)
            assert g == f.scale(perp_generator_sign(N, U, U2, rel))


def test_l_lemma_cases():
    X = build_ideal(4, "J", "naive").X
    R = GradedRing(build_ideal(4, "J", "naive"))
    T = canonical_tableau((2, 2))
    assert verify_L_lemma(4, (2, 2), [], 2, [], T, ring=R)
    assert verify_L_lemma(4, (2,), [], 1, [], canonical_tableau((2,)), ring=R)
    # with a forbidden index the sum is no longer in the ideal
    assert not R.contains(l_sum(X, [], canonical_tableau((2,)), [1], 1))
    with pytest.raises(InvalidInput):
        verify_L_lemma(4, (2,), [1], 1, [], canonical_tableau((2,)), ring=R)


@pytest.mark.parametrize("N,field", [(2, QQ), (4, QQ), (4, prime_field(5))])
def test_so_invariance(N, field):
    rng = random.Random(N)
    R = GradedRing(build_ideal(N, "J", "plus", field))
    g = cayley_element(N, field, rng)
    assert is_special_orthogonal(g, N)
    assert verify_so_invariance(N, "plus", g, field, ring=R)
    assert verify_so_invariance(N, "plus", ConstMatrix.identity(N, field), field, ring=R)


def test_so_invariance_rejects_non_special():
    g = ConstMatrix([[0, 1], [1, 0]])  # orthogonal with det -1
    with pytest.raises(InvalidInput):
        verify_so_invariance(2, "plus", g)


def test_minus_det_flip_swaps_variants():
    # an orthogonal g of determinant -1 maps the plus ideal onto the minus ideal
    g = ConstMatrix([[0, 1], [1, 0]])
    from spinlm.rings import act_left
    Ip, Im = build_ideal(2, "J", "plus"), build_ideal(2, "J", "minus")
    Rm = GradedRing(Im)
    assert all(Rm.contains(act_left(f, g, Ip.X)) for f in Ip.generators)


def test_nzd_f():
    rows = nzd_f_ranks(QQ, 2)
    assert [r["degree"] for r in rows] == [0, 1, 2]
    assert all(r["injective"] for r in rows)
    assert rows[0]["source_dim"] == 1 and rows[1]["source_dim"] == 16


def test_compare_char_p():
    out = compare_char_p(2, "plus", [3, 5, 7], 4)
    assert out["differing"] == []
    assert out["dims"]["F7"] == [1, 2, 2, 2, 2]
    with pytest.raises(InvalidInput):
        compare_char_p(2, "plus", [2], 2)


def test_forms_agree_and_convert():
    for N in (2, 3, 4):
        for variant in (("naive", "plus") if N % 2 == 0 else ("naive",)):
            assert dims(N, variant, 2, form="J") == dims(N, variant, 2, form="H")
    IJ, IH = build_ideal(4, "J", "plus"), build_ideal(4, "H", "plus")
    R = GradedRing(IH)
    assert all(R.contains(convert_J_to_H(f, 4)) for f in IJ.generators)


def test_errors():
    with pytest.raises(Unsupported):
        build_ideal(3, "J", "plus")
    with pytest.raises(InvalidInput):
        build_ideal(2, "K", "naive")
    with pytest.raises(BudgetExceeded):
        graded_quotient_dims(build_ideal(4, "J", "naive"), 3, Budget(max_monomials=100))
