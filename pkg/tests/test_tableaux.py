from __future__ import annotations

from itertools import product

import pytest

from spinlm.errors import InvalidInput
from spinlm.tableaux import (
    Tableau, as_partition, canonical_tableau, conjugate, count_row, enumerate_on_standard,
    gl_standard_tableaux, is_gl_standard, is_on_standard, is_so_standard, partition_lt,
    partitions_of, tableau_order_prec, tableau_perp,
)

B1, U1, B2, U2 = 1, 2, 3, 4  # 1bar, 1, 2bar, 2


def all_fillings(lam, N):
    # brute-force oracle: every filling of the shape with entries in [1, N]
    cells = sum(lam)
    for vals in product(range(1, N + 1), repeat=cells):
        rows, k = [], 0
        for length in lam:
            rows.append(tuple(vals[k:k + length]))
            k += length
        yield Tableau(tuple(rows))


def test_conjugate_examples():
    assert conjugate((2, 2, 1)) == (3, 2)
    assert conjugate((1,)) == (1,)
    assert conjugate((4, 2, 2, 1)) == (4, 3, 1, 1)
    for d in range(1, 7):
        for lam in partitions_of(d):
            assert conjugate(conjugate(lam)) == lam


def test_partition_validation():
    with pytest.raises(InvalidInput):
        as_partition((1, 2))
    assert set(partitions_of(4)) == {(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)}
    assert len(partitions_of(5)) == 7


def test_partition_order_is_dominance_refinement():
    assert partition_lt((1, 1), (2,))
    assert not partition_lt((2,), (2,))


def test_gl_standard_examples():
    assert is_gl_standard(Tableau(((B1,),)), 2)
    assert not is_gl_standard(Tableau(((U1,), (B1,))), 2)
    assert is_gl_standard(Tableau(((B1, U1, U1),)), 2)


def test_on_standard_examples():
    assert is_on_standard(Tableau(((U1, U1),)), 2)
    assert not is_on_standard(Tableau(((B1, U1),)), 2)
    assert not is_on_standard(Tableau(((B1, B1), (U1, U1))), 4)


def test_enumeration_examples():
    assert enumerate_on_standard((1,), 2) == [Tableau(((B1,),)), Tableau(((U1,),))]
    assert enumerate_on_standard((1, 1), 2) == [Tableau(((B1,), (U1,)))]
    assert len(enumerate_on_standard((1,), 3)) == 3


@pytest.mark.parametrize("N", [2, 3, 4])
def test_enumeration_matches_brute_force_filter(N):
    for d in range(1, 6):
        for lam in partitions_of(d):
            if len(lam) > N:
                continue
            brute = sorted((T for T in all_fillings(lam, N) if is_on_standard(T, N)), key=lambda T: T.word())
            assert sorted(enumerate_on_standard(lam, N), key=lambda T: T.word()) == brute


def test_gl_enumeration_is_exactly_the_gl_standard_fillings():
    for lam in [(2, 1), (3,), (1, 1, 1)]:
        brute = [T for T in all_fillings(lam, 3) if is_gl_standard(T, 3)]
        assert sorted(gl_standard_tableaux(lam, 3), key=lambda T: T.word()) == sorted(brute, key=lambda T: T.word())


def test_count_row_frozen():
    # hook-content for GL(3) shape (2,1) is 8; five of them are O(3)-standard
    assert count_row((2, 1), 3) == {"N": 3, "lambda": (2, 1), "count_GL": 8, "count_ON": 5, "count_SON": None}
    assert count_row((1,), 3)["count_ON"] == 3


def test_canonical_tableau():
    assert canonical_tableau((2, 2, 1)).rows == ((1, 1), (3, 3), (5,))
    assert canonical_tableau((1,)).rows == ((1,),)
    assert canonical_tableau((3,)).rows == ((1, 1, 1),)


def test_perp_examples():
    assert tableau_perp(Tableau(((B1,),)), 4) == Tableau(((B1,),))
    assert tableau_perp(Tableau(((B1,),)), 2) == Tableau(((B1,),))
    T = Tableau(((B1,), (U1,)))
    assert tableau_perp(T, 4).column(1) == (B2, U2)


def test_perp_involution_and_pair_selection():
    for N in (2, 4):
        m = N // 2
        for d in range(1, 5):
            for lam in partitions_of(d):
                if len(lam) != m:
                    continue
                for T in enumerate_on_standard(lam, N):
                    P = tableau_perp(T, N)
                    assert tableau_perp(P, N) == T
                    if P != T:
                        assert is_so_standard(T, N) != is_so_standard(P, N)
                assert tableau_perp(canonical_tableau(lam), N) == canonical_tableau(lam)


def test_so_standard_short_columns_inherit():
    for T in enumerate_on_standard((2,), 4):
        assert is_so_standard(T, 4)


def test_order_prec():
    T = Tableau(((B1,),))
    assert not tableau_order_prec(T, T)
    assert tableau_order_prec(Tableau(((B1,),)), Tableau(((U1,),)))
    # right-most column decides
    assert tableau_order_prec(Tableau(((U1, U1),)), Tableau(((B1, U2),)))
