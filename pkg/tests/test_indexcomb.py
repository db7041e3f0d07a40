from __future__ import annotations

from itertools import combinations, permutations

import pytest

from spinlm.errors import InvalidInput, Unsupported
from spinlm.indexcomb import (
    bar, base_index, code_of, d_comparison, d_of, half, index_set, is_barred, label,
    parse_label, perm_sign, perp_barred, perp_subset, sign_sigma, sign_tau,
)


def parity_by_cycles(seq):
    # independent oracle: sign from the cycle decomposition of the sorting permutation
    order = sorted(range(len(seq)), key=lambda k: seq[k])
    seen, sign = set(), 1
    for s in range(len(seq)):
        if s in seen:
            continue
        length, k = 0, s
        while k not in seen:
            seen.add(k)
            k = order[k]
            length += 1
        sign *= -1 if length % 2 == 0 else 1
    return sign


def test_codes_even_and_odd():
    assert code_of(1, True, 2) == 1 and code_of(1, False, 2) == 2
    assert code_of(0, False, 3) == 3
    assert index_set(4) == [1, 2, 3, 4]
    assert half(5) == 2
    assert [label(c, 3) for c in index_set(3)] == ["1\u0304", "1", "0"]


def test_bar_is_involution():
    for N in range(1, 8):
        for c in index_set(N):
            assert bar(bar(c, N), N) == c
    assert bar(3, 3) == 3  # the middle index 0 is fixed


def test_label_roundtrip():
    for N in range(1, 7):
        for c in index_set(N):
            assert parse_label(label(c, N), N) == c
            assert base_index(c, N) == base_index(bar(c, N), N)
            assert is_barred(c, N) == (c % 2 == 1 and not (N % 2 and c == N))


def test_perp_examples():
    assert perp_subset((1, 2), 2) == (1, 2)
    assert perp_subset((1, 4), 2) == (2, 3)
    assert perp_subset((1, 2, 3), 3) == (1, 2, 3)


def test_perp_is_involution_exhaustive():
    for n in range(1, 7):
        for S in combinations(range(1, 2 * n + 1), n):
            assert perp_subset(perp_subset(S, n), n) == S


def test_perp_rejects_bad_subsets():
    with pytest.raises(InvalidInput):
        perp_subset((1,), 2)
    with pytest.raises(InvalidInput):
        perp_subset((1, 5), 2)


def test_sign_sigma_examples():
    assert sign_sigma((1, 2), 2) == 1
    assert sign_sigma((1, 3), 2) == -1
    assert sign_sigma((3, 4), 2) == 1


def test_perm_sign_matches_cycle_oracle():
    for k in range(1, 7):
        for p in permutations(range(k)):
            assert perm_sign(p) == parity_by_cycles(p)


def test_sign_tau_examples():
    assert sign_tau((1,), 2) == 1
    assert sign_tau((2,), 2) == -1
    # N=4, U={1bar,1}: perp is {2bar,2}, barred tail (2,2bar) gives the sequence (1,2,4,3)
    assert perp_barred((1, 2), 4) == (3, 4)
    assert sign_tau((1, 2), 4) == parity_by_cycles([1, 2, 4, 3]) == -1
    with pytest.raises(Unsupported):
        sign_tau((1,), 3)


def test_d_examples():
    assert d_of((1, 4), 2, 1) == 1
    assert all(d_of(S, 2, 0) == 0 for S in combinations(range(1, 5), 2))
    assert d_of((4, 5, 6), 3, 2) == 2
    # S={2,3}: perp {1,4}; d_S=0 < d=1
    assert d_comparison((2, 3), 2, 1) == "<"
    # S={2,3,4}, n=3, i=1: perp = {1,2,6}, d_S=0 < d_perp=1
    assert perp_subset((2, 3, 4), 3) == (1, 2, 6)
    assert d_comparison((2, 3, 4), 3, 1) == "<"


def test_d_comparison_zero_window():
    for n in range(1, 5):
        for S in combinations(range(1, 2 * n + 1), n):
            assert d_comparison(S, n, 0) == "="


def test_d_rejects_bad_window():
    with pytest.raises(InvalidInput):
        d_of((1, 2), 2, 3)
