"""Property tests for the invariants of each module."""

from __future__ import annotations

import random

from hypothesis import given, settings, strategies as st

from spinlm.indexcomb import d_comparison, d_of, perp_subset, sign_sigma
from spinlm.localmodel import ChartConfig, wedge_lattice_basis
from spinlm.polyalg.fields import QQ, prime_field
from spinlm.polyalg.identities import check_binet_cauchy, check_jacobi, check_laplace
from spinlm.polyalg.matrices import C_matrix, ConstMatrix, VarMatrix, conjugate_variables
from spinlm.polyalg.poly import PolyRing
from spinlm.tableaux import conjugate, enumerate_on_standard, is_on_standard, tableau_perp

FIELDS = st.sampled_from([QQ, prime_field(5), prime_field(7)])


@st.composite
def subsets(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    S = tuple(sorted(draw(st.permutations(range(1, 2 * n + 1)))[:n]))
    return n, S


@st.composite
def matrices(draw, max_size=6, square=True):
    F = draw(FIELDS)
    r = draw(st.integers(1, max_size))
    c = r if square else draw(st.integers(1, max_size))
    rows = draw(st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r))
    return ConstMatrix(rows, F)


@given(subsets())
def test_perp_involution(data):
    n, S = data
    assert perp_subset(perp_subset(S, n), n) == S


@given(subsets())
def test_sign_formula(data):
    n, S = data
    assert sign_sigma(S, n) == (-1) ** (sum(S) + (n + 1) // 2)


@given(subsets(), st.data())
def test_d_comparison_window_count(data, more):
    n, S = data
    i = more.draw(st.integers(0, n))
    lhs = d_of(S, n, i) <= d_of(perp_subset(S, n), n, i)
    assert lhs == (sum(1 for x in S if i < x <= 2 * n - i) >= n - i)
    assert (d_comparison(S, n, i) != ">") == lhs


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_laplace(A, data):
    d = A.shape[0]
    F = sorted(data.draw(st.sets(st.integers(1, d), min_size=1, max_size=d)))
    assert check_laplace(A, F)


@settings(max_examples=60, deadline=None)
@given(matrices(square=False), st.data())
def test_binet_cauchy(A, data):
    r, e = A.shape
    c = data.draw(st.integers(1, 6))
    B = ConstMatrix(data.draw(st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=e, max_size=e)), A.field)
    p = data.draw(st.integers(1, min(r, e, c)))
    S = sorted(data.draw(st.permutations(range(1, r + 1)))[:p])
    S2 = sorted(data.draw(st.permutations(range(1, c + 1)))[:p])
    assert check_binet_cauchy(A, B, S, S2)


@settings(max_examples=60, deadline=None)
@given(matrices(), st.data())
def test_jacobi(A, data):
    if A.det() == 0:
        return
    d = A.shape[0]
    k = data.draw(st.integers(1, d))
    S = sorted(data.draw(st.permutations(range(1, d + 1)))[:k])
    S2 = sorted(data.draw(st.permutations(range(1, d + 1)))[:k])
    assert check_jacobi(A, S, S2)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(0, 2**32))
def test_conjugation_is_ring_homomorphism(N, seed):
    rng = random.Random(seed)
    X = VarMatrix(N)
    R = X.ring

    def rand_poly():
        p = R.zero()
        for _ in range(3):
            e = [0] * (N * N)
            e[rng.randrange(N * N)] += 1
            e[rng.randrange(N * N)] += 1
            p = p + R.monomial(e, rng.randint(-3, 3))
        return p

    p, q = rand_poly(), rand_poly()
    C = C_matrix(N)
    assert conjugate_variables(p * q, C) == conjugate_variables(p, C) * conjugate_variables(q, C)
    assert conjugate_variables(p + q, C) == conjugate_variables(p, C) + conjugate_variables(q, C)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=3).map(lambda xs: tuple(sorted(xs, reverse=True))),
       st.sampled_from([2, 3, 4]))
def test_enumeration_sound_and_perp_involutive(lam, N):
    conj = conjugate(lam)
    tabs = enumerate_on_standard(lam, N)
    assert all(is_on_standard(T, N) for T in tabs)
    if N % 2 == 0 and conj[0] <= N // 2:
        assert all(tableau_perp(tableau_perp(T, N), N) == T for T in tabs)
    if conj[0] + (conj[1] if len(conj) > 1 else 0) > N:
        assert tabs == []


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 5).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, n // 2))), st.sampled_from([1, -1]))
def test_lattice_b0_picks_one_per_pair(cfg, sign):
    n, i = cfg
    L = wedge_lattice_basis(ChartConfig(n, i), sign)
    assert L.ok
    assert len(L.B0) * 2 == len(L.entries)


@given(st.integers(-50, 50), st.integers(1, 50), st.sampled_from([3, 5, 7, 101]))
def test_field_inverse(a, b, p):
    F = prime_field(p)
    x = F(a * b + 1)
    if x:
        assert F(x * F.inv(x)) == 1
    R = PolyRing(1, F)
    assert (R.var(0) * p).is_zero()
