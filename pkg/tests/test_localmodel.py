from __future__ import annotations

import pytest

from spinlm.errors import InvalidInput
from spinlm.indexcomb import perp_subset
from spinlm.localmodel import (
    BlockSystem, ChartConfig, a_S_minor, build_chart_presentation, ceil_parity_guard, chart_report,
    derive_lm2, derive_lm3, free_variable_count, lattice_valuations, rank_stratum_of_point,
    verify_prop_sign, verify_prop_wedge, wedge_lattice_basis,
)
from spinlm.polyalg.fields import prime_field
from spinlm.rings import graded_quotient_dims

TARGETS = [(2, 1), (3, 1), (4, 1), (4, 2)]


def test_config_validation():
    assert ChartConfig(5, 2).r == 1
    with pytest.raises(InvalidInput):
        ChartConfig(3, 2)


def test_block_shapes():
    bs = BlockSystem(ChartConfig(4, 1))
    assert bs.chart_matrix().nrows == 8 and bs.chart_matrix().ncols == 4
    assert (bs.X.nrows, bs.X.ncols) == (2, 2)


@pytest.mark.parametrize("n,i", TARGETS + [(3, 0), (5, 2)])
def test_lm2(n, i):
    res = derive_lm2(ChartConfig(n, i))
    assert res.matches_expansion and res.vanishes_after_substitution


@pytest.mark.parametrize("n,i", TARGETS + [(3, 0)])
def test_lm3(n, i):
    res = derive_lm3(ChartConfig(n, i))
    assert res.ok
    assert res.printed_in_expansion and res.reduced_equivalent


def test_lm3_printed_lists_miss_an_equation():
    # the expansion contains N4M5+N5M4 = 0, which the printed lists leave out
    res = derive_lm3(ChartConfig(2, 1))
    assert len(res.omitted_equations) == 1
    assert res.printed_six_match_x is False
    assert derive_lm3(ChartConfig(4, 2)).omitted_equations and len(derive_lm3(ChartConfig(4, 2)).omitted_equations) == 4


@pytest.mark.parametrize("n,i", [(n, i) for n in range(2, 5) for i in range(1, n // 2 + 1)])
def test_wedge_and_sign_props(n, i):
    cfg = ChartConfig(n, i)
    assert verify_prop_wedge(cfg)[0]
    assert verify_prop_sign(cfg)[0]


def test_ceil_parity_guard():
    assert ceil_parity_guard(12)


def test_a_S_minor_examples():
    cfg = ChartConfig(2, 1)
    # rows 1 and 4 are the identity blocks of the chart matrix
    m = a_S_minor(cfg, (1, 4))
    assert m.degree() == 0 and abs(m.coefficient((0,) * m.ring.nvars)) == 1
    bs = BlockSystem(cfg)
    assert a_S_minor(cfg, (1, 2), bs).variables() <= {0, 1, 2, 3}


@pytest.mark.parametrize("n,i,expected", [(2, 1, 0), (3, 1, 2), (4, 1, 5), (4, 2, 0)])
def test_free_variables(n, i, expected):
    assert free_variable_count(ChartConfig(n, i)) == expected == (n - 2 * i) * (n + 2 * i - 1) // 2


@pytest.mark.parametrize("n,i", TARGETS)
@pytest.mark.parametrize("variant", ["naive", "plus", "minus"])
def test_presentation_matches_ring_ideal(n, i, variant):
    pres = build_chart_presentation(ChartConfig(n, i), variant)
    assert pres.ok


def test_presentation_n2_dims():
    naive = build_chart_presentation(ChartConfig(2, 1), "naive").ideal
    plus = build_chart_presentation(ChartConfig(2, 1), "plus").ideal
    assert [g.quotient_dim for g in graded_quotient_dims(naive, 4)] == [1, 4, 4, 4, 4]
    assert [g.quotient_dim for g in graded_quotient_dims(plus, 4)] == [1, 2, 2, 2, 2]


def test_lattice_basis_n2():
    cfg = ChartConfig(2, 1)
    plus, minus = wedge_lattice_basis(cfg, 1), wedge_lattice_basis(cfg, -1)
    assert plus.ok and minus.ok
    assert (1, 2) in plus.B0 and (1, 2) not in minus.B0
    e = {x.S: x for x in plus.entries}[(1, 4)]
    assert (e.d, e.d_perp, e.h_exponents) == (1, 0, (0, 1))


def test_lattice_basis_zero_window():
    L = wedge_lattice_basis(ChartConfig(3, 0), 1)
    assert all(e.d == 0 and e.h_exponents == (0, 0) for e in L.entries)


@pytest.mark.parametrize("n,i", TARGETS)
@pytest.mark.parametrize("sign", [1, -1])
def test_lattice_pair_selection(n, i, sign):
    L = wedge_lattice_basis(ChartConfig(n, i), sign)
    B0 = set(L.B0)
    for e in L.entries:
        P = perp_subset(e.S, n)
        if P != e.S:
            assert (e.S in B0) != (P in B0)
    assert L.ok


def test_alternative_bases_are_inconsistent():
    cfg = ChartConfig(2, 1)
    assert lattice_valuations(cfg, "dual") == [0, 0, 0, 1]
    for basis in ("listed", "chart"):
        L = wedge_lattice_basis(cfg, 1, basis)
        assert not L.checks["valuations_match_d"]


def test_rank_stratum():
    cfg = ChartConfig(2, 1)
    assert rank_stratum_of_point(cfg, [[0, 0], [0, 0]]) == 0
    assert rank_stratum_of_point(cfg, [[1, 0], [0, 0]]) == 1
    assert rank_stratum_of_point(cfg, [[0, 3], [0, 0]], prime_field(5)) == 1
    with pytest.raises(InvalidInput):
        rank_stratum_of_point(cfg, [[1, 0], [0, 1]])
    with pytest.raises(InvalidInput):
        rank_stratum_of_point(cfg, [[1, 0]])


def test_chart_report_keys():
    rep = chart_report(ChartConfig(3, 1), "naive")
    assert rep["free_vars"] == rep["free_vars_formula"] == 2
    for key in ("lm2_ok", "lm3_ok", "wedge_ok", "sign_ok", "presentation_match"):
        assert rep[key] is True
