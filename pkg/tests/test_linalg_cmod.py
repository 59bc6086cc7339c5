from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conformal_calc import linalg
from conformal_calc.calg import eval_bracket, inner_derivation, virasoro
from conformal_calc.cmod import (
    L1, L2, PD, ConfMap, FormTable, FreeCMod, ModElem, ShapeError, apply_map, cend_bracket, cend_compose,
    cend_partial, check_form, direct_sum, format_elem, form_eval,
)
from conformal_calc.poly import Poly, lam

P1, P2 = Poly.var(L1), Poly.var(L2)

small = st.integers(-4, 4)


def matrices(max_rows=5, max_cols=5):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.tuples(st.just(c), st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r))))


def _rows(dense):
    return [{j: Fraction(v) for j, v in enumerate(row) if v} for row in dense]


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_nullity(data):
    ncols, dense = data
    basis = linalg.nullspace(_rows(dense), ncols)
    assert linalg.rank(_rows(dense), ncols) + len(basis) == ncols
    for v in basis:
        for row in dense:
            assert sum(a * x for a, x in zip(row, v)) == 0


@settings(max_examples=300, deadline=None)
@given(matrices(), st.lists(small, min_size=5, max_size=5))
def test_solve_consistent_systems(data, x0):
    ncols, dense = data
    x0 = x0[:ncols]
    rhs = [sum(a * x for a, x in zip(row, x0)) for row in dense]
    x = linalg.solve(_rows(dense), rhs, ncols)
    assert x is not None
    assert [sum(a * v for a, v in zip(row, x)) for row in dense] == rhs


def test_solve_reports_inconsistency():
    assert linalg.solve([{0: Fraction(1)}, {0: Fraction(2)}], [1, 3], 1) is None


def test_rref_known_matrix():
    rows, pivots = linalg.rref(_rows([[2, 4, 6], [1, 2, 4]]), 3)
    assert pivots == [0, 2]
    assert rows[0] == {0: 1, 1: 2}


M = FreeCMod("M", ("a", "b"))


def test_module_basics():
    a, b = M.gens()
    m = PD * a + 3 * b
    assert m.comps == (PD, Poly.const(3))
    assert (m - m).is_zero()
    assert m.partial() == PD * m
    assert format_elem(m) == "D*a + 3*b"
    with pytest.raises(ShapeError):
        m + FreeCMod("N", ("c",)).gen(0)
    S = direct_sum("M+N", M, FreeCMod("N", ("c",)))
    assert S.basis == ("a", "b", "c")


def test_trivial_module_kills_partial():
    C = FreeCMod("C", ("c",), partial_zero=True)
    assert (PD * C.gen(0)).is_zero()


def test_map_sesquilinearity():
    # f_x(D m) = (D + x) f_x(m)
    f = ConfMap(M, M, [[P1, 1], [PD, P1 * P1]])
    for g in M.gens():
        left = apply_map(f, P2, PD * g)
        right = (PD + P2) * apply_map(f, P2, g)
        assert left == right


def test_partial_on_maps():
    f = ConfMap(M, M, [[1, 0], [0, P1]])
    assert cend_partial(f).matrix == ((-P1, Poly.const(0)), (Poly.const(0), -P1 * P1))


def test_cend_compose_is_the_zeroth_product():
    # (f . g)_mu = f_0 g_mu
    i = ConfMap.identity(M)
    f = ConfMap(M, M, [[P1, PD], [0, 1]])
    assert cend_compose(i, f) == f
    assert cend_compose(f, i) == f.subs({L1: 0})


def test_cend_bracket_of_inner_derivations():
    # [ad_L _L1 ad_L]_L2 (L) = [[L_L1 L]_L2 L]
    V = virasoro()
    L = V.module.gen(0)
    ad = inner_derivation(V, L)
    lhs = apply_map(cend_bracket(ad, ad), P2, L)
    rhs = eval_bracket(V, eval_bracket(V, L, L1, L), L2, L)
    assert lhs == rhs


def test_form_evaluation_and_symmetry():
    N = FreeCMod("N", ("x", "y"))
    B = FormTable(N, [[1, P1], [-P1, 0]])
    x, y = N.gens()
    # <D x, y>_L = -L * <x, y>_L
    assert form_eval(B, PD * x, y, P1) == -P1 * P1
    assert check_form(B).passed
    assert not check_form(FormTable(N, [[P1, 0], [0, 0]])).passed


def test_form_rejects_d():
    with pytest.raises(ValueError):
        FormTable(FreeCMod("N", ("x",)), [[PD]])


def test_lambda_helper():
    assert lam(3).index == 3
