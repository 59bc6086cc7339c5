from fractions import Fraction

import pytest

from conformal_calc.calg import LEFT_LEIBNIZ, check_axioms, cur_sl2, m_delta, virasoro
from conformal_calc.cmod import PD, FreeCMod, ModElem
from conformal_calc.leibniz import (
    LeibnizAlg, center_generators, check_ker_in_center, check_leibniz_two_term, default_degree_bound,
    express_in, jtilde_leibniz, leibniz_kernel, leibniz_two_term, left_center, relabel_v1, skew_symmetrize,
)
from conformal_calc.omni import build_omni, jtilde, omni_two_term
from conformal_calc.poly import DegreeOverflow, get_degree_cap
from conformal_calc.twoterm import check_2term, lie_as_two_term

VIR = virasoro()
DELTAS = [0, 1, 2, Fraction(1, 2)]


def hemi(delta):
    act = m_delta(delta, VIR)
    O = build_omni(VIR, act)
    return LeibnizAlg(O.hemi), O, act


def test_rejects_non_leibniz_tables():
    from conformal_calc.calg import perturbed_virasoro
    with pytest.raises(ValueError):
        LeibnizAlg(perturbed_virasoro(3))


@pytest.mark.parametrize("delta", DELTAS)
def test_kernel_of_hemi(delta):
    # x o y + y o x is spanned by D v and delta v (over the lambda-coefficients)
    L, O, _ = hemi(delta)
    K = leibniz_kernel(L)
    v = O.E.gen(1)
    assert K.contains(PD * v)
    assert not K.contains(O.E.gen(0))
    if delta:
        assert K.contains(v)


@pytest.mark.parametrize("delta", DELTAS)
def test_kernel_inside_left_center(delta):
    L, _, _ = hemi(delta)
    Z = left_center(L, 4)
    assert all(Z.contains(u) for u in leibniz_kernel(L).generators)
    assert check_ker_in_center(L).passed


def test_center_of_hemi_is_the_module():
    L, O, _ = hemi(1)
    Z = left_center(L, 3)
    v = O.E.gen(1)
    assert len(Z) == 4
    assert all(Z.contains(PD ** k * v) for k in range(4))
    assert center_generators(Z) == [v]


def test_center_bound_respects_degree_cap():
    L, _, _ = hemi(1)
    with pytest.raises(DegreeOverflow):
        left_center(L, get_degree_cap() + 1)


def test_lie_algebra_has_zero_kernel():
    L = LeibnizAlg(VIR)
    assert len(leibniz_kernel(L)) == 0
    assert leibniz_two_term(L) == lie_as_two_term(VIR)


@pytest.mark.parametrize("delta", DELTAS)
def test_skew_symmetrization_is_demi(delta):
    L, O, _ = hemi(delta)
    assert skew_symmetrize(L) == O.demi


@pytest.mark.parametrize("delta", [1, 2])
def test_jtilde_matches_omni(delta):
    L, O, _ = hemi(delta)
    Lg, v = O.E.gens()
    assert jtilde_leibniz(L, Lg, Lg, v) == jtilde(O, Lg, Lg, v)


@pytest.mark.parametrize("delta", DELTAS)
def test_two_term_matches_omni(delta):
    L, O, act = hemi(delta)
    T = leibniz_two_term(L)
    To = omni_two_term(VIR, act, O=O)
    assert relabel_v1(T, To.V1) == To
    rep = check_leibniz_two_term(L, T)
    assert rep.passed, rep.render()
    assert "i[all L]" in rep and "i[t in Z^l]" in rep


def test_current_algebra_hemi():
    from conformal_calc.calg import adjoint
    S = cur_sl2()
    O = build_omni(S, adjoint(S))
    L = LeibnizAlg(O.hemi)
    assert check_ker_in_center(L).passed
    assert check_2term(leibniz_two_term(L)).passed


def test_express_in():
    M = FreeCMod("M", ("a", "b"))
    a, b = M.gens()
    V1 = FreeCMod("V", ("p", "q"))
    got = express_in([a, a + b], PD * b + 2 * a, V1)
    assert got == ModElem(V1, [2 - PD, PD])
    assert express_in([a], b, V1) is None


def test_default_bound():
    L, _, _ = hemi(1)
    assert default_degree_bound(L) == 4
    assert check_axioms(L.table, (LEFT_LEIBNIZ,)).passed
