from fractions import Fraction

import pytest

from conformal_calc.calg import (
    JACOBI, LEFT_LEIBNIZ, SKEW, adjoint, check_axioms, cur_sl2, eval_bracket, m_delta, perturbed_virasoro, virasoro,
)
from conformal_calc.cmod import L1, L2, PD
from conformal_calc.omni import LITERAL, PROOF, build_omni, check_omni, graph_check, jtilde, omni_two_term, pairing_eval
from conformal_calc.poly import Poly
from conformal_calc.selftest import skew_non_jacobi
from conformal_calc.twoterm import check_2term

P1, P2 = Poly.var(L1), Poly.var(L2)
VIR = virasoro()
DELTAS = [0, 1, 2, Fraction(1, 2)]


@pytest.mark.parametrize("delta", DELTAS)
def test_hemi_and_demi_brackets(delta):
    O = build_omni(VIR, m_delta(delta, VIR))
    L, v = O.E.gens()
    half = Fraction(1, 2)
    assert eval_bracket(O.hemi, L, L1, v) == (PD + delta * P1) * v
    assert eval_bracket(O.hemi, v, L1, L).is_zero()
    assert eval_bracket(O.hemi, L, L1, L) == (PD + 2 * P1) * L
    # skew-symmetrized: [v_lam L] = -1/2 L_{-D-lam} v = 1/2((delta - 1) D + delta lam) v
    assert eval_bracket(O.demi, v, L1, L) == half * ((delta - 1) * PD + delta * P1) * v
    assert eval_bracket(O.demi, L, L1, v) == half * (PD + delta * P1) * v


@pytest.mark.parametrize("delta", DELTAS)
def test_omni_structure(delta):
    O = build_omni(VIR, m_delta(delta, VIR))
    rep = check_omni(O)
    assert rep.passed, rep.render()
    assert check_axioms(O.hemi, (LEFT_LEIBNIZ,)).passed
    assert check_axioms(O.demi, (SKEW,)).passed


@pytest.mark.parametrize("delta", DELTAS)
def test_jtilde_value(delta):
    # J(L, L, v) = -1/4 (L1 - L2)(D + delta L1 + delta L2) v
    O = build_omni(VIR, m_delta(delta, VIR))
    L, v = O.E.gens()
    want = Fraction(-1, 4) * (P1 - P2) * (PD + delta * P1 + delta * P2) * v
    assert jtilde(O, L, L, v) == want
    assert jtilde(O, L, L, L).is_zero()


def test_pairing_readings():
    act = m_delta(1, VIR)
    proof = build_omni(VIR, act, reading=PROOF)
    literal = build_omni(VIR, act, reading=LITERAL, validate=False)
    L, v = proof.E.gens()
    w = act.module.gen(0)
    # <L, v>_lam = 1/2 L_lam v under both readings when only one side is in g
    assert pairing_eval(proof, L, P1, v) == Fraction(1, 2) * (PD + P1) * w
    assert pairing_eval(literal, L, P1, v) == Fraction(1, 2) * (PD + P1) * w
    # they differ once both sides have a g part and an M part
    m = L + v
    assert pairing_eval(proof, m, P1, m) != pairing_eval(literal, m, P1, m)


@pytest.mark.parametrize("delta", DELTAS)
def test_omni_two_term_conditions(delta):
    T = omni_two_term(VIR, m_delta(delta, VIR))
    rep = check_2term(T)
    assert rep.passed, rep.render()
    assert not check_2term(T.with_l3({}))["g"].passed


def test_current_algebra_omni():
    S = cur_sl2()
    act = adjoint(S)
    O = build_omni(S, act)
    assert check_omni(O).passed
    assert not check_axioms(O.demi, (JACOBI,)).passed
    assert check_2term(omni_two_term(S, act, O=O)).passed


def test_graph_of_virasoro():
    rep = graph_check(VIR)
    assert rep.passed, rep.render()


def test_graph_of_non_skew_bracket():
    rep = graph_check(perturbed_virasoro(3))
    assert not rep["isotropic"].passed
    assert rep["lie_equivalence"].passed


def test_graph_of_skew_non_jacobi_bracket():
    rep = graph_check(skew_non_jacobi())
    assert rep["isotropic"].passed
    assert not rep["closed"].passed
    assert rep["lie_equivalence"].passed


def test_literal_pairing_breaks_lie_equivalence():
    rep = graph_check(VIR, reading=LITERAL)
    assert not rep["isotropic"].passed
    assert not rep["lie_equivalence"].passed
