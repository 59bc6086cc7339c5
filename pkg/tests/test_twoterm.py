import random
from itertools import permutations

import pytest

from conformal_calc.calg import cur_sl2, m_delta, virasoro
from conformal_calc.cmod import L1, L2, PD, ConfMap, FormTable, ModElem
from conformal_calc.cohom import is_cocycle
from conformal_calc.omni import omni_two_term
from conformal_calc.poly import Poly
from conformal_calc.selftest import (
    SEED, abelian_strict, identity_crossed, inn_der_sl2, killing_form_sl2, skew_table, vir_cocycle,
    vir_non_cocycle,
)
from conformal_calc.twoterm import (
    BOTH, NEITHER, SKELETAL, STRICT, MorphismData, TwoTermData, check_2term, check_crossed_module,
    check_morphism, check_presentation, classify, compose_morphisms, from_crossed_module, gauge_transform,
    lie2_extract, lie2_present, lie_as_two_term, make_skeletal, make_string, to_crossed_module,
)

SL2 = cur_sl2()
VIR = virasoro()


@pytest.fixture(scope="module")
def string():
    return make_string(SL2, killing_form_sl2())


@pytest.fixture(scope="module")
def omni_vir():
    return omni_two_term(VIR, m_delta(1, VIR))


def test_string_l3_values(string):
    # l3(x, y, z) = <[x y], z>: on (e, f, h) this is <h, h> = 2, alternating
    c = string.V1.gen(0)
    sign = {(0, 1, 2): 1, (1, 2, 0): 1, (2, 0, 1): 1, (1, 0, 2): -1, (0, 2, 1): -1, (2, 1, 0): -1}
    for key in permutations(range(3)):
        assert string.l3[key] == 2 * sign[key] * c
    assert len(string.l3) == 6


def test_string_is_skeletal_and_valid(string):
    rep = check_2term(string)
    assert rep.passed, rep.render()
    assert classify(string) == SKELETAL


def test_string_needs_an_invariant_form():
    bad = FormTable(SL2.module, [[0, 1, 0], [1, 0, 0], [0, 0, 1]])
    with pytest.raises(ValueError):
        make_string(SL2, bad)


def test_lie_algebra_as_two_term():
    T = lie_as_two_term(VIR)
    assert check_2term(T).passed
    assert classify(T) == BOTH


def test_omni_data_is_neither(omni_vir):
    assert classify(omni_vir) == NEITHER


def test_zeroed_l3_breaks_g(omni_vir):
    rep = check_2term(omni_vir.with_l3({}))
    assert not rep["g"].passed
    assert rep["g"].witness.tuple == ("L", "L", "v")
    assert all(rep[c].passed for c in "abcdef")


def test_l3_slot_variants_agree_on_omni(omni_vir):
    assert check_2term(omni_vir, l3_third_slot=True).passed


@pytest.mark.parametrize("label, make", [("identity Vir", lambda: identity_crossed(VIR))])
def test_crossed_module_round_trip(label, make):
    C = make()
    assert check_crossed_module(C).passed
    T = from_crossed_module(C)
    assert classify(T) in (STRICT, BOTH)
    assert to_crossed_module(T) == C
    assert from_crossed_module(to_crossed_module(T)) == T
    assert check_2term(T).passed


def test_inner_to_outer_derivations():
    C = inn_der_sl2()
    rep = check_crossed_module(C)
    assert rep.passed, rep.render()
    T = from_crossed_module(C)
    assert classify(T) == STRICT
    assert to_crossed_module(T) == C


def test_abelian_strict_fixture():
    T = abelian_strict()
    assert check_2term(T).passed
    assert classify(T) in (STRICT, BOTH)


@pytest.mark.parametrize("delta, k", [(1, 0), (2, 1)])
def test_skeletal_condition_i_matches_cocycle(delta, k):
    c = vir_cocycle(delta, SEED + k)
    T = make_skeletal(VIR, c.action, c)
    assert check_2term(T)["i"].passed == is_cocycle(c).passed is True


def test_skeletal_non_cocycle_fails_i():
    c = vir_non_cocycle(1)
    T = TwoTermData(VIR.module, c.module, ConfMap.zero(c.module, VIR.module), VIR, c.action, c.values)
    assert not check_2term(T)["i"].passed
    assert not is_cocycle(c).passed


def test_identity_and_zero_morphisms(omni_vir):
    assert check_morphism(MorphismData.identity(omni_vir), omni_vir, omni_vir).passed
    # the zero map is a morphism; doubling everything is not
    assert check_morphism(MorphismData.zero(omni_vir, omni_vir), omni_vir, omni_vir).passed
    V0, V1 = omni_vir.V0, omni_vir.V1
    two = MorphismData(ConfMap(V0, V0, [[2, 0], [0, 2]]), ConfMap(V1, V1, [[2]]),
                       [[V1.zero()] * 2 for _ in range(2)])
    rep = check_morphism(two, omni_vir, omni_vir)
    assert rep["i"].passed and not rep["ii"].passed


def test_gauge_transforms_compose(omni_vir):
    rng = random.Random(3)
    T1, f = gauge_transform(omni_vir, skew_table(rng, omni_vir))
    T2, g = gauge_transform(T1, skew_table(rng, T1))
    T3, h = gauge_transform(T2, skew_table(rng, T2))
    assert T1 != omni_vir
    for arrow, S, T in ((f, omni_vir, T1), (g, T1, T2), (h, T2, T3)):
        assert check_morphism(arrow, S, T).passed
        assert check_2term(T).passed
    gf = compose_morphisms(g, f)
    assert check_morphism(gf, omni_vir, T2).passed
    assert compose_morphisms(h, gf) == compose_morphisms(compose_morphisms(h, g), f)
    ident = MorphismData.identity(omni_vir)
    assert compose_morphisms(f, ident) == f


def test_non_skew_gauge_breaks_a(omni_vir):
    V1 = omni_vir.V1
    table = [[ModElem(V1, [Poly.var(L1)])] * 2 for _ in range(2)]
    T, f = gauge_transform(omni_vir, table)
    assert not check_2term(T)["a"].passed


@pytest.mark.parametrize("name", ["string", "omni", "abelian", "lie"])
def test_presentation_round_trip(name, string, omni_vir):
    T = {"string": string, "omni": omni_vir, "abelian": abelian_strict(), "lie": lie_as_two_term(VIR)}[name]
    P = lie2_present(T)
    rep = check_presentation(P, T)
    assert rep.passed, rep.render()
    assert lie2_extract(P) == T


def test_presentation_jacobiator_sign(omni_vir):
    # J(x, y, z) = ([x [y z]], -l3(x, y, z)) so that t(J) = [[x y] z] + [y [x z]]
    P = lie2_present(omni_vir)
    n0 = omni_vir.V0.rank
    assert omni_vir.l3
    for key, value in omni_vir.l3.items():
        x, y, z = (omni_vir.V0.gen(k) for k in key)
        J = P.jac(key)
        assert J.comps[n0:] == (-value).comps
        assert J.comps[:n0] == omni_vir.l2(x, Poly.var(L1), omni_vir.l2(y, Poly.var(L2), z)).comps
