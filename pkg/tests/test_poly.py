from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conformal_calc.parse import PolyParseError, parse_poly, tokenize
from conformal_calc.poly import ONE, ZERO, D, DegreeOverflow, Poly, format_poly, get_degree_cap, lam, set_degree_cap

L1, L2 = lam(1), lam(2)
PD, P1, P2 = Poly.var(D), Poly.var(L1), Poly.var(L2)

coeffs = st.one_of(st.integers(-6, 6), st.fractions(min_value=-3, max_value=3, max_denominator=4))
exps = st.tuples(st.integers(0, 3), st.integers(0, 2), st.integers(0, 2))
polys = st.dictionaries(exps, coeffs, max_size=4).map(Poly)
RING = settings(max_examples=1000, deadline=None)


@RING
@given(polys, polys, polys)
def test_ring_associativity(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)


@RING
@given(polys, polys)
def test_ring_commutativity(a, b):
    assert a + b == b + a
    assert a * b == b * a


@RING
@given(polys, polys, polys)
def test_ring_distributivity(a, b, c):
    assert a * (b + c) == a * b + a * c


@RING
@given(polys)
def test_ring_identities(a):
    assert a + ZERO == a
    assert a * ONE == a
    assert a - a == ZERO
    assert (a * ZERO).is_zero()


@settings(max_examples=300, deadline=None)
@given(polys, polys, polys)
def test_substitution_is_a_ring_map(a, b, q):
    m = {L1: q}
    assert (a * b).subs(m) == a.subs(m) * b.subs(m)
    assert (a + b).subs(m) == a.subs(m) + b.subs(m)


@settings(max_examples=300, deadline=None)
@given(polys)
def test_format_parse_round_trip(a):
    assert parse_poly(format_poly(a)) == a


def test_binomial_expansion():
    # (D + L1)^3 by hand
    want = PD ** 3 + 3 * PD ** 2 * P1 + 3 * PD * P1 ** 2 + P1 ** 3
    assert (PD + P1) ** 3 == want
    assert parse_poly("(D+L1)^3") == want


def test_shift_substitution():
    # (D + 2 L1) with L1 -> -D - L1 gives -D - 2 L1
    p = PD + 2 * P1
    assert p.subs({L1: -PD - P1}) == -PD - 2 * P1


def test_zero_coefficients_are_dropped():
    assert Poly({(1,): 0}).is_zero()
    assert Poly({(1, 0, 0): 2}) == 2 * PD
    assert (P1 - P1).variables() == set()


def test_degrees_and_coefficients():
    p = parse_poly("D^2*L1 + 3*L2 - 1")
    assert p.degree() == 3
    assert p.degree(D) == 2
    assert p.coeff(D, 2) == P1
    assert p.coeff(D, 0) == 3 * P2 - 1


def test_exact_rationals():
    p = parse_poly("1/3*D + 1/6*D")
    assert p == PD.scale(Fraction(1, 2))
    assert format_poly(p) == "1/2*D"


def test_canonical_text():
    assert format_poly(parse_poly("L2 + 1 - L2 + 3/4*L1*D^2")) == "3/4*D^2*L1 + 1"
    assert format_poly(ZERO) == "0"


def test_bare_L_is_the_first_parameter():
    assert parse_poly("D + 2*L") == PD + 2 * P1


def test_degree_cap():
    old = get_degree_cap()
    set_degree_cap(3)
    try:
        with pytest.raises(DegreeOverflow):
            PD ** 4
        with pytest.raises(DegreeOverflow):
            (PD + P1) ** 2 * PD ** 2
    finally:
        set_degree_cap(old)
    assert (PD ** 4).degree() == 4


@pytest.mark.parametrize("text, pos", [
    ("L^^2", 2),
    ("D +", 3),
    ("(D + L1", 7),
    ("D $ L1", 2),
    ("1/0", 1),
])
def test_parse_errors_carry_positions(text, pos):
    with pytest.raises(PolyParseError) as info:
        parse_poly(text)
    assert info.value.pos == pos


def test_tokens():
    kinds = [t.value for t in tokenize("3*D^2 - L12")]
    assert kinds[:5] == ["3", "*", "D", "^", "2"]
    assert kinds[-2:] == ["L12", ""]
