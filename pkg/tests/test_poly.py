from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from ttlattice.poly import FieldMismatch, FieldSpec, Poly, PolyParseError, split_field_suffix

Q = FieldSpec.rationals()
F2, F5 = FieldSpec.mod(2), FieldSpec.mod(5)


def P(text, fld=Q):
    return Poly.parse(text, fld)


@pytest.mark.parametrize("text,fld", [("Q", Q), ("f5", F5), ("mod 5", F5), ("F_2", F2), ("gf2", F2)])
def test_field_parse(text, fld):
    assert FieldSpec.parse(text) == fld


def test_field_rejects_composite():
    with pytest.raises(ValueError):
        FieldSpec.mod(6)


def test_parse_and_print():
    assert str(P("x^3+2*x+1", F5)) == "x^3+2*x+1"
    assert str(P("x^3 + 7x + 1", F5)) == "x^3+2*x+1"
    assert str(P("1/2*x^3-3*x+1/3")) == "1/2*x^3-3*x+1/3"
    assert str(P("(x+1)^2")) == "x^2+2*x+1"


def test_parse_suffix():
    f = Poly.parse("x^2-1 over Q")
    assert f.field == Q
    g = Poly.parse("x^3+2*x+1 mod 5")
    assert g.field == F5
    assert split_field_suffix("x mod 7")[1] == FieldSpec.mod(7)


def test_parse_errors():
    with pytest.raises(PolyParseError):
        P("x^")
    with pytest.raises(PolyParseError):
        P("1/x")


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        P("x", F2) + P("x", F5)


def test_divmod():
    q, r = divmod(P("x^3+1"), P("x+1"))
    assert q == P("x^2-x+1") and r.is_zero()


def test_gcd_monic():
    assert P("2*x^2-2").gcd(P("3*x+3")) == P("x+1")


def test_derivative_char_p():
    assert P("x^2", F2).derivative().is_zero()
    assert P("x^4+x^2", F2).pth_root() == P("x^2+x", F2)


def test_json_round_trip():
    f = P("1/2*x^3-3*x+1/3")
    js = f.to_json()
    assert js["coefficients"] == ["1/3", "-3", "0", "1/2"]
    assert Poly.from_json(js) == f


coeffs = st.lists(st.integers(-6, 6), max_size=6)


@settings(max_examples=150, deadline=None)
@given(coeffs, coeffs.filter(lambda c: any(c)))
def test_division_identity(a, b):
    f, g = Poly(Q, a), Poly(Q, b)
    q, r = divmod(f, g)
    assert q * g + r == f
    assert r.degree < g.degree


@settings(max_examples=150, deadline=None)
@given(coeffs, coeffs)
def test_gcd_divides(a, b):
    f, g = Poly(F5, a), Poly(F5, b)
    d = f.gcd(g)
    if d.is_zero():
        assert f.is_zero() and g.is_zero()
    else:
        assert d.divides(f) and d.divides(g)


@settings(max_examples=100, deadline=None)
@given(coeffs, st.integers(-5, 5))
def test_evaluation(a, t):
    f = Poly(Q, a)
    assert f(t) == sum(Fraction(c) * t ** k for k, c in enumerate(a))
