import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from ttlattice import oracles
from ttlattice.poly import FieldSpec, Poly
from ttlattice.radical import (
    LocalSection,
    NotBasicOpen,
    PrimeIdealKx,
    PrimeVerdict,
    RadicalIdeal,
    UndecidableFactorization,
    enumerate_irreducibles,
    factorization,
    is_prime,
    is_squarefree,
    rad_join,
    rad_leq,
    rad_meet,
    sections,
    squarefree_part,
)
from ttlattice.suites import random_poly, random_radical

Q = FieldSpec.rationals()
F2, F3, F5 = FieldSpec.mod(2), FieldSpec.mod(3), FieldSpec.mod(5)
X = sympy.Symbol("x")


def P(text, fld=Q):
    return Poly.parse(text, fld)


def to_sympy(f):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) if hasattr(c, "numerator") else c
                       for c in reversed(f.coeffs)], X,
                      **({} if f.field.is_rational else {"modulus": f.field.modulus}))


def sympy_sqf(f):
    g = sympy.sqf_part(to_sympy(f))
    return Poly(f.field, [int(c) % f.field.modulus if not f.field.is_rational else c
                          for c in reversed(g.all_coeffs())]).monic()


def test_sqf_examples():
    assert squarefree_part(P("x^2", F2)) == P("x", F2)
    assert squarefree_part(P("x^3+x^2")) == P("x^2+x")
    assert squarefree_part(P("x^2+x")) == P("x^2+x")


def test_sqf_zero_rejected():
    with pytest.raises(ValueError):
        squarefree_part(Poly(Q))


@pytest.mark.parametrize("fld", [Q, F2, F3, F5])
def test_sqf_against_sympy(fld):
    rng = random.Random(7)
    for _ in range(200):
        f = random_poly(rng, fld, 8)
        if f.is_zero():
            continue
        assert squarefree_part(f) == sympy_sqf(f), str(f)


@pytest.mark.parametrize("fld", [F2, F3])
def test_sqf_against_trial_oracle(fld):
    rng = random.Random(8)
    for _ in range(150):
        f = random_poly(rng, fld, 9)
        want = Poly(fld, oracles.squarefree_trial_fp([int(c) for c in f.coeffs], fld.modulus))
        assert squarefree_part(f) == want


def test_frobenius_case():
    # derivative vanishes identically: x^6 + x^3 + 1 = (x+2)^6 over F_3
    f = P("x^6+x^3+1", F3)
    assert f.derivative().is_zero()
    assert squarefree_part(f) == P("x+2", F3)


def test_meet_join_examples():
    a, b = RadicalIdeal.principal(P("x")), RadicalIdeal.principal(P("x+1"))
    assert str(rad_meet(a, b)) == "(x^2+x)"
    assert rad_join(a, b).is_unit


def test_bounds():
    rng = random.Random(2)
    for fld in (Q, F2):
        for _ in range(50):
            i = random_radical(rng, fld, 5)
            assert rad_join(i, RadicalIdeal.zero(fld)) == i
            assert rad_meet(i, RadicalIdeal.unit(fld)) == i
            assert rad_leq(RadicalIdeal.zero(fld), i) and rad_leq(i, RadicalIdeal.unit(fld))


def test_principal_rejects_non_squarefree():
    with pytest.raises(ValueError):
        RadicalIdeal.principal(P("x^2+1", F2))


def test_prime_examples():
    assert is_prime(RadicalIdeal.principal(P("x"))) is PrimeVerdict.PRIME
    assert is_prime(RadicalIdeal.principal(P("x^2+x+1", F2))) is PrimeVerdict.PRIME
    assert is_prime(RadicalIdeal.principal(P("x^2+1"))) is PrimeVerdict.PRIME
    assert is_prime(RadicalIdeal.principal(P("x^2+1", F5))) is PrimeVerdict.NOT_PRIME
    assert is_prime(RadicalIdeal.zero(Q)) is PrimeVerdict.PRIME
    assert is_prime(RadicalIdeal.unit(Q)) is PrimeVerdict.NOT_PRIME


def test_prime_undecided_over_q():
    assert is_prime(RadicalIdeal.principal(P("x^4+1"))) is PrimeVerdict.UNDECIDED


@pytest.mark.parametrize("fld", [F2, F3, F5])
def test_prime_against_sympy(fld):
    for d in (1, 2, 3):
        for f in enumerate_irreducibles(fld, d):
            assert to_sympy(f).is_irreducible
    rng = random.Random(4)
    for _ in range(100):
        f = random_poly(rng, fld, 5)
        if f.degree < 1 or not is_squarefree(f):
            continue
        got = is_prime(RadicalIdeal.principal(f))
        assert (got is PrimeVerdict.PRIME) == to_sympy(f.monic()).is_irreducible


def test_rational_cubics_against_sympy():
    rng = random.Random(9)
    for _ in range(150):
        f = random_poly(rng, Q, 3)
        if f.degree < 1 or not is_squarefree(f):
            continue
        got = is_prime(RadicalIdeal.principal(f))
        assert (got is PrimeVerdict.PRIME) == to_sympy(f.monic()).is_irreducible


def test_enumerate_examples():
    assert [str(f) for f in enumerate_irreducibles(F2, 3)] == ["x", "x+1", "x^2+x+1", "x^3+x+1", "x^3+x^2+1"]
    assert [str(f) for f in enumerate_irreducibles(F3, 1)] == ["x", "x+1", "x+2"]
    assert len(enumerate_irreducibles(F5, 1)) == 5


def test_enumerate_rejects_q():
    with pytest.raises(ValueError):
        enumerate_irreducibles(Q, 2)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_counts_necklace(p):
    irr = enumerate_irreducibles(FieldSpec.mod(p), 4)
    for d in range(1, 5):
        assert sum(1 for f in irr if f.degree == d) == oracles.necklace_count(p, d)


@pytest.mark.parametrize("fld", [F2, F3])
def test_factorization_against_sympy(fld):
    rng = random.Random(12)
    for _ in range(100):
        f = random_poly(rng, fld, 7)
        if f.degree < 1:
            continue
        mine = sorted((str(g), n) for g, n in factorization(f))
        _, facs = sympy.factor_list(to_sympy(f).as_expr(), X, modulus=fld.modulus)
        theirs = sorted((str(Poly(fld, [int(c) % fld.modulus for c in reversed(sympy.Poly(g, X, modulus=fld.modulus).all_coeffs())]).monic()), n) for g, n in facs)
        assert mine == theirs


def test_factorization_q_undecidable():
    with pytest.raises(UndecidableFactorization):
        factorization(P("x^4+1"))
    with pytest.raises(UndecidableFactorization):
        factorization(P("x^5+x^4+x+1"))
    assert factorization(P("x^4-x^2")) == [(P("x-1"), 1), (P("x"), 2), (P("x+1"), 1)]


def test_prime_ideal_zero_and_closed():
    assert str(PrimeIdealKx.zero(F2)) == "(0)"
    assert str(PrimeIdealKx.closed(P("x+1", F2))) == "(x+1)"
    with pytest.raises(ValueError):
        PrimeIdealKx.closed(P("x^2+1", F2))


def test_sections_examples():
    assert sections(Poly.const(Q, 1)).describe() == "k[x]"
    assert sections(P("x")).describe() == "k[x]_(x)"
    big, small = sections(P("x^2+x")), sections(P("x"))
    assert big.describe() == "k[x]_(x^2+x)"
    assert small.contains_open(big) and not big.contains_open(small)
    # 1/x restricted to D(x(x+1)) is (x+1)/(x(x+1))
    s = LocalSection(Poly.const(Q, 1), 1)
    r = small.restrict(s, big)
    assert big.equal(r, LocalSection(P("x+1"), 1))
    # restriction composes through D(x) from the whole line
    whole = sections(Poly.const(Q, 1))
    t = LocalSection(P("x^2"), 0)
    assert big.equal(small.restrict(whole.restrict(t, small), big), whole.restrict(t, big))


def test_sections_empty_open():
    assert sections(RadicalIdeal.zero(Q)).describe() == "0"


def test_sections_not_basic():
    with pytest.raises(NotBasicOpen):
        sections({PrimeIdealKx.zero(Q)})
    with pytest.raises(NotBasicOpen):
        sections("x")


@settings(max_examples=80, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=1, max_size=6), st.lists(st.integers(0, 4), min_size=1, max_size=6))
def test_sqrt_product_is_meet(a, b):
    f, g = Poly(F5, a), Poly(F5, b)
    if f.is_zero() or g.is_zero():
        return
    i, j = RadicalIdeal.radical_of(f), RadicalIdeal.radical_of(g)
    assert RadicalIdeal.radical_of(f * g) == rad_meet(i, j)
