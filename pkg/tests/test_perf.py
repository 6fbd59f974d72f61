import random

import pytest

from ttlattice.perf import (
    FREE,
    NotFinitelyPresented,
    PerfObject,
    TensorIdealHandle,
    TensorPrime,
    ThomasonSubset,
    find_prime_avoiding,
    handle_join,
    handle_leq,
    handle_meet,
    ideal_member,
    in_prime,
    is_prime_handle,
    koszul,
    maximal_above,
    object_with_support,
    parse_handle,
    parse_object,
    parse_thomason,
    phi,
    psi,
    rho,
    rho_contains,
    spc_space,
    spec_space,
    support,
    support_datum_check,
    tensor,
    tensor_closure,
    torsion,
)
from ttlattice.frames import FiniteSpace, hochster_dual
from ttlattice.poly import FieldMismatch, FieldSpec, Poly
from ttlattice.radical import PrimeIdealKx, closed_points, spec_points
from ttlattice.suites import _all_descriptions, _all_handles, random_perf

F2, F3 = FieldSpec.mod(2), FieldSpec.mod(3)


def P(text, fld=F2):
    return Poly.parse(text, fld)


def T(text, n=1, fld=F2, shift=0):
    return PerfObject.single(torsion(P(text, fld), n), shift)


def pt(text, fld=F2):
    return PrimeIdealKx.closed(P(text, fld))


def test_tensor_torsion_rule():
    assert tensor(T("x"), T("x", 4)) == T("x") + T("x", shift=1)
    assert tensor(T("x", 2), T("x", 3)) == T("x", 2) + T("x", 2, shift=1)


def test_tensor_orthogonal():
    assert tensor(T("x", 2), T("x+1", 3)).is_zero()


def test_tensor_unit():
    rng = random.Random(0)
    for _ in range(30):
        e = random_perf(rng, F2)
        assert tensor(PerfObject.unit(F2), e) == e


def test_tensor_field_mismatch():
    with pytest.raises(FieldMismatch):
        tensor(T("x"), T("x", fld=F3))


def test_tensor_comm_assoc():
    rng = random.Random(1)
    for _ in range(200):
        a, b, c = (random_perf(rng, F3, max_summands=3) for _ in range(3))
        assert tensor(a, b) == tensor(b, a)
        assert tensor(tensor(a, b), c) == tensor(a, tensor(b, c))


def test_text_rendering():
    assert str(tensor(T("x"), T("x", 2))) == "k[x]/(x) + S^1 k[x]/(x)"
    assert str(T("x+1", 3)) == "k[x]/((x+1)^3)"


def test_parse_object():
    e = parse_object("S^0 k[x] + S^1 k[x]/(x^2) mod 2")
    assert e == PerfObject.unit(F2) + T("x", 2, shift=1)
    assert parse_object("k[x]/(x^2+x)", F2) == T("x") + T("x+1")
    assert parse_object("0", F2).is_zero()


def test_support_examples():
    assert support(PerfObject.unit(F2)).whole
    assert support(PerfObject.zero(F2)).is_empty()
    e = T("x", 5, F3) + T("x+1", 1, F3, shift=2)
    assert support(e).points == {pt("x", F3), pt("x+1", F3)}


def test_sd_examples():
    rep = support_datum_check([T("x"), T("x+1")], [(T("x"), T("x+1")), (T("x"), PerfObject.unit(F2))])
    assert rep.passed
    assert rep.checked["SD5"] == 2


def test_sd_random():
    rng = random.Random(2)
    sample = [random_perf(rng, F3) for _ in range(100)]
    assert support_datum_check(sample).passed


def test_in_prime():
    assert in_prime(T("x", 3), pt("x+1"))
    assert not in_prime(T("x", 3), pt("x"))
    assert in_prime(T("x", 3), PrimeIdealKx.zero(F2))
    for p in spec_points(F2, 2):
        assert not in_prime(PerfObject.unit(F2), p)


def test_koszul():
    assert koszul(P("x^2+x")) == T("x") + T("x+1")
    assert koszul(P("x^2")) == T("x", 2)
    assert koszul(Poly.const(F2, 1)).is_zero()
    assert koszul(Poly(F2)) == PerfObject.unit(F2) + PerfObject.unit(F2).shift(1)


def test_rho_examples():
    x = pt("x")
    assert rho(TensorPrime(x), 3) == x
    assert rho(TensorPrime(PrimeIdealKx.zero(F2)), 3) == PrimeIdealKx.zero(F2)
    assert not rho_contains(x, Poly.const(F2, 1))
    assert rho_contains(x, Poly(F2))
    assert rho_contains(x, P("x^3+x"))


def test_rho_round_trip():
    for p in spec_points(F3, 2):
        assert rho(TensorPrime(p), 2) == p


def test_phi_itemized():
    assert str(phi(TensorIdealHandle.zero_ideal(F2))) == "{}"
    assert str(phi(TensorIdealHandle.everything(F2))) == "whole"
    assert str(phi(TensorIdealHandle.torsion_ideal(F2))) == "all-closed"
    assert str(phi(TensorIdealHandle.prime(pt("x")))) == "all-closed - {x}"
    v = phi(TensorIdealHandle.thick_of([koszul(P("x^3+x"))], F2))
    assert v == ThomasonSubset.vanishing(P("x^3+x"))
    assert str(v) == "{x, x+1}"


def test_psi_itemized():
    assert str(psi(ThomasonSubset.finite(F2))) == "0"
    assert str(psi(ThomasonSubset.whole(F2))) == "everything"
    assert str(psi(ThomasonSubset.all_closed_except(F2))) == "torsion"


def test_round_trips():
    for v in _all_descriptions(F2, 2):
        assert phi(psi(v)) == v
    for j in _all_handles(F2, 2):
        assert psi(phi(j)) == j


def test_lattice_ops_preserved():
    descs = _all_descriptions(F2, 2)
    for a in descs:
        for b in descs:
            ja, jb = psi(a), psi(b)
            assert handle_leq(ja, jb) == a.leq(b)
            assert phi(handle_meet(ja, jb)) == a.meet(b)
            assert phi(handle_join(ja, jb)) == a.join(b)


def test_member_iff_support_inside():
    rng = random.Random(3)
    descs = _all_descriptions(F2, 2)
    for _ in range(200):
        e = random_perf(rng, F2, max_degree=2)
        v = rng.choice(descs)
        s = support(e)
        inside = ThomasonSubset.whole(F2) == v if s.whole else all(
            v.leq(ThomasonSubset.whole(F2)) and psi(v).contains_residue(p) for p in s.points
        )
        assert ideal_member(e, psi(v)) == inside


def test_parse_descriptions():
    assert parse_thomason("all-closed - {x}", F2) == ThomasonSubset.all_closed_except(F2, [pt("x")])
    assert parse_handle("thick{x, x+1}", F2) == psi(ThomasonSubset.finite(F2, [pt("x"), pt("x+1")]))


def test_object_with_support():
    e = object_with_support(ThomasonSubset.finite(F2, [pt("x"), pt("x+1")]))
    assert e == T("x") + T("x+1")
    assert object_with_support(ThomasonSubset.whole(F2)) == PerfObject.unit(F2)
    assert object_with_support(ThomasonSubset.finite(F2)).is_zero()
    with pytest.raises(NotFinitelyPresented):
        object_with_support(ThomasonSubset.all_closed_except(F2))


def test_prime_avoiding():
    assert find_prime_avoiding([PerfObject.unit(F2)]) == PrimeIdealKx.zero(F2)
    s = tensor_closure([PerfObject.unit(F2), T("x")])
    assert find_prime_avoiding(s) == pt("x")


def test_maximal_above():
    probes = spec_points(F2, 2)
    m = maximal_above(TensorIdealHandle.zero_ideal(F2), probes)
    assert m == TensorIdealHandle.torsion_ideal(F2)
    assert is_prime_handle(m, probes)[0]
    assert not is_prime_handle(TensorIdealHandle.zero_ideal(F2), probes)[0]


def test_closure_order():
    pts = spec_points(F2, 2)
    handles = {p: TensorIdealHandle.prime(p) for p in pts}
    for p in pts:
        for q in pts:
            assert handle_leq(handles[q], handles[p]) == (p.is_zero or p == q)


def test_spc_homeomorphic_to_spec():
    spc, spec = spc_space(F2, 2), spec_space(F2, 2)
    rename = {p: p[1:] for p in spc.points}
    relabelled = FiniteSpace(spec.points, [{rename[p] for p in u} for u in spc.opens])
    assert relabelled == spec
    assert relabelled != hochster_dual(spec)


def test_spc_closure_is_inclusion():
    spc = spc_space(F2, 2)
    pts = spec_points(F2, 2)
    lab = {p: f"P{p}" for p in pts}
    for p in pts:
        for q in pts:
            inside = handle_leq(TensorIdealHandle.prime(q), TensorIdealHandle.prime(p))
            assert (lab[q] in spc.closure({lab[p]})) == inside
