import random

import pytest
from hypothesis import given, settings, strategies as st

from ttlattice import oracles
from ttlattice.poset import (
    FiniteLattice,
    FinitePoset,
    LatticeError,
    PosetError,
    _triple_scan,
    birkhoff_round_trip,
    canonical_form,
    chain,
    downset_lattice,
    find_forbidden_sublattice,
    find_isomorphism,
    ideal_lattice,
    is_distributive,
    is_lattice,
    is_prime_ideal,
    join_irreducibles,
    lattices_isomorphic,
    m3,
    meet_irreducibles,
    n5,
    powerset_lattice,
    principal_ideal,
)
from ttlattice.suites import posets_up_to_iso, random_lattice


def test_relation_closure():
    p = FinitePoset("abc", [("a", "b"), ("b", "c")])
    assert p.leq("a", "c")
    assert not p.leq("c", "a")


def test_antisymmetry_rejected():
    with pytest.raises(PosetError):
        FinitePoset("ab", [("a", "b"), ("b", "a")])


def test_unknown_element_rejected():
    with pytest.raises(PosetError):
        FinitePoset("ab", [("a", "z")])


def test_m3_is_lattice():
    assert m3() is not None
    assert len(m3()) == 5


def test_antichain_not_lattice():
    assert is_lattice(FinitePoset("ab")) is None


def test_powerset_meet_join():
    lat = powerset_lattice([1, 2])
    a, b = frozenset([1]), frozenset([2])
    assert lat.meet(a, b) == frozenset()
    assert lat.join(a, b) == frozenset([1, 2])


@pytest.mark.parametrize("lat,name", [(m3(), "M3"), (n5(), "N5")])
def test_forbidden_named(lat, name):
    v = is_distributive(lat)
    assert not v.distributive
    assert v.forbidden == name
    assert v.witness is not None


def test_m3_witness_is_least_triple():
    assert is_distributive(m3()).witness == ("a", "b", "c")


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_chain_distributive(n):
    assert is_distributive(chain(n)).distributive


def test_powerset3_distributive():
    assert is_distributive(powerset_lattice("xyz")).distributive


def test_join_irreducibles():
    assert set(join_irreducibles(powerset_lattice([1, 2, 3]))) == {frozenset([k]) for k in (1, 2, 3)}
    assert join_irreducibles(chain(3)) == [1, 2]
    assert set(join_irreducibles(m3())) == {"a", "b", "c"}


def test_join_irreducibles_brute():
    rng = random.Random(3)
    for _ in range(50):
        lat = random_lattice(rng)
        brute = [
            x for x in lat.elements
            if x != lat.bottom
            and all(x in (a, b) for a in lat.elements for b in lat.elements if lat.join(a, b) == x)
        ]
        assert sorted(map(str, brute)) == sorted(map(str, join_irreducibles(lat)))


def test_downsets_of_antichain():
    lat = downset_lattice(FinitePoset("ab"))
    assert lattices_isomorphic(lat, powerset_lattice("ab"))


def test_downsets_of_chain():
    lat = downset_lattice(FinitePoset("ab", [("a", "b")]))
    assert lattices_isomorphic(lat, chain(3))


def test_birkhoff_small_distributive():
    # every distributive lattice with at most 6 elements arises among these
    seen = 0
    for n in range(1, 7):
        for p in posets_up_to_iso(n):
            lat = is_lattice(p)
            if lat is None or not is_distributive(lat).distributive:
                continue
            seen += 1
            assert birkhoff_round_trip(lat)
            ji = join_irreducibles(lat)
            if ji:
                assert lattices_isomorphic(downset_lattice(lat.poset.subposet(ji)), lat)
    assert seen > 10


def test_downset_lattices_distributive():
    for n in range(1, 5):
        for p in posets_up_to_iso(n):
            assert is_distributive(downset_lattice(p)).distributive


def test_ideal_lattice_principal():
    for lat in (chain(4), powerset_lattice("ab"), downset_lattice(FinitePoset("abc", [("a", "b")]))):
        il = ideal_lattice(lat)
        assert lattices_isomorphic(il.lattice, lat)
        # every nonempty join-closed downset has a maximum
        ideals = [
            d for d in lat.poset.downsets()
            if d and all(lat.join(x, y) in d for x in d for y in d)
        ]
        assert len(ideals) == len(lat)
        assert all(any(d == lat.poset.downset(m) for m in d) for d in ideals)


def test_ideal_lattice_rejects_m3():
    with pytest.raises(LatticeError):
        ideal_lattice(m3())


def test_prime_ideal_in_chain():
    lat = chain(3)
    assert is_prime_ideal(principal_ideal(lat, 1))
    assert not is_prime_ideal(principal_ideal(lat, 2))


def test_primes_match_meet_irreducibles():
    for lat in (chain(4), powerset_lattice("abc"), downset_lattice(FinitePoset("abc", [("a", "c")]))):
        primes = {x for x in lat.elements if is_prime_ideal(principal_ideal(lat, x))}
        assert primes == set(meet_irreducibles(lat))


def test_laws_scan():
    rng = random.Random(1)
    for _ in range(40):
        assert random_lattice(rng).check_laws() is None


def test_posets_counts():
    assert [len(posets_up_to_iso(n)) for n in range(1, 6)] == [1, 2, 5, 16, 63]


def test_canonical_form_invariant():
    p = FinitePoset("abcd", [("a", "b"), ("a", "c"), ("c", "d")])
    q = FinitePoset("wxyz", [("z", "y"), ("y", "x"), ("z", "w")])
    assert canonical_form(p) == canonical_form(q)
    iso = find_isomorphism(p, q)
    assert iso is not None
    assert all(p.leq(a, b) == q.leq(iso[a], iso[b]) for a in "abcd" for b in "abcd")


def test_scan_agrees_with_oracle():
    rng = random.Random(11)
    for _ in range(150):
        lat = random_lattice(rng)
        pairs = set(lat.poset.relation())
        brute = oracles.brute_force_forbidden(list(lat.elements), lambda a, b: (a, b) in pairs)
        assert (_triple_scan(lat) is None) == (brute is None) == (find_forbidden_sublattice(lat) is None)


@settings(max_examples=60, deadline=None)
@given(st.sets(st.frozensets(st.integers(0, 3)), max_size=6))
def test_set_families(fam):
    fam = set(fam) | {frozenset(), frozenset(range(4))}
    closed = set(fam)
    changed = True
    while changed:
        changed = False
        for a in list(closed):
            for b in list(closed):
                for c in (a | b, a & b):
                    if c not in closed:
                        closed.add(c)
                        changed = True
    lat = FiniteLattice.of_sets(closed)
    assert is_distributive(lat).distributive
    assert oracles.set_lattice_distributive(closed)


def test_lattice_json_tables():
    js = m3().to_json()
    assert js["bottom"] == "0" and js["top"] == "1"
    assert js["join"][1][2] == "1"
