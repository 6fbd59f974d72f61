import pytest

from ttlattice.frames import (
    FiniteFrame,
    FiniteSpace,
    SpaceError,
    hochster_dual,
    irreducible_closed_sets,
    is_continuous,
    is_frame_map,
    is_spatial,
    omega,
    points,
    pt_map,
    pt_space,
    space_properties,
    stone_counit,
    stone_unit,
    thomason_frame,
    triangle_identities,
)
from ttlattice.poset import FinitePoset, chain, downset_lattice, lattices_isomorphic, powerset_lattice
from ttlattice.suites import finite_t0_spaces, posets_up_to_iso

TWO = FiniteFrame(chain(2))


def test_two_has_one_point():
    assert len(points(TWO)) == 1
    assert len(pt_space(TWO).points) == 1


def test_three_chain_points_sierpinski():
    fr = FiniteFrame(chain(3))
    assert [p.prime for p in points(fr)] == [0, 1]
    x = pt_space(fr)
    assert len(x.opens) == 3
    assert space_properties(x).sober


def test_powerset_points_discrete():
    fr = FiniteFrame(powerset_lattice("abc"))
    x = pt_space(fr)
    assert len(x.points) == 3
    assert len(x.opens) == 8


def test_points_are_frame_maps():
    for p in posets_up_to_iso(4):
        fr = FiniteFrame(downset_lattice(p))
        assert all(q.is_frame_map() for q in points(fr))


def test_omega_examples():
    assert len(omega(FiniteSpace.discrete("a"))) == 2
    assert lattices_isomorphic(omega(FiniteSpace.sierpinski()).lattice, chain(3))
    assert lattices_isomorphic(omega(FiniteSpace.discrete("abc")).lattice, powerset_lattice("xyz"))


def test_opens_must_be_closed():
    with pytest.raises(SpaceError):
        FiniteSpace("ab", [set(), {"a"}, {"b"}, {"a", "b"}, {"c"}])
    with pytest.raises(SpaceError):
        FiniteSpace("abc", [set(), {"a"}, {"b"}, {"a", "b", "c"}])


def test_counit_iso_on_corpus():
    for n in range(1, 5):
        for p in posets_up_to_iso(n):
            fr = FiniteFrame(downset_lattice(p))
            c = stone_counit(fr)
            assert c.isomorphism and c.spatial
            assert is_spatial(fr)


def test_unit_sierpinski():
    u = stone_unit(FiniteSpace.sierpinski())
    assert u.homeomorphism


def test_unit_indiscrete_not_injective():
    u = stone_unit(FiniteSpace.indiscrete("ab"))
    assert not u.injective
    assert not u.homeomorphism


def test_triangles_non_sober():
    tri = triangle_identities(omega(FiniteSpace.indiscrete("ab")), FiniteSpace.indiscrete("ab"))
    assert tri.frame_side and tri.space_side


def test_properties_t0():
    for x in finite_t0_spaces(4, include_empty=False):
        pr = space_properties(x)
        assert pr.t0 and pr.sober and pr.td and pr.coherent


def test_properties_indiscrete():
    pr = space_properties(FiniteSpace.indiscrete("ab"))
    assert not pr.t0 and not pr.sober and not pr.td


def test_properties_empty():
    pr = space_properties(FiniteSpace((), [frozenset()]))
    assert pr.sober and pr.coherent


def test_properties_implications():
    import random

    from ttlattice.suites import random_space

    rng = random.Random(5)
    for _ in range(100):
        pr = space_properties(random_space(rng))
        assert not pr.sober or pr.t0
        assert not pr.coherent or pr.sober


def test_irreducible_closed_sets_indiscrete():
    assert irreducible_closed_sets(FiniteSpace.indiscrete("ab")) == [frozenset("ab")]


def test_hochster_sierpinski_swaps():
    dual = hochster_dual(FiniteSpace.sierpinski())
    assert dual.opens == {frozenset(), frozenset({"c"}), frozenset({"o", "c"})}


def test_hochster_discrete_self_dual():
    x = FiniteSpace.discrete("abc")
    assert hochster_dual(x) == x


def test_hochster_rejects_non_coherent():
    with pytest.raises(SpaceError):
        hochster_dual(FiniteSpace.indiscrete("ab"))


def test_thomason_frame_is_dual_opens():
    x = FiniteSpace.alexandrov(FinitePoset("gab", [("a", "g"), ("b", "g")]))
    assert len(thomason_frame(x)) == len(hochster_dual(x).opens)


def test_pt_of_frame_map():
    # the inclusion of Omega(Sierpinski) into the powerset of {o, c}
    src = omega(FiniteSpace.sierpinski())
    tgt = omega(FiniteSpace.discrete(("o", "c")))
    h = {u: u for u in src.elements}
    assert is_frame_map(h, src, tgt)
    g = pt_map(h, src, tgt)
    assert len(g) == 2


def test_continuity():
    x = FiniteSpace.discrete("ab")
    y = FiniteSpace.sierpinski()
    assert is_continuous({"a": "o", "b": "c"}, x, y)
    assert not is_continuous({"o": "a", "c": "b"}, y, x)
