import random

import pytest

from ttlattice.bigsupport import (
    ALWAYS_EQUAL_IN_FINITE_MODEL,
    CategorifiedError,
    CategorifiedLattice,
    HypothesisError,
    big_supp,
    cb_filtration,
    cutouts,
    gamma_point,
    interval_restrict,
    ltg_check,
    open_categorified,
    random_tau,
    sigma,
    sigma_property_suite,
    sigma_tilde,
    supp_adjoint,
    thomason_categorified,
    upsilon,
)
from ttlattice.frames import FiniteSpace
from ttlattice.suites import finite_t0_spaces, random_t0_space

X3 = FiniteSpace.from_base(["g", "c1", "c2"], [["g"], ["g", "c1"], ["g", "c2"]])
INDISCRETE = FiniteSpace(["a", "b"], [set(), {"a", "b"}])
S = frozenset


def test_thomason_frame_of_three_points():
    cl = thomason_categorified(X3)
    assert set(cl.elements()) == {S(), S({"c1"}), S({"c2"}), S({"c1", "c2"}), X3.full}


def test_sigma_values():
    cl = thomason_categorified(X3)
    assert sigma(cl, {"g"}) == X3.full
    assert sigma(cl, {"c1"}) == S({"c1"})
    assert sigma(cl, set()) == S()


def test_sigma_tilde_is_filter():
    cl = thomason_categorified(X3)
    flt = sigma_tilde(cl, {"c1"})
    assert {"c1"} in flt and {"c2"} not in flt
    assert len(sigma_tilde(cl, set())) == len(cl.elements())


def test_tau_must_be_injective():
    with pytest.raises(CategorifiedError):
        CategorifiedLattice(X3, ["s"], {u: ["s"] if u else [] for u in X3.opens})


def test_gamma_generic_point():
    c = gamma_point(open_categorified(X3), "g")
    assert c.open_part == S({"g"})
    assert c.closed_set == X3.full
    assert c.cut == S({"g"})


def test_gamma_closed_point():
    c = gamma_point(open_categorified(X3), "c1")
    assert c.open_part == X3.full
    assert c.closed_set == S({"c1"})


def test_gamma_needs_td():
    with pytest.raises(HypothesisError):
        gamma_point(open_categorified(INDISCRETE), "a")


def test_cutouts_partition_carrier():
    cl = random_tau(X3, random.Random(1))
    cuts = cutouts(cl)
    assert upsilon(cl, X3.points, cuts) == S(cl.carrier)
    assert sum(len(c.image) for c in cuts.values()) == len(cl.carrier)


def test_cb_ranks():
    discrete = FiniteSpace(["a", "b"], [set(), {"a"}, {"b"}, {"a", "b"}])
    assert cb_filtration(discrete).rank == 0
    assert cb_filtration(X3).rank == 1
    assert cb_filtration(X3).stages == (S({"g"}), X3.full)
    assert cb_filtration(INDISCRETE).rank is None


def test_interval_restrict():
    cl = open_categorified(X3)
    z = interval_restrict(cl, {"g"})
    assert set(z.points) == {"c1", "c2"}
    assert len(z.elements()) == 4
    assert interval_restrict(cl, set()).elements() == cl.elements()
    assert interval_restrict(cl, X3.full).elements() == [S()]


def test_interval_restrict_rejects_non_open():
    with pytest.raises(CategorifiedError):
        interval_restrict(open_categorified(X3), {"c1"})


def test_supp_values():
    cl = open_categorified(X3)
    assert big_supp(cl, upsilon(cl, {"c1"})) == S({"c1"})
    assert big_supp(cl, {"g", "c2"}) == S({"g", "c2"})
    assert supp_adjoint(cl, {"g", "c2"}) == S({"g", "c2"})
    assert big_supp(cl, set()) == S()


def test_ltg_three_points():
    assert ltg_check(open_categorified(X3)).verdict == "pass"
    assert ltg_check(thomason_categorified(X3)).verdict == "pass"


def test_ltg_inapplicable():
    rep = ltg_check(open_categorified(INDISCRETE))
    assert rep.verdict == "inapplicable"
    assert rep.hypotheses["cb_rank_defined"] is False


@pytest.mark.parametrize("seed", range(10))
def test_ltg_random_tau(seed):
    rng = random.Random(seed)
    assert ltg_check(random_tau(random_t0_space(rng), rng), seed=seed).passed


def test_ltg_small_t0_spaces():
    for x in finite_t0_spaces(4):
        assert ltg_check(open_categorified(x)).verdict == "pass"


def test_sigma_items():
    cl = thomason_categorified(X3)
    fams = [[{"g"}, {"c1"}], [{"c1"}, {"c2"}, set()], [{"g", "c1"}]]
    rep = sigma_property_suite(cl, fams)
    assert rep.passed
    assert len(rep.items) == 13
    for item in rep.items:
        if item.name in ALWAYS_EQUAL_IN_FINITE_MODEL:
            assert item.strict == 0
