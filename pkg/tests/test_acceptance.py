"""The twelve acceptance criteria, one test each, with a summary line per criterion.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; the
summary appears in the pytest terminal report either way."""

import sys

import pytest

from ttlattice.poset import is_distributive, m3, n5
from ttlattice.suites import run_suite

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # run as a script
    ACCEPTANCE_LINES = []

LIMIT = 60.0
SIGMA_INEQUALITIES = ("sigma_tilde.3", "sigma_tilde.5", "sigma_tilde.7", "sigma.3", "sigma.4", "sigma.5", "sigma.6")


def _stone(r):
    return r.details["posets"] >= 87


def _distributivity(r):
    flagged = not is_distributive(m3()).distributive and not is_distributive(n5()).distributive
    return r.details["samples"] >= 500 and flagged


def _hochster(r):
    return r.details["spaces"] == 406


def _rad(r):
    d = r.details
    return d["fields"] == ["Q", "F_2", "F_5"] and d["triples_per_field"] >= 500 and d["pairs_per_field"] >= 500


def _irreducibles(r):
    return r.details["counts"] == [2, 1, 2, 3, 6]


def _support_datum(r):
    return r.details["pairs_per_field"] >= 1000


def _classification(r):
    return r.details["descriptions"] > 0 and r.details["itemized"] > 0


def _rho(r):
    # Zero plus irreducibles of degree 1..4: 1+2+1+2+3 over F2, 1+3+3+8+18 over F3
    return r.details["primes"] == {"F_2": 9, "F_3": 33}


def _tensor(r):
    return r.details["max_power"] == 4


def _detection(r):
    return r.details["objects"] >= 1000


def _ltg(r):
    return r.details["spaces"] == 406 and r.details["indiscrete2"] == {"cb_rank": "undefined", "verdict": "inapplicable"}


def _sigma(r):
    items = r.details["items"]
    return len(items) == 13 and all(items[n]["strict"] > 0 for n in SIGMA_INEQUALITIES)


CRITERIA = [
    ("stone", "Stone duality, exhaustive", _stone),
    ("distributivity", "distributivity oracle equivalence", _distributivity),
    ("hochster", "Hochster involution", _hochster),
    ("rad", "Rad(k[x]) frame laws", _rad),
    ("irreducibles", "irreducible counts over F2", _irreducibles),
    ("support-datum", "support datum axioms", _support_datum),
    ("classification", "classification round trip", _classification),
    ("rho", "comparison map", _rho),
    ("tensor", "tensor oracle", _tensor),
    ("detection", "nilpotence and detection", _detection),
    ("ltg", "local-to-global, exhaustive", _ltg),
    ("sigma", "sigma property suite with strict instances", _sigma),
]


def evaluate(suite, extra):
    r = run_suite(suite)
    ok = r.passed and r.seconds < LIMIT and extra(r)
    return ok, r


@pytest.mark.parametrize("suite,label,extra", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(suite, label, extra):
    ok, r = evaluate(suite, extra)
    ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'} {label} ({r.checked} checks, {r.seconds:.1f}s)")
    assert r.passed, r.failures[:3]
    assert r.seconds < LIMIT
    if suite == "sigma":
        missing = [n for n in SIGMA_INEQUALITIES if r.details["items"][n]["strict"] == 0]
        assert not missing, f"no strict instance for {missing}"
    assert extra(r), r.details


if __name__ == "__main__":
    bad = 0
    for suite, label, extra in CRITERIA:
        ok, r = evaluate(suite, extra)
        bad += not ok
        print(f"{'PASS' if ok else 'FAIL'} {label} ({r.checked} checks, {r.seconds:.1f}s)")
    sys.exit(1 if bad else 0)
