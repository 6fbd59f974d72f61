import io
import json
from pathlib import Path

import pytest

from ttlattice.cli import FIELD_ENV, run

DATA = str(Path(__file__).resolve().parents[1] / "data")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_m3_not_distributive():
    code, out, _ = call("lattice", "check", DATA + "/m3.poset", "--format", "json")
    assert code == 1
    res = json.loads(out)["result"]
    assert res["forbidden"]["kind"] == "M3"
    assert res["witness"] == ["a", "b", "c"]


def test_n5_not_distributive():
    code, out, _ = call("lattice", "check", DATA + "/n5.poset", "--format", "json")
    assert code == 1
    assert json.loads(out)["result"]["forbidden"]["kind"] == "N5"


def test_boolean_passes():
    assert call("lattice", "check", DATA + "/boolean4.poset")[0] == 0


def test_not_a_lattice():
    assert call("lattice", "check", DATA + "/vee.poset")[0] == 1


def test_chain_dot():
    code, out, _ = call("lattice", "check", DATA + "/chain3.poset", "--format", "dot")
    assert code == 0
    assert out.count("->") == 2
    assert out.count("[arrowhead") == 2
    assert len([l for l in out.splitlines() if l.strip().startswith('"') and "->" not in l]) == 3


def test_text_output_nonempty():
    code, out, _ = call("stone", "roundtrip", DATA + "/three_point.space")
    assert code == 0
    assert out.strip().splitlines()


def test_stone_dual():
    code, out, _ = call("stone", "dual", DATA + "/three_point.space")
    assert code == 0
    assert "open: c1\n" in out and "open: g\n" not in out


def test_rad_ops():
    assert call("rad", "f5", "join", "x", "x+1")[1].strip() == "unit"
    assert call("rad", "Q", "meet", "x", "x+1")[1].strip() == "(x^2+x)"
    assert call("rad", "Q", "prime", "x^2+1")[1].strip() == "prime"
    assert call("rad", "mod 2", "prime", "x^2+1")[1].strip() != "prime"


def test_ttspec_tensor():
    code, out, _ = call("ttspec", "tensor", "k[x]/(x)", "k[x]/(x^2)", "mod", "2")
    assert code == 0
    assert out.strip() == "k[x]/(x) + S^1 k[x]/(x)"


def test_ttspec_support_and_rho():
    assert call("ttspec", "support", "k[x]/(x^2+x)", "mod", "2")[1].strip() == "{x, x+1}"
    assert call("ttspec", "rho", "(x)", "--field", "f3")[1].strip() == "(x)"
    assert call("ttspec", "object-for", "{x,x+1}", "mod", "2")[0] == 0


def test_field_from_env(monkeypatch):
    monkeypatch.setenv(FIELD_ENV, "f2")
    _, out, _ = call("ttspec", "support", "k[x]/(x^2+1)", "--format", "json")
    assert json.loads(out)["result"]["field"] == "F_2"


def test_big_commands():
    assert call("big", "ltg", DATA + "/three_point.space")[1].startswith("pass")
    assert call("big", "cb-rank", DATA + "/three_point.space")[1].splitlines()[0] == "1"
    code, out, _ = call("big", "cb-rank", DATA + "/indiscrete2.space")
    assert (code, out.splitlines()[0]) == (0, "undefined")
    assert call("big", "ltg", DATA + "/indiscrete2.space")[0] == 0


def test_json_byte_identical():
    a = call("fuzz", "sigma", "--seed", "7", "--samples", "20", "--format", "json")
    b = call("fuzz", "sigma", "--seed", "7", "--samples", "20", "--format", "json")
    assert a == b and a[0] == 0


@pytest.mark.parametrize("argv", [
    ["bogus"],
    ["lattice", "check", DATA + "/m3.poset", "--format", "yaml"],
    ["stone", "dual", "no/such/file"],
    ["ttspec", "support", "k[x]/(x"],
    ["fuzz", "nope"],
])
def test_usage_errors(argv):
    code, out, err = call(*argv)
    assert code == 2
    assert err and not out
