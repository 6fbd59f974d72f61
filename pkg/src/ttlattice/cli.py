"""Command-line front end.

Exit status is 0 when the checked property holds (or a verdict such as an
undefined rank is reported), 1 when a property fails, and 2 for usage and
input errors.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import __version__
from .bigsupport import (
    CategorifiedError,
    HypothesisError,
    big_supp,
    cb_filtration,
    cutouts,
    ltg_check,
    open_categorified,
    supp_adjoint,
    thomason_categorified,
)
from .frames import (
    FiniteFrame,
    FiniteSpace,
    SpaceError,
    hochster_dual,
    omega,
    points,
    pt_space,
    space_properties,
    stone_counit,
    stone_unit,
    triangle_identities,
)
from .perf import (
    ModelViolation,
    NotFinitelyPresented,
    ObjectParseError,
    TensorPrime,
    ThomKind,
    object_with_support,
    parse_handle,
    parse_object,
    parse_thomason,
    phi,
    psi,
    rho,
    support,
    tensor,
)
from .poly import FieldMismatch, FieldSpec, Poly, PolyParseError
from .poset import (
    FinitePoset,
    LatticeError,
    PosetError,
    _triple_scan,
    birkhoff_round_trip,
    downset_lattice,
    element_label,
    find_forbidden_sublattice,
    is_lattice,
    join_irreducibles,
)
from .radical import (
    PrimeIdealKx,
    RadicalIdeal,
    UndecidableFactorization,
    irreducibility,
    rad_join,
    rad_meet,
)
from .suites import DEFAULT_SEED, SUITES, run_suite
from .textio import FormatError, chain_dot, hasse_dot, parse_poset, parse_space, sniff

FIELD_ENV = "TTLATTICE_FIELD"
FORMATS = ("text", "json", "dot")

# library errors that mean "this input is not acceptable here"
INPUT_ERRORS = (
    FormatError,
    PosetError,
    LatticeError,
    SpaceError,
    PolyParseError,
    FieldMismatch,
    ObjectParseError,
    NotFinitelyPresented,
    UndecidableFactorization,
    HypothesisError,
    CategorifiedError,
    ValueError,
)


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list
    ok: bool
    result: dict
    text: list
    dot: Optional[str] = None
    seconds: Optional[float] = None

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "command": self.command,
            "passed": self.ok,
            "result": self.result,
            "version": __version__,
        }
        if timing and self.seconds is not None:
            out["seconds"] = f"{self.seconds:.3f}"
        return out


def emit(report: Report, fmt: str, timing: bool = False) -> bytes:
    if fmt == "json":
        body = json.dumps(report.to_json(timing), sort_keys=True, indent=2, ensure_ascii=False)
        return (body + "\n").encode()
    if fmt == "dot":
        if report.dot is None:
            raise UsageError(f"'{' '.join(report.command[:2])}' has no DOT rendering")
        return report.dot.encode()
    if fmt == "text":
        lines = list(report.text)
        if timing and report.seconds is not None:
            lines.append(f"time: {report.seconds:.3f}s")
        return ("\n".join(lines) + "\n").encode()
    raise UsageError(f"unknown format {fmt!r}")


# -- input helpers ---------------------------------------------------------


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str) -> tuple[str, object]:
    text = _read(path)
    kind = sniff(text)
    return kind, parse_poset(text) if kind == "poset" else parse_space(text)


def _load_space(path: str) -> FiniteSpace:
    kind, obj = _load(path)
    return FiniteSpace.alexandrov(obj) if kind == "poset" else obj


def _default_field() -> FieldSpec:
    return FieldSpec.parse(os.environ.get(FIELD_ENV, "Q"))


def _split_field(tokens: Sequence[str], explicit: Optional[str]) -> tuple[list[str], FieldSpec]:
    """Strip a trailing ``mod p`` / ``over Q`` from the argument list."""
    toks = list(tokens)
    found = None
    if len(toks) >= 2 and toks[-2].lower() in ("mod", "over"):
        found = FieldSpec.parse(" ".join(toks[-2:]))
        toks = toks[:-2]
    elif toks and toks[-1].lower().startswith(("mod ", "over ")):
        found = FieldSpec.parse(toks.pop())
    if explicit is not None:
        given = FieldSpec.parse(explicit)
        if found is not None and found != given:
            raise UsageError(f"--field {given} conflicts with trailing {found}")
        found = given
    return toks, found or _default_field()


def _points_text(pts) -> str:
    return "{" + ", ".join(str(p.generator) for p in sorted(pts, key=PrimeIdealKx.sort_key)) + "}"


def _label_set(s) -> list:
    return sorted(element_label(x) for x in s)


# -- lattice ---------------------------------------------------------------


def cmd_lattice_check(args) -> Report:
    kind, p = _load(args.file)
    if kind != "poset":
        raise UsageError("lattice check expects a poset file")
    cmd = ["lattice", "check", args.file]
    lat = is_lattice(p)
    if lat is None:
        return Report(cmd, False, {"lattice": False}, ["not a lattice"], hasse_dot(p))
    witness = _triple_scan(lat)
    forb = find_forbidden_sublattice(lat)
    if (witness is None) != (forb is None):
        raise LatticeError("triple scan and M3/N5 search disagree")
    res = {
        "lattice": True,
        "distributive": witness is None,
        "join_irreducibles": _label_set(join_irreducibles(lat)),
        "structure": lat.to_json(),
    }
    text = [f"lattice with {len(lat)} elements"]
    if witness is None:
        res["birkhoff_round_trip"] = birkhoff_round_trip(lat)
        text.append("distributive")
        text.append("birkhoff round trip: " + ("ok" if res["birkhoff_round_trip"] else "FAILED"))
        ok = res["birkhoff_round_trip"]
    else:
        res["witness"] = [element_label(x) for x in witness]
        res["forbidden"] = {"kind": forb[0], "elements": [element_label(x) for x in forb[1]]}
        text.append("not distributive")
        text.append("witness: " + " ".join(res["witness"]))
        text.append(f"contains {forb[0]}: " + " ".join(res["forbidden"]["elements"]))
        ok = False
    return Report(cmd, ok, res, text, hasse_dot(lat))


# -- stone -----------------------------------------------------------------


def _frame_and_space(path: str) -> tuple[FiniteFrame, FiniteSpace]:
    kind, obj = _load(path)
    if kind == "poset":
        return FiniteFrame(downset_lattice(obj)), FiniteSpace.alexandrov(obj)
    return omega(obj), obj


def cmd_stone_points(args) -> Report:
    frame, _ = _frame_and_space(args.file)
    pts = [element_label(p.prime) for p in points(frame)]
    space = pt_space(frame)
    res = {"points": pts, "space": space.to_json()}
    text = [f"{len(pts)} points"] + [f"  {p}" for p in pts]
    return Report(["stone", "points", args.file], True, res, text, hasse_dot(frame.lattice))


def cmd_stone_dual(args) -> Report:
    x = _load_space(args.file)
    dual = hochster_dual(x)
    res = {"dual": dual.to_json(), "properties": space_properties(dual).to_json()}
    text = ["points: " + " ".join(element_label(p) for p in dual.points)]
    text += ["open: " + " ".join(sorted(element_label(p) for p in u)) for u in dual.sorted_opens() if u]
    spec = FinitePoset.from_leq(list(dual.points), lambda a, b: a in dual.closure({b}))
    return Report(["stone", "dual", args.file], True, res, text, hasse_dot(spec))


def cmd_stone_roundtrip(args) -> Report:
    frame, space = _frame_and_space(args.file)
    counit = stone_counit(frame)
    unit = stone_unit(space)
    tri = triangle_identities(frame, space)
    props = space_properties(space)
    res = {
        "counit_isomorphism": counit.isomorphism,
        "spatial": counit.spatial,
        "unit_homeomorphism": unit.homeomorphism,
        "sober": props.sober,
        "triangle_frame_side": tri.frame_side,
        "triangle_space_side": tri.space_side,
    }
    ok = counit.isomorphism and tri.frame_side and tri.space_side and unit.homeomorphism == props.sober
    text = [f"{k}: {'yes' if v else 'no'}" for k, v in res.items()]
    return Report(["stone", "roundtrip", args.file], ok, res, text, hasse_dot(frame.lattice))


# -- rad -------------------------------------------------------------------


def _rad_of(text: str, fld: FieldSpec) -> RadicalIdeal:
    return RadicalIdeal.radical_of(Poly.parse(text, fld))


def cmd_rad(args) -> Report:
    fld = FieldSpec.parse(args.field)
    if not args.polys:
        raise UsageError("rad needs at least one polynomial")
    cmd = ["rad", str(fld), args.op] + list(args.polys)
    if args.op == "prime":
        verdicts = {}
        for t in args.polys:
            f = Poly.parse(t, fld)
            if f.is_zero():
                v = "prime"
            elif f.degree == 0:
                v = "not_prime"
            else:
                v = irreducibility(f.monic()).value
            verdicts[t] = v
        text = [verdicts[args.polys[0]]] if len(args.polys) == 1 else [f"{t}: {v}" for t, v in verdicts.items()]
        return Report(cmd, True, {"field": str(fld), "verdicts": verdicts}, text)
    ideals = [_rad_of(t, fld) for t in args.polys]
    op = rad_meet if args.op == "meet" else rad_join
    acc = ideals[0]
    for i in ideals[1:]:
        acc = op(acc, i)
    return Report(cmd, True, {"field": str(fld), "ideal": acc.to_json(), "text": str(acc)}, [str(acc)])


# -- ttspec ----------------------------------------------------------------


def _expect(toks: list, n: int, what: str) -> None:
    if len(toks) != n:
        raise UsageError(f"expected {what}, got {len(toks)} argument(s)")


def cmd_ttspec(args) -> Report:
    toks, fld = _split_field(args.args, args.field)
    op = args.op
    cmd = ["ttspec", op] + list(args.args)
    if op == "support":
        _expect(toks, 1, "one object")
        s = support(parse_object(toks[0], fld))
        out = "whole" if s.whole else _points_text(s.points)
        return Report(cmd, True, {"field": str(fld), "support": s.to_json()}, [out])
    if op == "tensor":
        _expect(toks, 2, "two objects")
        t = tensor(parse_object(toks[0], fld), parse_object(toks[1], fld))
        return Report(cmd, True, {"field": str(fld), "object": t.to_json(), "text": str(t)}, [str(t)])
    if op == "rho":
        _expect(toks, 1, "one prime, e.g. '(x)' or '(0)'")
        body = toks[0].strip()
        if body.startswith("(") and body.endswith(")"):
            body = body[1:-1]
        f = Poly.parse(body, fld)
        if f.degree == 0:
            raise UsageError("the unit ideal is not prime")
        p = PrimeIdealKx.zero(fld) if f.is_zero() else PrimeIdealKx.closed(f)
        depth = args.search_degree if args.search_degree is not None else max(p.generator.degree if p.generator else 1, 2)
        try:
            got = rho(TensorPrime(p), depth)
        except ModelViolation as exc:
            return Report(cmd, False, {"field": str(fld), "prime": str(p), "violation": str(exc)}, [f"violation: {exc}"])
        ok = got == p
        return Report(cmd, ok, {"field": str(fld), "prime": str(p), "rho": str(got), "search_degree": depth}, [str(got)])
    if op == "phi":
        _expect(toks, 1, "one ideal handle")
        v = phi(parse_handle(toks[0], fld))
        return Report(cmd, True, {"field": str(fld), "thomason": v.to_json(), "text": str(v)}, [str(v)])
    if op == "psi":
        _expect(toks, 1, "one Thomason description")
        j = psi(parse_thomason(toks[0], fld))
        return Report(cmd, True, {"field": str(fld), "handle": j.to_json(), "text": str(j)}, [str(j)])
    if op == "object-for":
        _expect(toks, 1, "one Thomason description")
        v = parse_thomason(toks[0], fld)
        e = object_with_support(v)
        s = support(e)
        ok = s.whole if v.kind is ThomKind.WHOLE else (not s.whole and s.points == v.points)
        return Report(cmd, ok, {"field": str(fld), "object": e.to_json(), "text": str(e)}, [str(e)])
    raise UsageError(f"unknown ttspec operation {op!r}")


# -- big -------------------------------------------------------------------


def _categorified(x: FiniteSpace, tau: str):
    if tau == "open":
        return open_categorified(x)
    if tau == "thomason" or space_properties(x).coherent:
        return thomason_categorified(x)
    return open_categorified(x)


def cmd_big(args) -> Report:
    x = _load_space(args.file)
    cmd = ["big", args.op, args.file]
    if args.op == "cb-rank":
        cb = cb_filtration(x)
        rank = "undefined" if cb.rank is None else str(cb.rank)
        text = [rank] + [f"X<={k}: {{{','.join(_label_set(s))}}}" for k, s in enumerate(cb.stages)]
        return Report(cmd, True, cb.to_json(), text, chain_dot(cb.stages))
    cl = _categorified(x, args.tau)
    if args.op == "ltg":
        rep = ltg_check(cl, seed=args.seed)
        text = [rep.verdict] + [f"{k}: {'ok' if v else 'FAILED'}" for k, v in sorted(rep.checks.items())]
        if not rep.applicable:
            text += [f"hypothesis {k}: {'yes' if v else 'no'}" for k, v in sorted(rep.hypotheses.items())]
        return Report(cmd, rep.verdict != "fail", rep.to_json(), text)
    if args.op == "supp":
        if args.set is None:
            raise UsageError("big supp needs --set")
        labels = {element_label(c): c for c in cl.carrier}
        wanted = [t.strip() for t in args.set.split(",") if t.strip()]
        unknown = [t for t in wanted if t not in labels]
        if unknown:
            raise UsageError(f"not in the carrier: {', '.join(unknown)}")
        w = [labels[t] for t in wanted]
        cuts = cutouts(cl)
        s = big_supp(cl, w, cuts)
        adj = supp_adjoint(cl, w, cuts)
        res = {"set": sorted(wanted), "supp": _label_set(s), "adjoint": _label_set(adj)}
        cmd.append("--set=" + args.set)
        return Report(cmd, s == adj, res, ["{" + ",".join(_label_set(s)) + "}"])
    raise UsageError(f"unknown big operation {args.op!r}")


# -- fuzz ------------------------------------------------------------------


def cmd_fuzz(args) -> Report:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all")
    if args.samples is not None and args.samples < 1:
        raise UsageError("--samples must be positive")
    results = [run_suite(n, seed=args.seed, samples=args.samples) for n in names]
    text = [f"{r.name}: {'pass' if r.passed else 'FAIL'} ({r.checked} checks)" for r in results]
    for r in results:
        for w in r.failures:
            text.append(f"  {r.name} counterexample: {json.dumps(w, sort_keys=True, default=str)}")
    res = {"seed": args.seed, "suites": [r.to_json() for r in results]}
    return Report(["fuzz", args.suite, f"--seed={args.seed}"], all(r.passed for r in results), res, text)


# -- argument parsing ------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}\n{self.format_usage().strip()}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", default="text", help="text, json or dot")
    common.add_argument("--timing", action="store_true", help="include wall-clock time (breaks byte-identity)")

    top = _Parser(prog="ttlattice", description="Finite lattice, frame and tt-geometry checks.", parents=[common])
    top.add_argument("--version", action="version", version=f"ttlattice {__version__}")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    lat = sub.add_parser("lattice", help="lattice checks on a poset file", parents=[common])
    lat_sub = lat.add_subparsers(dest="op", parser_class=_Parser)
    chk = lat_sub.add_parser("check", help="lattice, distributivity and Birkhoff checks", parents=[common])
    chk.add_argument("file")
    chk.set_defaults(run=cmd_lattice_check)

    st = sub.add_parser("stone", help="Stone duality on a poset or space file", parents=[common])
    st_sub = st.add_subparsers(dest="op", parser_class=_Parser)
    for name, fn, helptext in (
        ("points", cmd_stone_points, "points of the frame"),
        ("dual", cmd_stone_dual, "Hochster dual of a coherent space"),
        ("roundtrip", cmd_stone_roundtrip, "unit, counit and triangle identities"),
    ):
        p = st_sub.add_parser(name, help=helptext, parents=[common])
        p.add_argument("file")
        p.set_defaults(run=fn)

    rad = sub.add_parser("rad", help="radical ideals of k[x]", parents=[common])
    rad.add_argument("field", help="Q, f5, 'mod 7', ...")
    rad.add_argument("op", choices=("meet", "join", "prime"))
    rad.add_argument("polys", nargs="*")
    rad.set_defaults(run=cmd_rad)

    tt = sub.add_parser("ttspec", help="the D^perf(k[x]) model", parents=[common])
    tt.add_argument("op", choices=("support", "tensor", "rho", "phi", "psi", "object-for"))
    tt.add_argument("args", nargs="*", help="operands, optionally followed by 'mod p' or 'over Q'")
    tt.add_argument("--field", default=None, help=f"field; default from ${FIELD_ENV} or Q")
    tt.add_argument("--search-degree", type=int, default=None, help="degree bound for rho")
    tt.set_defaults(run=cmd_ttspec)

    big = sub.add_parser("big", help="categorified lattices on a space file", parents=[common])
    big.add_argument("op", choices=("cb-rank", "ltg", "supp"))
    big.add_argument("file")
    big.add_argument("--tau", choices=("auto", "thomason", "open"), default="auto",
                     help="auto picks thomason for coherent spaces, open otherwise")
    big.add_argument("--set", default=None, help="comma-separated carrier subset for supp")
    big.add_argument("--seed", type=int, default=DEFAULT_SEED)
    big.set_defaults(run=cmd_big)

    fz = sub.add_parser("fuzz", help="run a property suite", parents=[common])
    fz.add_argument("suite", help=", ".join(SUITES) + " or all")
    fz.add_argument("--seed", type=int, default=DEFAULT_SEED)
    fz.add_argument("--samples", type=int, default=None)
    fz.set_defaults(run=cmd_fuzz)
    return top


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        try:
            args = parser.parse_args(list(argv) if argv is not None else None)
        except SystemExit as exc:  # --help / --version
            return int(exc.code or 0)
        if not hasattr(args, "run"):
            raise UsageError(parser.format_usage().strip())
        if args.format not in FORMATS:
            raise UsageError(f"unknown format {args.format!r}; choose from {', '.join(FORMATS)}")
        start = time.perf_counter()
        report = args.run(args)
        report.seconds = time.perf_counter() - start
        data = emit(report, args.format, args.timing)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except INPUT_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}, sort_keys=True), file=stderr)
        return 2
    out = getattr(stdout, "buffer", None)
    if out is not None:
        out.write(data)
        out.flush()
    else:
        stdout.write(data.decode())
    return 0 if report.ok else 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
