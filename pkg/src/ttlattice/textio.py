"""Text formats for posets and spaces, and DOT rendering."""

from __future__ import annotations

from typing import Iterable, Union

from .frames import FiniteSpace
from .poset import FiniteLattice, FinitePoset, element_label


class FormatError(ValueError):
    pass


def _lines(text: str) -> Iterable[tuple[int, str]]:
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line


def parse_poset(text: str) -> FinitePoset:
    """``elements: a b c`` followed by lines ``a < b`` (chains allowed)."""
    elements = None
    rel = []
    for n, line in _lines(text):
        if line.startswith("elements:"):
            if elements is not None:
                raise FormatError(f"line {n}: elements given twice")
            elements = line[len("elements:"):].split()
            continue
        if elements is None:
            raise FormatError(f"line {n}: expected 'elements:' first")
        parts = [p.strip() for p in line.split("<")]
        if len(parts) < 2 or any(not p or " " in p for p in parts):
            raise FormatError(f"line {n}: expected 'a < b', got {line!r}")
        for p in parts:
            if p not in elements:
                raise FormatError(f"line {n}: unknown element {p!r}")
        rel.extend(zip(parts, parts[1:]))
    if elements is None:
        raise FormatError("no 'elements:' line")
    return FinitePoset(elements, rel)


def parse_space(text: str) -> FiniteSpace:
    """``points: a b c`` followed by ``open: a b`` lines, one per basic open."""
    points = None
    base = []
    for n, line in _lines(text):
        if line.startswith("points:"):
            if points is not None:
                raise FormatError(f"line {n}: points given twice")
            points = line[len("points:"):].split()
            continue
        if points is None:
            raise FormatError(f"line {n}: expected 'points:' first")
        if not line.startswith("open:"):
            raise FormatError(f"line {n}: expected 'open: ...', got {line!r}")
        members = line[len("open:"):].split()
        for p in members:
            if p not in points:
                raise FormatError(f"line {n}: unknown point {p!r}")
        base.append(members)
    if points is None:
        raise FormatError("no 'points:' line")
    return FiniteSpace.from_base(points, base)


def sniff(text: str) -> str:
    """'poset' or 'space', from the first meaningful line."""
    for _, line in _lines(text):
        if line.startswith("elements:"):
            return "poset"
        if line.startswith("points:"):
            return "space"
        break
    raise FormatError("input must start with 'elements:' or 'points:'")


def format_poset(p: FinitePoset) -> str:
    lines = ["elements: " + " ".join(element_label(e) for e in p.elements)]
    lines += [f"{element_label(a)} < {element_label(b)}" for a, b in p.covers()]
    return "\n".join(lines) + "\n"


def format_space(x: FiniteSpace) -> str:
    lines = ["points: " + " ".join(element_label(e) for e in x.points)]
    lines += ["open: " + " ".join(sorted(element_label(e) for e in u)) for u in x.sorted_opens() if u]
    return "\n".join(lines) + "\n"


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def hasse_dot(obj: Union[FinitePoset, FiniteLattice], name: str = "hasse") -> str:
    """Hasse diagram, bottom to top."""
    p = obj.poset if isinstance(obj, FiniteLattice) else obj
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=plaintext];"]
    for e in p.elements:
        out.append(f"  {_quote(element_label(e))};")
    for a, b in p.covers():
        out.append(f"  {_quote(element_label(a))} -> {_quote(element_label(b))} [arrowhead=none];")
    out.append("}")
    return "\n".join(out) + "\n"


def chain_dot(stages: Iterable[Iterable], name: str = "filtration") -> str:
    """A filtration as a chain of its stages."""
    labels = ["{" + ",".join(sorted(element_label(p) for p in s)) + "}" for s in stages]
    out = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for k, lab in enumerate(labels):
        out.append(f"  s{k} [label={_quote(f'X<={k}: {lab}')}];")
    for k in range(len(labels) - 1):
        out.append(f"  s{k} -> s{k + 1};")
    out.append("}")
    return "\n".join(out) + "\n"
