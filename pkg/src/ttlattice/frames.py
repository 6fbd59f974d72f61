"""Finite frames, finite spaces and the Stone adjunction between them."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional

from .poset import (
    FiniteLattice,
    FinitePoset,
    LatticeError,
    is_distributive,
    meet_irreducibles,
)


class SpaceError(ValueError):
    pass


def _sorted_sets(family: Iterable[frozenset]) -> list[frozenset]:
    return sorted(family, key=lambda s: (len(s), sorted(map(repr, s))))


class FiniteSpace:
    """A finite set of points with an explicit family of open subsets."""

    __slots__ = ("points", "opens")

    def __init__(self, points: Iterable[Hashable], opens: Iterable[Iterable]):
        points = tuple(points)
        if len(set(points)) != len(points):
            raise SpaceError("point labels must be distinct")
        full = frozenset(points)
        fam = {frozenset(u) for u in opens}
        for u in fam:
            if not u <= full:
                raise SpaceError(f"open {set(u)!r} has points outside the space")
        if frozenset() not in fam or full not in fam:
            raise SpaceError("opens must contain the empty set and the whole space")
        for u in fam:
            for v in fam:
                if u | v not in fam or u & v not in fam:
                    raise SpaceError("opens are not closed under union and intersection")
        self.points = points
        self.opens = frozenset(fam)

    @classmethod
    def from_base(cls, points: Iterable[Hashable], base: Iterable[Iterable]) -> "FiniteSpace":
        """Close a family of subsets under finite unions and intersections."""
        points = tuple(points)
        fam = {frozenset(), frozenset(points)} | {frozenset(b) for b in base}
        changed = True
        while changed:
            changed = False
            for u in list(fam):
                for v in list(fam):
                    for w in (u | v, u & v):
                        if w not in fam:
                            fam.add(w)
                            changed = True
        return cls(points, fam)

    @classmethod
    def discrete(cls, points: Iterable[Hashable]) -> "FiniteSpace":
        points = tuple(points)
        return cls.from_base(points, [{p} for p in points])

    @classmethod
    def indiscrete(cls, points: Iterable[Hashable]) -> "FiniteSpace":
        points = tuple(points)
        return cls(points, [frozenset(), frozenset(points)])

    @classmethod
    def sierpinski(cls) -> "FiniteSpace":
        return cls(("o", "c"), [frozenset(), {"o"}, {"o", "c"}])

    @classmethod
    def alexandrov(cls, poset: FinitePoset) -> "FiniteSpace":
        """Opens are the downward-closed subsets of ``poset``."""
        return cls(poset.elements, poset.downsets())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FiniteSpace)
            and set(self.points) == set(other.points)
            and self.opens == other.opens
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.points), self.opens))

    def __len__(self) -> int:
        return len(self.points)

    def __repr__(self) -> str:
        return f"FiniteSpace(points={list(self.points)!r}, opens={len(self.opens)})"

    @property
    def full(self) -> frozenset:
        return frozenset(self.points)

    def sorted_opens(self) -> list[frozenset]:
        return _sorted_sets(self.opens)

    def closed_sets(self) -> list[frozenset]:
        return _sorted_sets(self.full - u for u in self.opens)

    def is_open(self, subset: Iterable) -> bool:
        return frozenset(subset) in self.opens

    def is_closed(self, subset: Iterable) -> bool:
        return self.full - frozenset(subset) in self.opens

    def interior(self, subset: Iterable) -> frozenset:
        subset = frozenset(subset)
        return frozenset().union(*(u for u in self.opens if u <= subset))

    def closure(self, subset: Iterable) -> frozenset:
        return self.full - self.interior(self.full - frozenset(subset))

    def neighbourhood(self, x) -> frozenset:
        """Smallest open set containing ``x``."""
        return frozenset.intersection(*(u for u in self.opens if x in u))

    def specializes(self, x, y) -> bool:
        """``x`` lies in the closure of ``{y}``."""
        return x in self.closure({y})

    def subspace(self, subset: Iterable) -> "FiniteSpace":
        subset = frozenset(subset)
        pts = tuple(p for p in self.points if p in subset)
        return FiniteSpace(pts, {u & subset for u in self.opens})

    def to_json(self) -> dict:
        from .poset import element_label

        return {
            "points": [element_label(p) for p in self.points],
            "opens": [sorted(element_label(p) for p in u) for u in self.sorted_opens()],
        }


class FiniteFrame:
    """A finite bounded distributive lattice, hence a frame."""

    __slots__ = ("lattice",)

    def __init__(self, lattice: FiniteLattice):
        verdict = is_distributive(lattice)
        if not verdict.distributive:
            raise LatticeError(f"not distributive; witness {verdict.witness!r} ({verdict.forbidden})")
        self.lattice = lattice

    @property
    def elements(self) -> tuple:
        return self.lattice.elements

    @property
    def top(self):
        return self.lattice.top

    @property
    def bottom(self):
        return self.lattice.bottom

    def __len__(self) -> int:
        return len(self.lattice)

    def __repr__(self) -> str:
        return f"FiniteFrame(n={len(self)})"

    def leq(self, a, b) -> bool:
        return self.lattice.leq(a, b)

    def meet(self, a, b):
        return self.lattice.meet(a, b)

    def join(self, a, b):
        return self.lattice.join(a, b)

    def check_frame_law(self) -> Optional[tuple]:
        """Scan ``a ^ (join S) = join (a ^ s)`` over all pairs; finite joins suffice."""
        els = self.elements
        for a in els:
            for b in els:
                for c in els:
                    if self.meet(a, self.join(b, c)) != self.join(self.meet(a, b), self.meet(a, c)):
                        return (a, b, c)
        return None


@dataclass(frozen=True)
class FramePoint:
    """A frame map to the two-element frame, stored as its prime element."""

    prime: Hashable
    frame: FiniteFrame = field(compare=False, hash=False, repr=False)

    def __call__(self, f) -> int:
        return 0 if self.frame.leq(f, self.prime) else 1

    def assignment(self) -> dict:
        return {f: self(f) for f in self.frame.elements}

    def is_frame_map(self) -> bool:
        fr = self.frame
        if self(fr.bottom) != 0 or self(fr.top) != 1:
            return False
        return all(
            self(fr.meet(a, b)) == min(self(a), self(b)) and self(fr.join(a, b)) == max(self(a), self(b))
            for a in fr.elements
            for b in fr.elements
        )


def points(frame: FiniteFrame) -> list[FramePoint]:
    """Points of a finite frame: its meet-irreducible elements below the top."""
    return [FramePoint(p, frame) for p in meet_irreducibles(frame.lattice)]


def point_open(frame: FiniteFrame, f) -> frozenset:
    """``U_f``, the primes ``p`` with ``p(f) = 1``."""
    return frozenset(p.prime for p in points(frame) if p(f))


def pt_space(frame: FiniteFrame) -> FiniteSpace:
    pts = points(frame)
    labels = tuple(p.prime for p in pts)
    opens = {frozenset(p.prime for p in pts if p(f)) for f in frame.elements}
    return FiniteSpace(labels, opens)


def omega(space: FiniteSpace) -> FiniteFrame:
    return FiniteFrame(FiniteLattice.of_sets(space.opens))


def generic_prime(space: FiniteSpace, x) -> frozenset:
    """Prime element of Omega(X) attached to ``x``: the complement of its closure."""
    return space.full - space.closure({x})


@dataclass(frozen=True)
class StoneCounit:
    mapping: Mapping
    isomorphism: bool
    spatial: bool


@dataclass(frozen=True)
class StoneUnit:
    mapping: Mapping
    injective: bool
    homeomorphism: bool


def is_spatial(frame: FiniteFrame) -> bool:
    """Points separate ``m`` from ``n`` whenever ``m`` is not below ``n``."""
    pts = points(frame)
    return all(
        any(p(m) == 1 and p(n) == 0 for p in pts)
        for m in frame.elements
        for n in frame.elements
        if not frame.leq(m, n)
    )


def stone_counit(frame: FiniteFrame) -> StoneCounit:
    """``f -> U_f`` into Omega(pt F), with an isomorphism verdict."""
    mapping = {f: point_open(frame, f) for f in frame.elements}
    target = pt_space(frame).opens
    bijective = set(mapping.values()) == set(target) and len(set(mapping.values())) == len(frame)
    order_iso = all(
        frame.leq(a, b) == (mapping[a] <= mapping[b]) for a in frame.elements for b in frame.elements
    )
    return StoneCounit(mapping, bijective and order_iso, is_spatial(frame))


def stone_unit(space: FiniteSpace) -> StoneUnit:
    """``x -> p_x`` into pt(Omega X); a homeomorphism exactly when X is sober."""
    fr = omega(space)
    primes = {p.prime for p in points(fr)}
    mapping = {x: generic_prime(space, x) for x in space.points}
    if not set(mapping.values()) <= primes:
        raise SpaceError("unit landed outside the points of Omega(X)")
    injective = len(set(mapping.values())) == len(space.points)
    surjective = set(mapping.values()) == primes
    homeo = injective and surjective and is_homeomorphism(mapping, space, pt_space(fr))
    return StoneUnit(mapping, injective, homeo)


def is_continuous(g: Mapping, x: FiniteSpace, y: FiniteSpace) -> bool:
    return all(frozenset(p for p in x.points if g[p] in v) in x.opens for v in y.opens)


def is_homeomorphism(g: Mapping, x: FiniteSpace, y: FiniteSpace) -> bool:
    if len(set(g.values())) != len(x.points) or set(g.values()) != set(y.points):
        return False
    return {frozenset(g[p] for p in u) for u in x.opens} == set(y.opens)


def preimage_map(g: Mapping, x: FiniteSpace, y: FiniteSpace) -> dict:
    """Omega(g): Omega(Y) -> Omega(X)."""
    return {v: frozenset(p for p in x.points if g[p] in v) for v in y.opens}


def is_frame_map(h: Mapping, source: FiniteFrame, target: FiniteFrame) -> bool:
    if h[source.bottom] != target.bottom or h[source.top] != target.top:
        return False
    return all(
        h[source.meet(a, b)] == target.meet(h[a], h[b]) and h[source.join(a, b)] == target.join(h[a], h[b])
        for a in source.elements
        for b in source.elements
    )


def pt_map(h: Mapping, source: FiniteFrame, target: FiniteFrame) -> dict:
    """pt(h): pt(target) -> pt(source), ``q -> q o h`` on prime labels."""
    out = {}
    for q in points(target):
        zero = [f for f in source.elements if q(h[f]) == 0]
        out[q.prime] = source.lattice.join_all(zero)
    return out


@dataclass(frozen=True)
class TriangleReport:
    frame_side: bool
    space_side: bool


def triangle_identities(frame: FiniteFrame, space: FiniteSpace) -> TriangleReport:
    """Both adjunction triangle identities, checked pointwise.

    Frame side: pt(counit_F) o unit_{pt F} is the identity on pt F.
    Space side: Omega(unit_X) o counit_{Omega X} is the identity on Omega X.
    """
    counit = stone_counit(frame).mapping
    frame_ok = True
    for p in points(frame):
        # unit at p is the point U -> [p in U] of Omega(pt F); compose with counit
        composed = {f: int(p.prime in counit[f]) for f in frame.elements}
        frame_ok &= composed == p.assignment()
    unit = stone_unit(space).mapping
    om = omega(space)
    space_ok = True
    for u in space.opens:
        # counit_{Omega X}(U) = {q : q(U) = 1}; pull back along the unit
        pulled = frozenset(x for x in space.points if not om.leq(u, unit[x]))
        space_ok &= pulled == u
    return TriangleReport(frame_ok, space_ok)


# -- properties -----------------------------------------------------------


@dataclass(frozen=True)
class SpaceProperties:
    t0: bool
    sober: bool
    td: bool
    coherent: bool
    quasi_compact: bool
    compact_basis: bool
    compact_meets: bool
    generic_points: Mapping

    def to_json(self) -> dict:
        from .poset import element_label

        return {
            "t0": self.t0,
            "sober": self.sober,
            "td": self.td,
            "coherent": self.coherent,
            "quasi_compact": self.quasi_compact,
            "compact_basis": self.compact_basis,
            "compact_meets": self.compact_meets,
            "generic_points": {
                element_label(k): [element_label(g) for g in v] for k, v in sorted(
                    self.generic_points.items(), key=lambda kv: element_label(kv[0])
                )
            },
        }


def is_quasi_compact(space: FiniteSpace, subset: Iterable) -> bool:
    """Every open cover of ``subset`` has a finite subcover.

    Any cover is drawn from the finite family ``space.opens`` and so is its
    own finite subcover; what remains is that the cover actually covers.
    """
    subset = frozenset(subset)
    cover = [u for u in space.opens if u & subset]
    return subset <= frozenset().union(*cover) if cover else not subset


def irreducible_closed_sets(space: FiniteSpace) -> list[frozenset]:
    closed = space.closed_sets()
    out = []
    for c in closed:
        if not c:
            continue
        proper = [d for d in closed if d < c]
        if not any(a | b == c for a in proper for b in proper):
            out.append(c)
    return out


def is_locally_closed_point(space: FiniteSpace, x) -> bool:
    """``{x}`` is an open set intersected with a closed set."""
    closed = space.closed_sets()
    return any(u & c == {x} for u in space.opens if x in u for c in closed if x in c)


def space_properties(space: FiniteSpace) -> SpaceProperties:
    nbhds = {x: space.neighbourhood(x) for x in space.points}
    t0 = len(set(nbhds.values())) == len(space.points)
    generic = {
        c: [x for x in space.points if space.closure({x}) == c] for c in irreducible_closed_sets(space)
    }
    sober = t0 and all(len(g) == 1 for g in generic.values())
    td = all(is_locally_closed_point(space, x) for x in space.points)
    qc_opens = [u for u in space.opens if is_quasi_compact(space, u)]
    quasi_compact = is_quasi_compact(space, space.full)
    compact_basis = all(u == frozenset().union(*(v for v in qc_opens if v <= u)) for u in space.opens)
    compact_meets = all(is_quasi_compact(space, u & v) for u in qc_opens for v in qc_opens)
    coherent = sober and quasi_compact and compact_basis and compact_meets
    return SpaceProperties(t0, sober, td, coherent, quasi_compact, compact_basis, compact_meets, generic)


def hochster_dual(space: FiniteSpace) -> FiniteSpace:
    """Same points; basic opens are the closed sets with quasi-compact complement."""
    if not space_properties(space).coherent:
        raise SpaceError("Hochster duality needs a coherent space")
    base = [space.full - u for u in space.opens if is_quasi_compact(space, u)]
    return FiniteSpace.from_base(space.points, base)


def thomason_frame(space: FiniteSpace) -> FiniteFrame:
    """Thomason subsets of a coherent space: the opens of its Hochster dual."""
    return omega(hochster_dual(space))
