"""A classified model of D^perf(k[x]).

Objects are formal sums of shifted indecomposables: k[x] itself and the
torsion modules k[x]/(f^n) with f monic irreducible.  Morphisms are never
needed; cones only appear through Koszul objects, which are objects.
"""

from __future__ import annotations

import enum
import re
from collections import Counter
from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional

from .frames import FiniteSpace
from .poly import FieldMismatch, FieldSpec, Poly, split_field_suffix
from .radical import (
    PrimeIdealKx,
    PrimeVerdict,
    enumerate_irreducibles,
    factorization,
    irreducibility,
    spec_points,
)


class ModelViolation(RuntimeError):
    """An internal consistency check of the model failed."""


class NotFinitelyPresented(ValueError):
    pass


class ObjectParseError(ValueError):
    pass


@lru_cache(maxsize=4096)
def _irreducible(f: Poly) -> bool:
    return irreducibility(f) is PrimeVerdict.PRIME


@dataclass(frozen=True)
class Indecomposable:
    """k[x] when ``generator`` is None, else k[x]/(generator^power)."""

    generator: Optional[Poly] = None
    power: int = 0

    def __post_init__(self):
        if self.generator is None:
            if self.power:
                raise ValueError("the free module carries no power")
            return
        if self.power < 1:
            raise ValueError("torsion power must be >= 1")
        if not self.generator.is_monic() or not _irreducible(self.generator):
            raise ValueError(f"{self.generator} is not monic irreducible")

    @property
    def is_free(self) -> bool:
        return self.generator is None

    def sort_key(self) -> tuple:
        if self.generator is None:
            return (-1, (), 0)
        return (self.generator.degree, tuple(reversed(self.generator.coeffs)), self.power)

    def point(self) -> PrimeIdealKx:
        return PrimeIdealKx.closed(self.generator)

    def __str__(self) -> str:
        if self.generator is None:
            return "k[x]"
        g = str(self.generator)
        if self.power == 1:
            return f"k[x]/({g})"
        base = g if len(self.generator.coeffs) == 2 and self.generator.coeffs[0] == 0 else f"({g})"
        return f"k[x]/({base}^{self.power})"


FREE = Indecomposable()


def torsion(f: Poly, n: int = 1) -> Indecomposable:
    return Indecomposable(f.monic(), n)


@dataclass(frozen=True)
class PerfObject:
    """A finite direct sum of Σ^shift of indecomposables.

    ``terms`` is canonical: sorted ``(shift, part, multiplicity)`` triples
    with distinct ``(shift, part)`` and positive multiplicities."""

    field: FieldSpec
    terms: tuple = ()

    @classmethod
    def build(cls, field: FieldSpec, summands: Iterable[tuple[int, Indecomposable]]) -> "PerfObject":
        counts: Counter = Counter()
        for shift, part in summands:
            if part.generator is not None and part.generator.field != field:
                raise FieldMismatch(f"{part.generator.field} vs {field}")
            counts[(shift, part)] += 1
        return cls._from_counts(field, counts)

    @classmethod
    def _from_counts(cls, field: FieldSpec, counts: Counter) -> "PerfObject":
        terms = sorted(
            ((s, p, m) for (s, p), m in counts.items() if m > 0),
            key=lambda t: (t[0],) + t[1].sort_key(),
        )
        return cls(field, tuple(terms))

    @classmethod
    def zero(cls, field: FieldSpec) -> "PerfObject":
        return cls(field, ())

    @classmethod
    def unit(cls, field: FieldSpec) -> "PerfObject":
        return cls(field, ((0, FREE, 1),))

    @classmethod
    def single(cls, part: Indecomposable, shift: int = 0, field: Optional[FieldSpec] = None) -> "PerfObject":
        fld = field if part.generator is None else part.generator.field
        if fld is None:
            raise ValueError("field needed for a free summand")
        return cls.build(fld, [(shift, part)])

    @classmethod
    def residue(cls, p: PrimeIdealKx) -> "PerfObject":
        """k[x]/(f) for a closed point (f)."""
        if p.is_zero:
            raise ValueError("the generic point has no residue object in D^perf")
        return cls.single(torsion(p.generator, 1))

    def summands(self) -> list[tuple[int, Indecomposable]]:
        return [(s, p) for s, p, m in self.terms for _ in range(m)]

    def counts(self) -> Counter:
        return Counter({(s, p): m for s, p, m in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self) -> int:
        return sum(m for _, _, m in self.terms)

    def _check(self, other: "PerfObject") -> None:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "PerfObject") -> "PerfObject":
        self._check(other)
        return PerfObject._from_counts(self.field, self.counts() + other.counts())

    def shift(self, k: int = 1) -> "PerfObject":
        return PerfObject._from_counts(
            self.field, Counter({(s + k, p): m for s, p, m in self.terms})
        )

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for s, p in self.summands():
            bits.append(str(p) if s == 0 else f"S^{s} {p}")
        return " + ".join(bits)

    def to_json(self) -> dict:
        return {
            "field": str(self.field),
            "summands": [
                {
                    "shift": s,
                    "part": "free" if p.is_free else "torsion",
                    **({} if p.is_free else {
                        "generator": [str(c) for c in p.generator.coeffs],
                        "power": p.power,
                    }),
                    "multiplicity": m,
                }
                for s, p, m in self.terms
            ],
        }


def _tensor_parts(a: Indecomposable, b: Indecomposable) -> list[tuple[int, Indecomposable]]:
    if a.is_free:
        return [(0, b)]
    if b.is_free:
        return [(0, a)]
    if a.generator != b.generator:
        return []
    low = Indecomposable(a.generator, min(a.power, b.power))
    return [(0, low), (1, low)]


def tensor(e: PerfObject, f: PerfObject) -> PerfObject:
    """Derived tensor product, extended bilinearly over summands."""
    e._check(f)
    out: Counter = Counter()
    for (s, a, m), (t, b, n) in product(e.terms, f.terms):
        for k, part in _tensor_parts(a, b):
            out[(s + t + k, part)] += m * n
    return PerfObject._from_counts(e.field, out)


def tensor_power(e: PerfObject, n: int) -> PerfObject:
    if n < 1:
        raise ValueError("tensor power needs n >= 1")
    out = e
    for _ in range(n - 1):
        out = tensor(out, e)
    return out


# -- supports --------------------------------------------------------------


@dataclass(frozen=True)
class SupportSet:
    """Whole, or a finite set of closed points."""

    field: FieldSpec
    whole: bool = False
    points: frozenset = frozenset()

    def __post_init__(self):
        if self.whole and self.points:
            object.__setattr__(self, "points", frozenset())
        if any(p.is_zero for p in self.points):
            raise ValueError("a proper support consists of closed points only")

    @classmethod
    def empty(cls, field: FieldSpec) -> "SupportSet":
        return cls(field)

    @classmethod
    def everything(cls, field: FieldSpec) -> "SupportSet":
        return cls(field, True)

    def is_empty(self) -> bool:
        return not self.whole and not self.points

    def __contains__(self, p: PrimeIdealKx) -> bool:
        return self.whole or p in self.points

    def union(self, other: "SupportSet") -> "SupportSet":
        if self.whole or other.whole:
            return SupportSet.everything(self.field)
        return SupportSet(self.field, False, self.points | other.points)

    def intersection(self, other: "SupportSet") -> "SupportSet":
        if self.whole:
            return other
        if other.whole:
            return self
        return SupportSet(self.field, False, self.points & other.points)

    def issubset(self, other: "SupportSet") -> bool:
        if other.whole:
            return True
        return not self.whole and self.points <= other.points

    def sorted_points(self) -> list[PrimeIdealKx]:
        return sorted(self.points, key=PrimeIdealKx.sort_key)

    def __str__(self) -> str:
        if self.whole:
            return "whole"
        return "{" + ", ".join(str(p) for p in self.sorted_points()) + "}"

    def to_json(self):
        if self.whole:
            return "whole"
        return [str(p.generator) for p in self.sorted_points()]


def support(e: PerfObject) -> SupportSet:
    if any(p.is_free for _, p, _ in e.terms):
        return SupportSet.everything(e.field)
    return SupportSet(e.field, False, frozenset(p.point() for _, p, _ in e.terms))


def in_prime(e: PerfObject, p: PrimeIdealKx) -> bool:
    """Membership e ∈ P(p)."""
    if p.field != e.field:
        raise FieldMismatch(f"{p.field} vs {e.field}")
    return p not in support(e)


@dataclass(frozen=True)
class TensorPrime:
    """The prime tensor-ideal P(p), accessed only through membership."""

    label: PrimeIdealKx

    def __contains__(self, e: PerfObject) -> bool:
        return in_prime(e, self.label)

    def __str__(self) -> str:
        return f"P{self.label}"


# -- the support datum axioms ----------------------------------------------


def triangles_for(a: PerfObject, c: PerfObject) -> list[tuple[str, PerfObject, PerfObject, PerfObject]]:
    """Distinguished triangles x -> y -> z available without morphisms.

    Split triangles a -> a⊕c -> c, the extension triangles
    k[x]/(f^i) -> k[x]/(f^(i+j)) -> k[x]/(f^j) for torsion summands, and the
    Koszul triangles k[x] -f-> k[x] -> k[x]/(f^n); each with its rotations."""
    fld = a.field
    base = [("split", a, a + c, c)]
    for s, part, _ in a.terms + c.terms:
        if part.is_free:
            continue
        g, n = part.generator, part.power
        if n >= 2:
            for i in range(1, n):
                x = PerfObject.single(torsion(g, i), s)
                z = PerfObject.single(torsion(g, n - i), s)
                base.append(("extension", x, PerfObject.single(part, s), z))
        free = PerfObject.single(FREE, s, fld)
        base.append(("koszul", free, free, PerfObject.single(part, s)))
    out = []
    for name, x, y, z in base:
        out.append((name, x, y, z))
        out.append((name + "/rot", y, z, x.shift(1)))
        out.append((name + "/rot2", z, x.shift(1), y.shift(1)))
    return out


@dataclass
class AxiomReport:
    checked: Counter = dc_field(default_factory=Counter)
    failures: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, axiom: str, ok: bool, witness) -> None:
        self.checked[axiom] += 1
        if not ok and axiom not in self.failures:
            self.failures[axiom] = witness

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "checked": dict(sorted(self.checked.items())),
            "failures": {k: [str(w) for w in v] for k, v in sorted(self.failures.items())},
        }


def support_datum_check(sample: Iterable[PerfObject], pairs: Optional[Iterable[tuple[PerfObject, PerfObject]]] = None) -> AxiomReport:
    """SD1-SD5 on a sample of objects and on pairs (default: consecutive)."""
    objs = list(sample)
    if not objs:
        raise ValueError("empty sample")
    fld = objs[0].field
    rep = AxiomReport()
    rep.record("SD1", support(PerfObject.zero(fld)).is_empty(), ("0",))
    rep.record("SD1", support(PerfObject.unit(fld)).whole, ("k[x]",))
    for a in objs:
        for k in (-1, 1, 2):
            rep.record("SD3", support(a.shift(k)) == support(a), (a, k))
    if pairs is None:
        pairs = zip(objs, objs[1:] + objs[:1])
    for a, b in pairs:
        sa, sb = support(a), support(b)
        rep.record("SD2", support(a + b) == sa.union(sb), (a, b))
        for name, x, y, z in triangles_for(a, b):
            rep.record("SD4", support(y).issubset(support(x).union(support(z))), (name, x, y, z))
        rep.record("SD5", support(tensor(a, b)) == sa.intersection(sb), (a, b))
    return rep


# -- Koszul objects and the comparison map ---------------------------------


def koszul(r: Poly) -> PerfObject:
    """cone(k[x] -r-> k[x])."""
    fld = r.field
    if r.is_zero():
        return PerfObject.unit(fld) + PerfObject.unit(fld).shift(1)
    if r.degree == 0:
        return PerfObject.zero(fld)
    return PerfObject.build(fld, [(0, torsion(g, n)) for g, n in factorization(r)])


def rho_contains(p: PrimeIdealKx, r: Poly) -> bool:
    """r ∈ ρ(P(p))."""
    return not (koszul(r) in TensorPrime(p))


def _monic_polys(field: FieldSpec, max_degree: int) -> Iterable[Poly]:
    if field.is_rational:
        vals = range(-2, 3)
    else:
        vals = range(field.modulus)
    for d in range(0, max_degree + 1):
        for low in product(vals, repeat=d):
            yield Poly(field, low + (1,))


def rho(prime: TensorPrime, search_degree: int) -> PrimeIdealKx:
    """ρ(P) = {r : cone(r) ∉ P}, recovered from Koszul membership alone.

    The generator is the least-degree monic member among polynomials of
    degree <= search_degree; ideal membership is then confirmed on every
    candidate polynomial in that range."""
    fld = prime.label.field
    cands = list(_monic_polys(fld, search_degree))
    if not rho_contains(prime.label, Poly(fld)):
        raise ModelViolation("0 must lie in ρ(P)")
    members = [r for r in cands if koszul(r) not in prime]
    if not members:
        found = PrimeIdealKx.zero(fld)
    else:
        found = PrimeIdealKx.closed(min(members, key=Poly.sort_key))
    for r in cands:
        expect = False if found.is_zero else found.generator.divides(r)
        if (koszul(r) not in prime) != expect:
            raise ModelViolation(f"ρ({prime}) is not the ideal {found} at r = {r}")
    return found


# -- Thomason subsets and tensor ideals ------------------------------------


class ThomKind(enum.Enum):
    FINITE = "finite"
    COFINITE = "cofinite"
    WHOLE = "whole"


@dataclass(frozen=True)
class ThomasonSubset:
    """A Thomason subset of Spec k[x]: a finite set of closed points, all
    closed points except a finite set, or the whole spectrum."""

    field: FieldSpec
    kind: ThomKind
    points: frozenset = frozenset()

    def __post_init__(self):
        if self.kind is ThomKind.WHOLE and self.points:
            raise ValueError("whole carries no point list")
        if any(p.is_zero for p in self.points):
            raise ValueError("the generic point is not specialization closed on its own")

    @classmethod
    def finite(cls, field: FieldSpec, pts: Iterable[PrimeIdealKx] = ()) -> "ThomasonSubset":
        return cls(field, ThomKind.FINITE, frozenset(pts))

    @classmethod
    def all_closed_except(cls, field: FieldSpec, pts: Iterable[PrimeIdealKx] = ()) -> "ThomasonSubset":
        return cls(field, ThomKind.COFINITE, frozenset(pts))

    @classmethod
    def whole(cls, field: FieldSpec) -> "ThomasonSubset":
        return cls(field, ThomKind.WHOLE)

    @classmethod
    def vanishing(cls, g: Poly) -> "ThomasonSubset":
        """V(g) for nonzero g."""
        if g.is_zero():
            return cls.whole(g.field)
        return cls.finite(g.field, (PrimeIdealKx.closed(f) for f, _ in factorization(g)))

    def __contains__(self, p: PrimeIdealKx) -> bool:
        if self.kind is ThomKind.WHOLE:
            return True
        if p.is_zero:
            return False
        if self.kind is ThomKind.FINITE:
            return p in self.points
        return p not in self.points

    def is_finitely_presented(self) -> bool:
        return self.kind is not ThomKind.COFINITE

    def leq(self, other: "ThomasonSubset") -> bool:
        k, l = self.kind, other.kind
        if l is ThomKind.WHOLE:
            return True
        if k is ThomKind.WHOLE:
            return False
        if k is ThomKind.FINITE and l is ThomKind.FINITE:
            return self.points <= other.points
        if k is ThomKind.FINITE:
            return not (self.points & other.points)
        if l is ThomKind.FINITE:
            return False
        return other.points <= self.points

    def meet(self, other: "ThomasonSubset") -> "ThomasonSubset":
        k, l, f = self.kind, other.kind, self.field
        if k is ThomKind.WHOLE:
            return other
        if l is ThomKind.WHOLE:
            return self
        if k is ThomKind.FINITE and l is ThomKind.FINITE:
            return ThomasonSubset.finite(f, self.points & other.points)
        if k is ThomKind.FINITE:
            return ThomasonSubset.finite(f, self.points - other.points)
        if l is ThomKind.FINITE:
            return ThomasonSubset.finite(f, other.points - self.points)
        return ThomasonSubset.all_closed_except(f, self.points | other.points)

    def join(self, other: "ThomasonSubset") -> "ThomasonSubset":
        k, l, f = self.kind, other.kind, self.field
        if ThomKind.WHOLE in (k, l):
            return ThomasonSubset.whole(f)
        if k is ThomKind.FINITE and l is ThomKind.FINITE:
            return ThomasonSubset.finite(f, self.points | other.points)
        if k is ThomKind.FINITE:
            return ThomasonSubset.all_closed_except(f, other.points - self.points)
        if l is ThomKind.FINITE:
            return ThomasonSubset.all_closed_except(f, self.points - other.points)
        return ThomasonSubset.all_closed_except(f, self.points & other.points)

    def _pts(self) -> str:
        return "{" + ", ".join(str(p.generator) for p in sorted(self.points, key=PrimeIdealKx.sort_key)) + "}"

    def __str__(self) -> str:
        if self.kind is ThomKind.WHOLE:
            return "whole"
        if self.kind is ThomKind.FINITE:
            return self._pts()
        return "all-closed" if not self.points else f"all-closed - {self._pts()}"

    def to_json(self):
        return {"kind": self.kind.value, "points": [str(p.generator) for p in sorted(self.points, key=PrimeIdealKx.sort_key)]}


class HandleKind(enum.Enum):
    TORSION_ON = "torsion_on"
    TORSION_AVOIDING = "torsion_avoiding"
    EVERYTHING = "everything"


@dataclass(frozen=True)
class TensorIdealHandle:
    """A thick tensor-ideal of D^perf(k[x]).

    TORSION_ON(S) is thick(k[x]/(f) : (f) ∈ S) for finite S, TORSION_AVOIDING(S)
    is thick(k[x]/(f) : (f) ∉ S) (the torsion ideal when S is empty) and
    EVERYTHING is the whole category."""

    field: FieldSpec
    kind: HandleKind
    points: frozenset = frozenset()

    @classmethod
    def zero_ideal(cls, field: FieldSpec) -> "TensorIdealHandle":
        return cls(field, HandleKind.TORSION_ON)

    @classmethod
    def torsion_ideal(cls, field: FieldSpec) -> "TensorIdealHandle":
        return cls(field, HandleKind.TORSION_AVOIDING)

    @classmethod
    def everything(cls, field: FieldSpec) -> "TensorIdealHandle":
        return cls(field, HandleKind.EVERYTHING)

    @classmethod
    def thick_of(cls, objs: Iterable[PerfObject], field: FieldSpec) -> "TensorIdealHandle":
        """The thick tensor-ideal generated by finitely many objects."""
        pts: set = set()
        for e in objs:
            s = support(e)
            if s.whole:
                return cls.everything(field)
            pts |= s.points
        return cls(field, HandleKind.TORSION_ON, frozenset(pts))

    @classmethod
    def prime(cls, p: PrimeIdealKx) -> "TensorIdealHandle":
        """P(p) as a handle."""
        if p.is_zero:
            return cls.torsion_ideal(p.field)
        return cls(p.field, HandleKind.TORSION_AVOIDING, frozenset([p]))

    def is_proper(self) -> bool:
        return self.kind is not HandleKind.EVERYTHING

    def contains_residue(self, p: PrimeIdealKx) -> bool:
        if self.kind is HandleKind.EVERYTHING:
            return True
        if p.is_zero:
            return False
        if self.kind is HandleKind.TORSION_ON:
            return p in self.points
        return p not in self.points

    def __str__(self) -> str:
        pts = "{" + ", ".join(str(p.generator) for p in sorted(self.points, key=PrimeIdealKx.sort_key)) + "}"
        if self.kind is HandleKind.EVERYTHING:
            return "everything"
        if self.kind is HandleKind.TORSION_ON:
            return "0" if not self.points else f"thick{pts}"
        return "torsion" if not self.points else f"torsion - {pts}"

    def to_json(self):
        return {"kind": self.kind.value, "points": [str(p.generator) for p in sorted(self.points, key=PrimeIdealKx.sort_key)]}


def ideal_member(e: PerfObject, j: TensorIdealHandle) -> bool:
    """e ∈ J: every indecomposable summand of e lies in J."""
    return all(
        j.kind is HandleKind.EVERYTHING if part.is_free else j.contains_residue(part.point())
        for _, part, _ in e.terms
    )


def phi(j: TensorIdealHandle) -> ThomasonSubset:
    """φ(J) = {p : k[x]/p ∈ J}, with the generic point present iff k[x] ∈ J."""
    fld = j.field
    if ideal_member(PerfObject.unit(fld), j):
        return ThomasonSubset.whole(fld)
    if j.kind is HandleKind.TORSION_ON:
        return ThomasonSubset.finite(fld, (p for p in j.points if ideal_member(PerfObject.residue(p), j)))
    return ThomasonSubset.all_closed_except(
        fld, (p for p in j.points if not ideal_member(PerfObject.residue(p), j))
    )


def psi(v: ThomasonSubset) -> TensorIdealHandle:
    """ψ(V) = thick(k[x]/p : p ∈ V)."""
    fld = v.field
    if v.kind is ThomKind.WHOLE:
        return TensorIdealHandle.everything(fld)
    if v.kind is ThomKind.FINITE:
        return TensorIdealHandle.thick_of((PerfObject.residue(p) for p in v.points), fld)
    return TensorIdealHandle(fld, HandleKind.TORSION_AVOIDING, v.points)


def handle_leq(a: TensorIdealHandle, b: TensorIdealHandle) -> bool:
    return phi(a).leq(phi(b))


def handle_meet(a: TensorIdealHandle, b: TensorIdealHandle) -> TensorIdealHandle:
    return psi(phi(a).meet(phi(b)))


def handle_join(a: TensorIdealHandle, b: TensorIdealHandle) -> TensorIdealHandle:
    return psi(phi(a).join(phi(b)))


def object_with_support(v: ThomasonSubset) -> PerfObject:
    """An object whose support is exactly v (v finitely presented)."""
    fld = v.field
    if v.kind is ThomKind.WHOLE:
        return PerfObject.unit(fld)
    if v.kind is ThomKind.COFINITE:
        raise NotFinitelyPresented(f"{v} has a non quasi-compact complement")
    return PerfObject.build(fld, [(0, torsion(p.generator, 1)) for p in sorted(v.points, key=PrimeIdealKx.sort_key)])


def is_prime_handle(j: TensorIdealHandle, probes: Iterable[PrimeIdealKx]) -> tuple[bool, Optional[tuple[PerfObject, PerfObject]]]:
    """Primality of a proper ideal, with a witness pair a, b ∉ J, a⊗b ∈ J.

    Witnesses are sought among residue objects of the probe points plus k[x]."""
    fld = j.field
    if not j.is_proper():
        return False, None
    objs = [PerfObject.unit(fld)] + [PerfObject.residue(p) for p in probes if not p.is_zero]
    outside = [e for e in objs if not ideal_member(e, j)]
    for a in outside:
        for b in outside:
            if ideal_member(tensor(a, b), j):
                return False, (a, b)
    return True, None


def maximal_above(j: TensorIdealHandle, probes: Iterable[PrimeIdealKx]) -> TensorIdealHandle:
    """The maximal proper ideal containing a proper J: always the torsion ideal."""
    if not j.is_proper():
        raise ValueError("the improper ideal has no proper ideal above it")
    tors = TensorIdealHandle.torsion_ideal(j.field)
    if not handle_leq(j, tors):
        raise ModelViolation(f"{j} is proper but not torsion")
    ok, witness = is_prime_handle(tors, probes)
    if not ok:
        raise ModelViolation(f"torsion ideal not prime: {witness}")
    return tors


def tensor_closure(gens: Iterable[PerfObject], max_factors: int = 3) -> list[PerfObject]:
    """All tensor products of at most ``max_factors`` generators."""
    gens = list(dict.fromkeys(gens))
    out = dict.fromkeys(gens)
    layer = list(gens)
    for _ in range(max_factors - 1):
        nxt = []
        for a in layer:
            for g in gens:
                t = tensor(a, g)
                if t not in out:
                    out[t] = None
                    nxt.append(t)
        layer = nxt
    return list(out)


def find_prime_avoiding(s: Iterable[PerfObject]) -> PrimeIdealKx:
    """A prime p with s ∩ P(p) = ∅.

    ``s`` must contain k[x], avoid 0, and be tensor-closed up to support:
    every a⊗b must have the support of some member (supports classify
    thick tensor-ideals, so this is closure modulo thick closure)."""
    objs = list(s)
    if not objs:
        raise ValueError("empty family")
    fld = objs[0].field
    if any(e.is_zero() for e in objs):
        raise ValueError("the family contains the zero object")
    if PerfObject.unit(fld) not in objs:
        raise ValueError("the family must contain k[x]")
    sups = {support(e) for e in objs}
    for a in objs:
        for b in objs:
            if support(tensor(a, b)) not in sups:
                raise ValueError(f"not tensor closed: {a} ⊗ {b}")
    common = SupportSet.everything(fld)
    for x in sups:
        common = common.intersection(x)
    if common.whole:
        found = PrimeIdealKx.zero(fld)
    elif common.points:
        found = common.sorted_points()[0]
    else:
        raise ModelViolation("supports of a tensor-closed family have empty intersection")
    if any(in_prime(e, found) for e in objs):
        raise ModelViolation(f"P{found} meets the family")
    return found


# -- finite windows on the spectra -----------------------------------------


def spc_space(field: FieldSpec, max_degree: int) -> FiniteSpace:
    """Points P(p) for p in the window, closed sets generated by supports."""
    window = spec_points(field, max_degree)
    labels = [str(TensorPrime(p)) for p in window]
    closed_pts = window[1:]
    closed_base = []
    for mask in range(1 << len(closed_pts)):
        chosen = [closed_pts[i] for i in range(len(closed_pts)) if mask >> i & 1]
        e = object_with_support(ThomasonSubset.finite(field, chosen))
        closed_base.append(frozenset(labels[k] for k, p in enumerate(window) if not in_prime(e, p)))
    closed_base.append(frozenset(labels))
    opens = [frozenset(labels) - c for c in closed_base]
    return FiniteSpace(labels, opens)


def spec_space(field: FieldSpec, max_degree: int) -> FiniteSpace:
    """Zariski topology on the window: closed sets V(r) for r a product of
    window generators or r = 0."""
    window = spec_points(field, max_degree)
    labels = [str(p) for p in window]
    gens = [p.generator for p in window[1:]]
    opens = [frozenset()]
    for mask in range(1 << len(gens)):
        r = Poly.const(field, 1)
        for i, g in enumerate(gens):
            if mask >> i & 1:
                r = r * g
        opens.append(frozenset(lab for lab, p in zip(labels, window) if p.is_zero or not p.generator.divides(r)))
    return FiniteSpace(labels, opens)


# -- text syntax -----------------------------------------------------------


_TERM = re.compile(r"^(?:S(?:\^(-?\d+))?\s*(?=k))?(k\[x\])(?:\s*/\s*\((.*)\))?$")


def _split_top(text: str, sep: str = "+") -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def parse_object(text: str, field: Optional[FieldSpec] = None) -> PerfObject:
    """``S^0 k[x] + S^1 k[x]/(x^2) mod 2``; k[x]/(r) for arbitrary r is
    split into its primary parts."""
    body, suffix = split_field_suffix(text)
    if suffix is not None:
        if field is not None and suffix != field:
            raise FieldMismatch(f"{text!r} names {suffix}, expected {field}")
        field = suffix
    if field is None:
        raise ObjectParseError(f"no field given for {text!r}")
    if body.strip() == "0":
        return PerfObject.zero(field)
    out = PerfObject.zero(field)
    for term in _split_top(body):
        m = _TERM.match(term)
        if not m:
            raise ObjectParseError(f"cannot parse summand {term!r}")
        shift = int(m.group(1)) if m.group(1) is not None else (1 if term.startswith("S") else 0)
        if m.group(3) is None:
            piece = PerfObject.unit(field)
        else:
            r = Poly.parse(m.group(3), field)
            if r.is_zero():
                piece = PerfObject.unit(field)
            else:
                piece = PerfObject.build(field, [(0, torsion(g, n)) for g, n in factorization(r)])
        out = out + piece.shift(shift)
    return out


def _parse_points(text: str, field: FieldSpec) -> list[PrimeIdealKx]:
    inner = text.strip()
    if not (inner.startswith("{") and inner.endswith("}")):
        raise ObjectParseError(f"expected a point set in braces, got {text!r}")
    inner = inner[1:-1].strip()
    if not inner:
        return []
    pts = []
    for chunk in inner.split(","):
        f = Poly.parse(chunk.strip(), field)
        if irreducibility(f.monic()) is not PrimeVerdict.PRIME:
            raise ObjectParseError(f"{chunk.strip()} is not a closed point")
        pts.append(PrimeIdealKx.closed(f))
    return pts


def parse_thomason(text: str, field: FieldSpec) -> ThomasonSubset:
    """``whole``, ``{x, x+1}``, ``all-closed`` or ``all-closed - {x}``."""
    t = text.strip()
    if t == "whole":
        return ThomasonSubset.whole(field)
    if t.startswith("all-closed"):
        rest = t[len("all-closed"):].strip()
        if not rest:
            return ThomasonSubset.all_closed_except(field)
        if not rest.startswith("-"):
            raise ObjectParseError(f"cannot parse {text!r}")
        return ThomasonSubset.all_closed_except(field, _parse_points(rest[1:], field))
    return ThomasonSubset.finite(field, _parse_points(t, field))


def parse_handle(text: str, field: FieldSpec) -> TensorIdealHandle:
    """``0``, ``everything``, ``thick{x}``, ``torsion`` or ``torsion - {x}``."""
    t = text.strip()
    if t == "0":
        return TensorIdealHandle.zero_ideal(field)
    if t == "everything":
        return TensorIdealHandle.everything(field)
    if t.startswith("thick"):
        pts = _parse_points(t[len("thick"):], field)
        return TensorIdealHandle(field, HandleKind.TORSION_ON, frozenset(pts))
    if t.startswith("torsion"):
        rest = t[len("torsion"):].strip()
        if not rest:
            return TensorIdealHandle.torsion_ideal(field)
        if not rest.startswith("-"):
            raise ObjectParseError(f"cannot parse {text!r}")
        return TensorIdealHandle(field, HandleKind.TORSION_AVOIDING, frozenset(_parse_points(rest[1:], field)))
    raise ObjectParseError(f"cannot parse ideal {text!r}")
