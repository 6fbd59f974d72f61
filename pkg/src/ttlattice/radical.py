"""Radical ideals of k[x], irreducibility, and sections over basic opens."""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from math import gcd as igcd
from typing import Iterable, Optional

from .poly import FieldMismatch, FieldSpec, Poly


class UndecidableFactorization(ValueError):
    """Raised over Q when a factor of degree >= 4 has no rational root."""


class NotBasicOpen(ValueError):
    pass


def squarefree_part(f: Poly) -> Poly:
    """Monic product of the distinct irreducible factors of ``f``."""
    if f.is_zero():
        raise ValueError("squarefree part of zero")
    return _rad(f.monic())


def _rad(f: Poly) -> Poly:
    if f.degree <= 0:
        return Poly.const(f.field, 1)
    d = f.derivative()
    if d.is_zero():
        # only possible in characteristic p: f = h(x^p), rad f = rad h
        return _rad(f.pth_root().monic())
    g = f.gcd(d)
    w = f.exact_div(g).monic()
    return w.lcm(_rad(g)) if g.degree > 0 else w


def is_squarefree(f: Poly) -> bool:
    return not f.is_zero() and squarefree_part(f).degree == f.degree


class Kind(enum.Enum):
    ZERO = "zero"
    PRINCIPAL = "principal"
    UNIT = "unit"


@dataclass(frozen=True)
class RadicalIdeal:
    field: FieldSpec
    kind: Kind
    generator: Optional[Poly] = None

    def __post_init__(self):
        if self.kind is Kind.PRINCIPAL:
            g = self.generator
            if g is None or g.degree < 1 or not g.is_monic():
                raise ValueError("principal radical ideals need a monic generator of degree >= 1")
            if g.field != self.field:
                raise FieldMismatch(f"{g.field} vs {self.field}")
            if not is_squarefree(g):
                raise ValueError(f"{g} is not squarefree")
        elif self.generator is not None:
            raise ValueError(f"{self.kind.value} ideal carries no generator")

    @classmethod
    def zero(cls, field: FieldSpec) -> "RadicalIdeal":
        return cls(field, Kind.ZERO)

    @classmethod
    def unit(cls, field: FieldSpec) -> "RadicalIdeal":
        return cls(field, Kind.UNIT)

    @classmethod
    def principal(cls, f: Poly) -> "RadicalIdeal":
        """(f) for squarefree f; constants give the unit ideal, 0 the zero ideal."""
        if f.is_zero():
            return cls.zero(f.field)
        if f.degree == 0:
            return cls.unit(f.field)
        return cls(f.field, Kind.PRINCIPAL, f.monic())

    @classmethod
    def radical_of(cls, f: Poly) -> "RadicalIdeal":
        if f.is_zero():
            return cls.zero(f.field)
        return cls.principal(squarefree_part(f))

    @classmethod
    def parse(cls, text: str, field: FieldSpec) -> "RadicalIdeal":
        t = text.strip()
        if t.lower() in ("unit", "(1)"):
            return cls.unit(field)
        if t.lower() in ("zero", "(0)"):
            return cls.zero(field)
        return cls.principal(Poly.parse(t, field))

    @property
    def is_zero(self) -> bool:
        return self.kind is Kind.ZERO

    @property
    def is_unit(self) -> bool:
        return self.kind is Kind.UNIT

    def closed_points(self) -> list["PrimeIdealKx"]:
        """V(I) minus the generic point; only finite for nonzero I."""
        if self.kind is Kind.ZERO:
            raise ValueError("V(0) contains every closed point")
        if self.kind is Kind.UNIT:
            return []
        return [PrimeIdealKx(self.field, g) for g, _ in factorization(self.generator)]

    def __str__(self) -> str:
        if self.kind is Kind.ZERO:
            return "0"
        if self.kind is Kind.UNIT:
            return "unit"
        return f"({self.generator})"

    def to_json(self) -> dict:
        out = {"field": str(self.field), "kind": self.kind.value}
        if self.generator is not None:
            out["generator"] = self.generator.to_json()["coefficients"]
        return out


def _same_field(i: RadicalIdeal, j: RadicalIdeal) -> None:
    if i.field != j.field:
        raise FieldMismatch(f"{i.field} vs {j.field}")


def rad_meet(i: RadicalIdeal, j: RadicalIdeal) -> RadicalIdeal:
    """Intersection: the lcm of squarefree generators."""
    _same_field(i, j)
    if i.is_zero or j.is_zero:
        return RadicalIdeal.zero(i.field)
    if i.is_unit:
        return j
    if j.is_unit:
        return i
    return RadicalIdeal.principal(i.generator.lcm(j.generator))


def rad_join(i: RadicalIdeal, j: RadicalIdeal) -> RadicalIdeal:
    """Radical of the sum: the gcd of generators."""
    _same_field(i, j)
    if i.is_unit or j.is_unit:
        return RadicalIdeal.unit(i.field)
    if i.is_zero:
        return j
    if j.is_zero:
        return i
    return RadicalIdeal.principal(i.generator.gcd(j.generator))


def rad_leq(i: RadicalIdeal, j: RadicalIdeal) -> bool:
    """Inclusion i ⊆ j."""
    _same_field(i, j)
    if i.is_zero or j.is_unit:
        return True
    if i.is_unit or j.is_zero:
        return False
    return j.generator.divides(i.generator)


class PrimeVerdict(enum.Enum):
    PRIME = "prime"
    NOT_PRIME = "not_prime"
    UNDECIDED = "undecided"


def is_prime(i: RadicalIdeal) -> PrimeVerdict:
    if i.is_zero:
        return PrimeVerdict.PRIME
    if i.is_unit:
        return PrimeVerdict.NOT_PRIME
    return irreducibility(i.generator)


def irreducibility(f: Poly) -> PrimeVerdict:
    """Irreducibility of a non-constant polynomial."""
    if f.degree < 1:
        return PrimeVerdict.NOT_PRIME
    if f.degree == 1:
        return PrimeVerdict.PRIME
    if f.field.is_rational:
        if f.degree > 3:
            return PrimeVerdict.UNDECIDED
        return PrimeVerdict.NOT_PRIME if rational_roots(f) else PrimeVerdict.PRIME
    for g in enumerate_irreducibles(f.field, f.degree // 2):
        if g.divides(f):
            return PrimeVerdict.NOT_PRIME
    return PrimeVerdict.PRIME


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def rational_roots(f: Poly) -> list[Fraction]:
    """Distinct rational roots, ascending."""
    if not f.field.is_rational:
        raise ValueError("rational root test is for Q")
    if f.is_zero():
        raise ValueError("zero polynomial")
    den = reduce(lambda a, b: a * b // igcd(a, b), (c.denominator for c in f.coeffs), 1)
    ints = [int(c * den) for c in f.coeffs]
    roots = set()
    low = next(k for k, c in enumerate(ints) if c)
    if low:
        roots.add(Fraction(0))
    ints = ints[low:]
    for a in _divisors(ints[0]):
        for b in _divisors(ints[-1]):
            for r in (Fraction(a, b), Fraction(-a, b)):
                if f(r) == 0:
                    roots.add(r)
    return sorted(roots)


def _monic_of_degree(field: FieldSpec, d: int) -> Iterable[Poly]:
    for low in itertools.product(range(field.modulus), repeat=d):
        yield Poly(field, low + (1,))


@lru_cache(maxsize=None)
def _irreducibles(p: int, max_degree: int) -> tuple[Poly, ...]:
    field = FieldSpec.mod(p)
    found: list[Poly] = []
    for d in range(1, max_degree + 1):
        sieve = [g for g in found if 2 * g.degree <= d]
        for f in _monic_of_degree(field, d):
            if not any(g.divides(f) for g in sieve):
                found.append(f)
    return tuple(sorted(found, key=Poly.sort_key))


def enumerate_irreducibles(field: FieldSpec, max_degree: int) -> list[Poly]:
    """All monic irreducibles over F_p of degree <= max_degree, sorted by
    degree then coefficients from the leading one down."""
    if field.is_rational:
        raise ValueError("enumeration needs a finite field")
    if max_degree < 1:
        return []
    return list(_irreducibles(field.modulus, max_degree))


def factorization(f: Poly) -> list[tuple[Poly, int]]:
    """Monic irreducible factors with multiplicities, sorted."""
    if f.is_zero():
        raise ValueError("factorization of zero")
    rem = f.monic()
    out: list[tuple[Poly, int]] = []
    if f.field.is_rational:
        x = Poly.x(f.field)
        for r in rational_roots(rem) if rem.degree > 0 else []:
            lin, n = x - r, 0
            while lin.divides(rem):
                rem, n = rem.exact_div(lin), n + 1
            out.append((lin, n))
        if rem.degree >= 4:
            raise UndecidableFactorization(f"cannot factor {rem} over Q")
        if rem.degree >= 1:
            out.append((rem.monic(), 1))
    else:
        for g in enumerate_irreducibles(f.field, rem.degree // 2):
            if 2 * g.degree > rem.degree:
                break
            n = 0
            while g.divides(rem):
                rem, n = rem.exact_div(g), n + 1
            if n:
                out.append((g, n))
        if rem.degree >= 1:
            # no factor of degree <= deg/2 remains, so rem is irreducible
            out.append((rem, 1))
    return sorted(out, key=lambda t: t[0].sort_key())


@dataclass(frozen=True, order=False)
class PrimeIdealKx:
    """A point of Spec k[x]: the zero ideal or (f) with f monic irreducible."""

    field: FieldSpec
    generator: Optional[Poly] = None

    def __post_init__(self):
        g = self.generator
        if g is None:
            return
        if g.field != self.field:
            raise FieldMismatch(f"{g.field} vs {self.field}")
        if not g.is_monic():
            raise ValueError(f"{g} is not monic")
        verdict = irreducibility(g)
        if verdict is not PrimeVerdict.PRIME:
            raise ValueError(f"{g} is not known to be irreducible ({verdict.value})")

    @classmethod
    def zero(cls, field: FieldSpec) -> "PrimeIdealKx":
        return cls(field, None)

    @classmethod
    def closed(cls, f: Poly) -> "PrimeIdealKx":
        return cls(f.field, f.monic())

    @property
    def is_zero(self) -> bool:
        return self.generator is None

    def sort_key(self) -> tuple:
        return (0, ()) if self.generator is None else (1, self.generator.sort_key())

    def __lt__(self, other: "PrimeIdealKx") -> bool:
        return self.sort_key() < other.sort_key()

    def as_radical(self) -> RadicalIdeal:
        if self.generator is None:
            return RadicalIdeal.zero(self.field)
        return RadicalIdeal.principal(self.generator)

    def __str__(self) -> str:
        return "(0)" if self.generator is None else f"({self.generator})"

    def __repr__(self) -> str:
        return f"PrimeIdealKx{self} {self.field.suffix()}"


def closed_points(field: FieldSpec, max_degree: int) -> list[PrimeIdealKx]:
    return [PrimeIdealKx(field, g) for g in enumerate_irreducibles(field, max_degree)]


def spec_points(field: FieldSpec, max_degree: int) -> list[PrimeIdealKx]:
    """The generic point followed by the closed points up to degree."""
    return [PrimeIdealKx.zero(field)] + closed_points(field, max_degree)


@dataclass(frozen=True)
class LocalSection:
    """numerator / denominator^power in k[x]_f."""

    numerator: Poly
    power: int


@dataclass(frozen=True)
class BasicOpenSections:
    """The ring k[x]_f of sections over D(f).

    ``denominator`` is monic squarefree, 1 for the whole line and 0 for the
    empty open (the zero ring)."""

    denominator: Poly

    @property
    def field(self) -> FieldSpec:
        return self.denominator.field

    @property
    def is_zero_ring(self) -> bool:
        return self.denominator.is_zero()

    def describe(self) -> str:
        if self.is_zero_ring:
            return "0"
        if self.denominator.degree == 0:
            return "k[x]"
        return f"k[x]_({self.denominator})"

    def contains_open(self, other: "BasicOpenSections") -> bool:
        """D(other) ⊆ D(self)."""
        if other.is_zero_ring:
            return True
        if self.is_zero_ring:
            return False
        return self.denominator.divides(other.denominator)

    def restrict(self, s: LocalSection, target: "BasicOpenSections") -> LocalSection:
        if not self.contains_open(target):
            raise ValueError(f"{target.describe()} is not an open of {self.describe()}")
        if target.is_zero_ring:
            return LocalSection(Poly(self.field), 0)
        q = target.denominator.exact_div(self.denominator)
        return LocalSection(s.numerator * q**s.power, s.power)

    def equal(self, a: LocalSection, b: LocalSection) -> bool:
        if self.is_zero_ring:
            return True
        f = self.denominator
        return a.numerator * f**b.power == b.numerator * f**a.power


def sections(open_) -> BasicOpenSections:
    """Sections over a basic open D(f), given by f, by the radical ideal
    (f), or by the finite set of closed points V(f) it removes."""
    if isinstance(open_, Poly):
        den = Poly(open_.field) if open_.is_zero() else squarefree_part(open_)
        return BasicOpenSections(den)
    if isinstance(open_, RadicalIdeal):
        if open_.is_zero:
            return BasicOpenSections(Poly(open_.field))
        if open_.is_unit:
            return BasicOpenSections(Poly.const(open_.field, 1))
        return BasicOpenSections(open_.generator)
    if isinstance(open_, (set, frozenset, list, tuple)):
        pts = list(open_)
        if any(not isinstance(p, PrimeIdealKx) for p in pts):
            raise NotBasicOpen("expected closed points of Spec k[x]")
        if any(p.is_zero for p in pts):
            raise NotBasicOpen("removing the generic point does not leave a basic open")
        if not pts:
            raise NotBasicOpen("field unknown for an empty point set; pass Poly 1")
        den = reduce(lambda a, b: a * b, (p.generator for p in set(pts)))
        return BasicOpenSections(den)
    raise NotBasicOpen(f"not a basic open descriptor: {open_!r}")
