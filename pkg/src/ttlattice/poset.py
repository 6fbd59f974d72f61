"""Finite posets and lattices.

Orders are stored as bitmasks: ``_up[i]`` has bit ``j`` set iff
``elements[i] <= elements[j]``.  Every algorithm here is a direct scan, which
is all the desk-scale lattices in this package need.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Hashable, Iterable, Iterator, Optional, Sequence


class PosetError(ValueError):
    pass


class LatticeError(ValueError):
    pass


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """An immutable finite partial order on hashable labels.

    ``relations`` may be cover relations or any generating set; the reflexive
    transitive closure is taken and antisymmetry is checked.
    """

    __slots__ = ("elements", "_index", "_up", "_down")

    def __init__(self, elements: Iterable[Hashable], relations: Iterable[tuple] = ()):
        elements = tuple(elements)
        if not elements:
            raise PosetError("empty poset")
        index = {e: i for i, e in enumerate(elements)}
        if len(index) != len(elements):
            raise PosetError("element labels must be distinct")
        n = len(elements)
        up = [1 << i for i in range(n)]
        for a, b in relations:
            try:
                up[index[a]] |= 1 << index[b]
            except KeyError as exc:
                raise PosetError(f"unknown element {exc.args[0]!r}") from None
        # Warshall closure on bitmask rows
        for k in range(n):
            bit = 1 << k
            row = up[k]
            for i in range(n):
                if up[i] & bit:
                    up[i] |= row
        for i in range(n):
            for j in _bits(up[i] & ~(1 << i)):
                if up[j] >> i & 1:
                    raise PosetError(
                        f"not antisymmetric: {elements[i]!r} and {elements[j]!r}"
                    )
        down = [0] * n
        for i in range(n):
            for j in _bits(up[i]):
                down[j] |= 1 << i
        self.elements = elements
        self._index = index
        self._up = tuple(up)
        self._down = tuple(down)

    @classmethod
    def from_leq(cls, elements: Sequence[Hashable], leq) -> "FinitePoset":
        """Build from a predicate ``leq(a, b)``."""
        elements = tuple(elements)
        return cls(elements, [(a, b) for a in elements for b in elements if leq(a, b)])

    @classmethod
    def of_sets(cls, family: Iterable[frozenset]) -> "FinitePoset":
        family = sorted({frozenset(s) for s in family}, key=_set_key)
        return cls.from_leq(family, lambda a, b: a <= b)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        return x in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FinitePoset)
            and set(self.elements) == set(other.elements)
            and self.relation() == other.relation()
        )

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), self.relation()))

    def __repr__(self) -> str:
        return f"FinitePoset({list(self.elements)!r}, covers={sorted(self.covers(), key=repr)!r})"

    def index(self, x) -> int:
        return self._index[x]

    def leq(self, a, b) -> bool:
        return bool(self._up[self._index[a]] >> self._index[b] & 1)

    def lt(self, a, b) -> bool:
        return a != b and self.leq(a, b)

    def relation(self) -> frozenset:
        return frozenset(
            (self.elements[i], self.elements[j])
            for i in range(len(self.elements))
            for j in _bits(self._up[i])
        )

    def up_mask(self, i: int) -> int:
        return self._up[i]

    def down_mask(self, i: int) -> int:
        return self._down[i]

    def upset(self, x) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self._up[self._index[x]]))

    def downset(self, x) -> frozenset:
        return frozenset(self.elements[j] for j in _bits(self._down[self._index[x]]))

    def covers(self) -> list[tuple]:
        """Pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
        out = []
        n = len(self.elements)
        for i in range(n):
            above = self._up[i] & ~(1 << i)
            for j in _bits(above):
                between = above & self._down[j] & ~(1 << j)
                if not between:
                    out.append((self.elements[i], self.elements[j]))
        return out

    def minimal(self) -> list:
        return [e for i, e in enumerate(self.elements) if self._down[i] == 1 << i]

    def maximal(self) -> list:
        return [e for i, e in enumerate(self.elements) if self._up[i] == 1 << i]

    def bottom(self):
        full = (1 << len(self.elements)) - 1
        for i, e in enumerate(self.elements):
            if self._up[i] == full:
                return e
        return None

    def top(self):
        full = (1 << len(self.elements)) - 1
        for i, e in enumerate(self.elements):
            if self._down[i] == full:
                return e
        return None

    def is_downset(self, subset: Iterable) -> bool:
        subset = set(subset)
        return all(self.downset(x) <= subset for x in subset)

    def is_upset(self, subset: Iterable) -> bool:
        subset = set(subset)
        return all(self.upset(x) <= subset for x in subset)

    def subposet(self, subset: Iterable) -> "FinitePoset":
        keep = [e for e in self.elements if e in set(subset)]
        return FinitePoset.from_leq(keep, self.leq)

    def dual(self) -> "FinitePoset":
        return FinitePoset(self.elements, [(b, a) for a, b in self.relation()])

    def downsets(self) -> list[frozenset]:
        """All downward-closed subsets, enumerated along a linear extension."""
        order = self.linear_extension()
        idx = [self._index[e] for e in order]
        found: list[int] = []

        def grow(k: int, mask: int) -> None:
            if k == len(idx):
                found.append(mask)
                return
            i = idx[k]
            grow(k + 1, mask)
            strict_below = self._down[i] & ~(1 << i)
            if strict_below & mask == strict_below:
                grow(k + 1, mask | 1 << i)

        grow(0, 0)
        return [frozenset(self.elements[j] for j in _bits(m)) for m in found]

    def linear_extension(self) -> list:
        return sorted(self.elements, key=lambda e: (bin(self._down[self._index[e]]).count("1"), self._index[e]))


def _set_key(s: frozenset):
    return (len(s), sorted(map(repr, s)))


@dataclass(frozen=True)
class DistributivityVerdict:
    distributive: bool
    witness: Optional[tuple] = None
    forbidden: Optional[str] = None
    forbidden_elements: Optional[tuple] = None


class FiniteLattice:
    """A finite lattice with explicit meet and join tables (by index)."""

    __slots__ = ("poset", "_meet", "_join", "bottom", "top")

    def __init__(self, poset: FinitePoset, meet: Sequence[Sequence[int]], join: Sequence[Sequence[int]]):
        self.poset = poset
        self._meet = tuple(tuple(r) for r in meet)
        self._join = tuple(tuple(r) for r in join)
        self.bottom = poset.bottom()
        self.top = poset.top()

    @property
    def elements(self) -> tuple:
        return self.poset.elements

    def __len__(self) -> int:
        return len(self.poset)

    def __iter__(self):
        return iter(self.poset.elements)

    def __repr__(self) -> str:
        return f"FiniteLattice(n={len(self)}, bottom={self.bottom!r}, top={self.top!r})"

    def leq(self, a, b) -> bool:
        return self.poset.leq(a, b)

    def meet(self, a, b):
        p = self.poset
        return p.elements[self._meet[p.index(a)][p.index(b)]]

    def join(self, a, b):
        p = self.poset
        return p.elements[self._join[p.index(a)][p.index(b)]]

    def meet_all(self, items: Iterable):
        out = self.top
        for x in items:
            out = self.meet(out, x)
        return out

    def join_all(self, items: Iterable):
        out = self.bottom
        for x in items:
            out = self.join(out, x)
        return out

    def meet_index(self, i: int, j: int) -> int:
        return self._meet[i][j]

    def join_index(self, i: int, j: int) -> int:
        return self._join[i][j]

    @classmethod
    def of_sets(cls, family: Iterable[frozenset]) -> "FiniteLattice":
        lat = is_lattice(FinitePoset.of_sets(family))
        if lat is None:
            raise LatticeError("set family is not a lattice under inclusion")
        return lat

    def check_laws(self) -> Optional[str]:
        """Full scan of commutativity, associativity and absorption."""
        n = len(self)
        m, j = self._meet, self._join
        for a in range(n):
            if m[a][a] != a or j[a][a] != a:
                return f"idempotence fails at {self.elements[a]!r}"
            for b in range(n):
                if m[a][b] != m[b][a] or j[a][b] != j[b][a]:
                    return "commutativity fails"
                if m[a][j[a][b]] != a or j[a][m[a][b]] != a:
                    return "absorption fails"
                for c in range(n):
                    if m[m[a][b]][c] != m[a][m[b][c]] or j[j[a][b]][c] != j[a][j[b][c]]:
                        return "associativity fails"
        return None

    def to_json(self) -> dict:
        label = [element_label(e) for e in self.elements]
        n = len(self)
        return {
            "elements": label,
            "bottom": element_label(self.bottom),
            "top": element_label(self.top),
            "covers": sorted([element_label(a), element_label(b)] for a, b in self.poset.covers()),
            "meet": [[label[self._meet[i][k]] for k in range(n)] for i in range(n)],
            "join": [[label[self._join[i][k]] for k in range(n)] for i in range(n)],
        }


def element_label(e) -> str:
    """Stable string rendering used by JSON/DOT output."""
    if isinstance(e, (frozenset, set)):
        return "{" + ",".join(sorted(element_label(x) for x in e)) + "}"
    if isinstance(e, tuple):
        return "(" + ",".join(element_label(x) for x in e) + ")"
    return str(e)


def is_lattice(p: FinitePoset) -> Optional[FiniteLattice]:
    """Return the lattice structure on ``p`` or ``None`` if some pair lacks a meet or join."""
    n = len(p)
    up, down = p._up, p._down
    meet = [[0] * n for _ in range(n)]
    join = [[0] * n for _ in range(n)]
    for a in range(n):
        for b in range(a, n):
            ub = up[a] & up[b]
            least = next((c for c in _bits(ub) if up[c] & ub == ub), None)
            lb = down[a] & down[b]
            greatest = next((c for c in _bits(lb) if down[c] & lb == lb), None)
            if least is None or greatest is None:
                return None
            join[a][b] = join[b][a] = least
            meet[a][b] = meet[b][a] = greatest
    return FiniteLattice(p, meet, join)


def _triple_scan(lat: FiniteLattice) -> Optional[tuple]:
    n = len(lat)
    m, j = lat._meet, lat._join
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
                    e = lat.elements
                    return (e[a], e[b], e[c])
    return None


def find_forbidden_sublattice(lat: FiniteLattice) -> Optional[tuple[str, tuple]]:
    """Search for an embedded M3 or N5; returns (tag, (bottom, x, y, z, top))."""
    n = len(lat)
    m, j = lat._meet, lat._join
    up = lat.poset._up
    comparable = lambda a, b: bool(up[a] >> b & 1 or up[b] >> a & 1)
    e = lat.elements
    for a in range(n):
        for b in range(a + 1, n):
            if comparable(a, b):
                continue
            for c in range(b + 1, n):
                if comparable(a, c) or comparable(b, c):
                    continue
                lo, hi = m[a][b], j[a][b]
                if m[a][c] == m[b][c] == lo and j[a][c] == j[b][c] == hi:
                    return "M3", (e[lo], e[a], e[b], e[c], e[hi])
    for a in range(n):
        for c in _bits(up[a] & ~(1 << a)):
            for b in range(n):
                if comparable(a, b) or comparable(b, c):
                    continue
                if m[a][b] == m[c][b] and j[a][b] == j[c][b]:
                    return "N5", (e[m[a][b]], e[a], e[c], e[b], e[j[a][b]])
    return None


def is_distributive(lat: FiniteLattice) -> DistributivityVerdict:
    """Distributivity by triple scan, cross-checked against M3/N5 search.

    The witness is the least violating triple ``(l, m, n)`` in element order.
    """
    witness = _triple_scan(lat)
    forbidden = find_forbidden_sublattice(lat)
    if (witness is None) != (forbidden is None):
        raise LatticeError("triple scan and M3/N5 search disagree")
    if witness is None:
        return DistributivityVerdict(True)
    return DistributivityVerdict(False, witness, forbidden[0], forbidden[1])


def join_irreducibles(lat: FiniteLattice) -> list:
    """Non-bottom elements ``x`` with ``x = a v b`` only when ``x`` is ``a`` or ``b``."""
    covers = lat.poset.covers()
    # in a finite lattice: join-irreducible iff exactly one lower cover
    return [x for x in lat.elements if x != lat.bottom and sum(1 for _, b in covers if b == x) == 1]


def meet_irreducibles(lat: FiniteLattice) -> list:
    """Non-top elements ``x`` with ``a ^ b = x`` only when ``x`` is ``a`` or ``b``."""
    covers = lat.poset.covers()
    return [x for x in lat.elements if x != lat.top and sum(1 for a, _ in covers if a == x) == 1]


def downset_lattice(p: FinitePoset) -> FiniteLattice:
    """Lattice of downward-closed subsets of ``p`` ordered by inclusion."""
    return FiniteLattice.of_sets(p.downsets())


def birkhoff_map(lat: FiniteLattice) -> dict:
    """``a -> {join-irreducibles below a}``, the candidate isomorphism onto the downset lattice."""
    ji = join_irreducibles(lat)
    return {a: frozenset(x for x in ji if lat.leq(x, a)) for a in lat.elements}


def birkhoff_round_trip(lat: FiniteLattice) -> bool:
    """Check ``lat`` is isomorphic to the downsets of its join-irreducibles."""
    ji = join_irreducibles(lat)
    sub = lat.poset.subposet(ji) if ji else None
    down = downset_lattice(sub) if sub is not None else FiniteLattice.of_sets([frozenset()])
    phi = birkhoff_map(lat)
    if set(phi.values()) != set(down.elements) or len(set(phi.values())) != len(lat):
        return False
    return all(
        lat.leq(a, b) == (phi[a] <= phi[b]) for a in lat.elements for b in lat.elements
    )


# -- ideals ---------------------------------------------------------------


@dataclass(frozen=True)
class LatticeIdeal:
    lattice: FiniteLattice
    members: frozenset

    def __post_init__(self):
        lat = self.lattice
        if not self.members:
            raise LatticeError("ideals are nonempty")
        for x in self.members:
            if not lat.poset.downset(x) <= self.members:
                raise LatticeError("ideal is not downward closed")
            for y in self.members:
                if lat.join(x, y) not in self.members:
                    raise LatticeError("ideal is not closed under joins")

    @property
    def generator(self):
        return self.lattice.join_all(self.members)

    def __hash__(self):
        return hash(self.members)

    def __eq__(self, other):
        return isinstance(other, LatticeIdeal) and self.members == other.members


def principal_ideal(lat: FiniteLattice, a) -> LatticeIdeal:
    return LatticeIdeal(lat, lat.poset.downset(a))


def is_prime_ideal(ideal: LatticeIdeal) -> bool:
    lat = ideal.lattice
    if len(ideal.members) == len(lat):
        return False
    return all(
        m in ideal.members or n in ideal.members
        for m in lat.elements
        for n in lat.elements
        if lat.meet(m, n) in ideal.members
    )


@dataclass(frozen=True)
class IdealLattice:
    lattice: FiniteLattice
    generator_of: dict
    primes: tuple


def ideal_lattice(lat: FiniteLattice) -> IdealLattice:
    """Lattice of ideals of a bounded distributive lattice.

    Every ideal of a finite lattice is principal, so ideals are built as
    ``down(a)`` and the prime ones are checked against meet-irreducible
    generators.
    """
    verdict = is_distributive(lat)
    if not verdict.distributive:
        raise LatticeError(f"not distributive; witness {verdict.witness!r}")
    ideals = [principal_ideal(lat, a) for a in lat.elements]
    il = FiniteLattice.of_sets(i.members for i in ideals)
    generator_of = {i.members: i.generator for i in ideals}
    primes = tuple(i.members for i in ideals if is_prime_ideal(i))
    mi = set(meet_irreducibles(lat))
    if {generator_of[p] for p in primes} != mi:
        raise LatticeError("prime ideals do not match meet-irreducible generators")
    return IdealLattice(il, generator_of, primes)


# -- isomorphism ----------------------------------------------------------


def _refined_classes(p: FinitePoset) -> list[int]:
    """Colour refinement: start from (down-size, up-size), then split by the
    multisets of colours strictly below and above until stable."""
    n = len(p)

    def ranked(sig: list) -> list[int]:
        ranks = {s: r for r, s in enumerate(sorted(set(sig)))}
        return [ranks[s] for s in sig]

    colour = ranked([(bin(p._down[i]).count("1"), bin(p._up[i]).count("1")) for i in range(n)])
    while True:
        new = ranked([
            (
                colour[i],
                tuple(sorted(colour[k] for k in _bits(p._down[i] & ~(1 << i)))),
                tuple(sorted(colour[k] for k in _bits(p._up[i] & ~(1 << i)))),
            )
            for i in range(n)
        ])
        if len(set(new)) == len(set(colour)):
            return colour
        colour = new


def canonical_form(p: FinitePoset) -> tuple:
    """Isomorphism-invariant encoding of the order: minimal relation matrix
    over orderings compatible with the refined colour classes.

    Cost is the product of class-size factorials; meant for posets of at
    most a dozen elements.  Use ``find_isomorphism`` for larger lattices.
    """
    n = len(p)
    colour = _refined_classes(p)
    classes: dict[int, list[int]] = {}
    for i, c in enumerate(colour):
        classes.setdefault(c, []).append(i)
    keys = sorted(classes)
    best = None
    for choice in product(*(permutations(classes[k]) for k in keys)):
        order = [i for block in choice for i in block]
        pos = {v: k for k, v in enumerate(order)}
        code = tuple(
            sorted((pos[i], pos[j]) for i in range(n) for j in _bits(p._up[i]) if i != j)
        )
        if best is None or code < best:
            best = code
    return (n, tuple(colour.count(c) for c in sorted(set(colour))), best)


def find_isomorphism(p: FinitePoset, q: FinitePoset) -> Optional[dict]:
    """Order isomorphism ``p -> q`` by backtracking within refined colour classes."""
    n = len(p)
    if n != len(q):
        return None
    cp = _refined_classes(p)
    sp = sorted((bin(p._down[i]).count("1"), bin(p._up[i]).count("1")) for i in range(n))
    sq = sorted((bin(q._down[i]).count("1"), bin(q._up[i]).count("1")) for i in range(n))
    if sp != sq:
        return None
    inv_p = [(bin(p._down[i]).count("1"), bin(p._up[i]).count("1")) for i in range(n)]
    inv_q = [(bin(q._down[i]).count("1"), bin(q._up[i]).count("1")) for i in range(n)]
    order = sorted(range(n), key=lambda i: sum(1 for k in range(n) if cp[k] == cp[i]))
    assign: dict[int, int] = {}
    used = [False] * n

    def ok(i: int, t: int) -> bool:
        for a, b in assign.items():
            if bool(p._up[i] >> a & 1) != bool(q._up[t] >> b & 1):
                return False
            if bool(p._up[a] >> i & 1) != bool(q._up[b] >> t & 1):
                return False
        return True

    def search(k: int) -> bool:
        if k == n:
            return True
        i = order[k]
        for t in range(n):
            if not used[t] and inv_q[t] == inv_p[i] and ok(i, t):
                assign[i] = t
                used[t] = True
                if search(k + 1):
                    return True
                del assign[i]
                used[t] = False
        return False

    if not search(0):
        return None
    return {p.elements[i]: q.elements[t] for i, t in assign.items()}


def lattices_isomorphic(a: FiniteLattice, b: FiniteLattice) -> bool:
    return find_isomorphism(a.poset, b.poset) is not None


# -- named examples -------------------------------------------------------


def chain(n: int) -> FiniteLattice:
    els = list(range(n))
    return is_lattice(FinitePoset(els, [(i, i + 1) for i in range(n - 1)]))


def m3() -> FiniteLattice:
    return is_lattice(
        FinitePoset(["0", "a", "b", "c", "1"], [("0", x) for x in "abc"] + [(x, "1") for x in "abc"])
    )


def n5() -> FiniteLattice:
    return is_lattice(
        FinitePoset(["0", "a", "b", "c", "1"], [("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")])
    )


def powerset_lattice(items: Iterable) -> FiniteLattice:
    items = list(items)
    subsets = [frozenset(x for k, x in enumerate(items) if mask >> k & 1) for mask in range(1 << len(items))]
    return FiniteLattice.of_sets(subsets)
