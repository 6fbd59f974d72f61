"""Categorified lattices at the classified level.

A categorified lattice here is a finite space ``X`` (standing in for the
points of a spatial frame, so that frame elements are the opens of ``X``
and ``U_f = f``) together with a map ``tau`` from the opens into subsets of
a carrier set ``S``.  Subsets of ``S`` model localizing ideals: the
classified situation, where ``Loc`` is a powerset.  Tensor becomes
intersection, ``C_{tau f}`` becomes ``tau f`` and ``A_{tau g}`` becomes its
complement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Mapping, Optional, Sequence

from .frames import FiniteFrame, FiniteSpace, SpaceError, hochster_dual, omega, space_properties
from .poset import element_label


class HypothesisError(ValueError):
    """A hypothesis of the requested construction fails."""


class CategorifiedError(ValueError):
    pass


def _mask(index: Mapping, subset: Iterable) -> int:
    m = 0
    for x in subset:
        m |= 1 << index[x]
    return m


def _unmask(items: Sequence, m: int) -> frozenset:
    return frozenset(items[i] for i in range(len(items)) if m >> i & 1)


def _popcount(m: int) -> int:
    return bin(m).count("1")


class CategorifiedLattice:
    """Opens of ``space`` mapped by ``tau`` into subsets of ``carrier``.

    Checked on construction: tau is defined exactly on the opens, sends the
    empty open to the empty set and the whole space to the carrier,
    preserves binary joins and meets, and is injective."""

    __slots__ = ("space", "carrier", "_pidx", "_cidx", "_opens", "_tau", "_frame")

    def __init__(self, space: FiniteSpace, carrier: Iterable[Hashable], tau: Mapping[Iterable, Iterable]):
        self.space = space
        self.carrier = tuple(carrier)
        if len(set(self.carrier)) != len(self.carrier):
            raise CategorifiedError("carrier labels must be distinct")
        self._pidx = {p: i for i, p in enumerate(space.points)}
        self._cidx = {c: i for i, c in enumerate(self.carrier)}
        table = {}
        for k, v in tau.items():
            key = frozenset(k)
            if key not in space.opens:
                raise CategorifiedError(f"tau is defined on a non-open {set(key)!r}")
            if not set(v) <= set(self.carrier):
                raise CategorifiedError(f"tau({set(key)!r}) leaves the carrier")
            table[_mask(self._pidx, key)] = _mask(self._cidx, v)
        opens = sorted(_mask(self._pidx, u) for u in space.opens)
        if set(table) != set(opens):
            raise CategorifiedError("tau must be defined on every open")
        self._opens = opens
        self._tau = table
        self._frame = None
        self._validate()

    def _validate(self) -> None:
        t, full = self._tau, (1 << len(self.space.points)) - 1
        if t[0] != 0:
            raise CategorifiedError("tau(bottom) must be empty")
        if t[full] != (1 << len(self.carrier)) - 1:
            raise CategorifiedError("tau(top) must be the whole carrier")
        for a in self._opens:
            for b in self._opens:
                if t[a | b] != t[a] | t[b]:
                    raise CategorifiedError(f"tau does not preserve the join of {self._show(a)} and {self._show(b)}")
                if t[a & b] != t[a] & t[b]:
                    raise CategorifiedError(f"tau does not preserve the meet of {self._show(a)} and {self._show(b)}")
        if len(set(t.values())) != len(t):
            raise CategorifiedError("tau is not injective")

    def _show(self, m: int) -> set:
        return set(_unmask(self.space.points, m))

    # -- public views ------------------------------------------------------

    @property
    def points(self) -> tuple:
        return self.space.points

    @property
    def frame(self) -> FiniteFrame:
        if self._frame is None:
            self._frame = omega(self.space)
        return self._frame

    def elements(self) -> list[frozenset]:
        return [_unmask(self.space.points, m) for m in self._opens]

    def tau(self, f: Iterable) -> frozenset:
        m = _mask(self._pidx, f)
        if m not in self._tau:
            raise CategorifiedError(f"{set(f)!r} is not a frame element")
        return _unmask(self.carrier, self._tau[m])

    def point_mask(self, subset: Iterable) -> int:
        return _mask(self._pidx, subset)

    def carrier_mask(self, subset: Iterable) -> int:
        try:
            return _mask(self._cidx, subset)
        except KeyError as exc:
            raise CategorifiedError(f"{exc.args[0]!r} is not in the carrier") from None

    def to_json(self) -> dict:
        lab = element_label
        return {
            "space": self.space.to_json(),
            "carrier": [lab(c) for c in self.carrier],
            "tau": [
                [sorted(lab(p) for p in _unmask(self.space.points, m)), sorted(lab(c) for c in _unmask(self.carrier, self._tau[m]))]
                for m in self._opens
            ],
        }


def open_categorified(x: FiniteSpace) -> CategorifiedLattice:
    """Omega(X) included into the powerset of X."""
    return CategorifiedLattice(x, x.points, {u: u for u in x.opens})


def thomason_categorified(x: FiniteSpace) -> CategorifiedLattice:
    """Thomason subsets of a coherent X included into the powerset of X.

    The frame is Omega of the Hochster dual, whose points are again X."""
    try:
        dual = hochster_dual(x)
    except SpaceError as exc:
        raise HypothesisError(str(exc)) from None
    return CategorifiedLattice(dual, x.points, {v: v for v in dual.opens})


def random_tau(x: FiniteSpace, rng: random.Random, extra: int = 3) -> CategorifiedLattice:
    """tau(U) = pi^{-1}(U) for a random surjection pi from a carrier onto X.

    Every bound-preserving lattice map from Omega(X) into a powerset is of
    this shape for some map pi; surjectivity gives injectivity."""
    pts = list(x.points)
    n_carrier = len(pts) + rng.randint(0, extra)
    carrier = [f"s{i}" for i in range(n_carrier)]
    image = pts + [rng.choice(pts) for _ in range(n_carrier - len(pts))] if pts else []
    rng.shuffle(image)
    pi = dict(zip(carrier, image))
    return CategorifiedLattice(x, carrier, {u: [c for c in carrier if pi[c] in u] for u in x.opens})


# -- filters of supports ---------------------------------------------------


@dataclass(frozen=True)
class SupportFilter:
    members: frozenset

    def __contains__(self, f) -> bool:
        return frozenset(f) in self.members

    def __len__(self) -> int:
        return len(self.members)


def _sigma_tilde_masks(cl: CategorifiedLattice, w: int) -> list[int]:
    return [f for f in cl._opens if w & ~cl._tau[f] == 0]


def sigma_tilde(cl: CategorifiedLattice, w: Iterable) -> SupportFilter:
    """{f : w ⊆ tau(f)}."""
    wm = cl.carrier_mask(w)
    out = SupportFilter(frozenset(_unmask(cl.points, f) for f in _sigma_tilde_masks(cl, wm)))
    _check_filter(cl, out)
    return out


def _check_filter(cl: CategorifiedLattice, flt: SupportFilter) -> None:
    masks = {cl.point_mask(f) for f in flt.members}
    if not masks:
        raise CategorifiedError("a filter is nonempty")
    for a in masks:
        for b in masks:
            if a & b not in masks:
                raise CategorifiedError("filter not closed under meets")
        for c in cl._opens:
            if a & ~c == 0 and c not in masks:
                raise CategorifiedError("filter not upward closed")


def _sigma_mask(cl: CategorifiedLattice, w: int) -> int:
    out = (1 << len(cl.points)) - 1
    for f in _sigma_tilde_masks(cl, w):
        out &= f
    return out


def sigma(cl: CategorifiedLattice, w: Iterable) -> frozenset:
    """The meet of the filter of supports of w."""
    return _unmask(cl.points, _sigma_mask(cl, cl.carrier_mask(w)))


@dataclass
class PropertyResult:
    name: str
    statement: str
    relation: str  # "equality" or "inequality"
    checked: int = 0
    strict: int = 0
    failure: Optional[dict] = None
    strict_example: Optional[dict] = None

    @property
    def passed(self) -> bool:
        return self.failure is None

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "statement": self.statement,
            "relation": self.relation,
            "passed": self.passed,
            "checked": self.checked,
        }
        if self.relation == "inequality":
            out["strict"] = self.strict
            out["strict_example"] = self.strict_example
        if self.failure is not None:
            out["counterexample"] = self.failure
        return out


# σ items 3 and 6 are equalities whenever tau preserves all meets (then σ is
# left adjoint to tau); on a finite frame every meet is finite, so no strict
# instance can exist for them.
ALWAYS_EQUAL_IN_FINITE_MODEL = frozenset({"sigma.3", "sigma.6"})


@dataclass
class PropertyReport:
    items: list

    @property
    def passed(self) -> bool:
        return all(i.passed for i in self.items)

    def to_json(self) -> dict:
        return {"passed": self.passed, "items": [i.to_json() for i in self.items]}


def _filter_join(cl: CategorifiedLattice, a: list[int], b: list[int]) -> set[int]:
    """Join in Filt(F): the meets f ∧ g."""
    return {f & g for f in a for g in b}


def sigma_property_suite(cl: CategorifiedLattice, families: Iterable[Sequence[Iterable]]) -> PropertyReport:
    """The seven filter-of-supports items and six support items.

    Each family is a sequence of carrier subsets; items quantify over its
    members, pairs and the whole family.  Triangles M' -> M -> M'' are
    modeled by M ⊆ M' ∪ M''."""
    st = lambda w: set(_sigma_tilde_masks(cl, w))
    sg = lambda w: _sigma_mask(cl, w)
    full_c = (1 << len(cl.carrier)) - 1
    top = (1 << len(cl.points)) - 1
    show_c = lambda m: sorted(map(element_label, _unmask(cl.carrier, m)))
    show_p = lambda m: sorted(map(element_label, _unmask(cl.points, m)))
    show_f = lambda fs: sorted(show_p(f) for f in fs)

    spec = [
        ("sigma_tilde.1", "filter of Σw equals filter of w", "equality"),
        ("sigma_tilde.2", "filter of 0 is F; filter of everything is {1}", "equality"),
        ("sigma_tilde.3", "L ⊆ M gives filter(L) ⊇ filter(M)", "inequality"),
        ("sigma_tilde.4", "filter of a coproduct is the intersection of filters", "equality"),
        ("sigma_tilde.5", "triangle: filter(M) ⊇ filter(M') ∩ filter(M'')", "inequality"),
        ("sigma_tilde.6", "filter of a join is the intersection of filters", "equality"),
        ("sigma_tilde.7", "filter(L) ∨ filter(M) ⊆ filter(L ∩ M)", "inequality"),
        ("sigma.1", "σ(Σw) = σ(w)", "equality"),
        ("sigma.2", "σ(0) = 0 and σ(everything) = 1", "equality"),
        ("sigma.3", "σ(coproduct) ≥ join of σ, equal when each M ⊆ τσ(M)", "inequality"),
        ("sigma.4", "triangle: σ(M) ≤ σ(M') ∨ σ(M'')", "inequality"),
        ("sigma.5", "σ(L) ∧ σ(M) ≥ σ(L ∩ M)", "inequality"),
        ("sigma.6", "σ(L) ∨ σ(M) ≤ σ(L ∨ M)", "inequality"),
    ]
    res = {n: PropertyResult(n, s, r) for n, s, r in spec}

    def note(name, ok, strict=False, **witness):
        r = res[name]
        r.checked += 1
        if not ok and r.failure is None:
            r.failure = witness
        if ok and strict:
            r.strict += 1
            if r.strict_example is None:
                r.strict_example = witness

    note("sigma_tilde.2", st(0) == set(cl._opens) and st(full_c) == {top})
    note("sigma.2", sg(0) == 0 and sg(full_c) == top)

    for fam in families:
        ws = [cl.carrier_mask(w) for w in fam]
        for w in ws:
            # suspension acts trivially on subsets
            note("sigma_tilde.1", st(w) == st(w))
            note("sigma.1", sg(w) == sg(w))
        union = 0
        for w in ws:
            union |= w
        if ws:
            inter = set.intersection(*(st(w) for w in ws))
            note("sigma_tilde.4", st(union) == inter, family=[show_c(w) for w in ws])
            note("sigma_tilde.6", st(union) == inter, family=[show_c(w) for w in ws])
            joined = 0
            for w in ws:
                joined |= sg(w)
            exact = all(w & ~cl._tau[sg(w)] == 0 for w in ws)
            lhs = sg(union)
            ok = (joined & ~lhs == 0) and (not exact or lhs == joined)
            note("sigma.3", ok, strict=lhs != joined, family=[show_c(w) for w in ws],
                 sigma_coproduct=show_p(lhs), join=show_p(joined))
        for a in ws:
            for b in ws:
                sa, sb = st(a), st(b)
                if a & ~b == 0:
                    note("sigma_tilde.3", sa >= sb, strict=sa != sb, L=show_c(a), M=show_c(b))
                # any M inside a ∪ b sits in a triangle between a and b
                for m in (a | b, a & b, a, 0):
                    sm = st(m)
                    note("sigma_tilde.5", sm >= sa & sb, strict=sm != sa & sb,
                         M=show_c(m), M1=show_c(a), M2=show_c(b))
                    j = sg(a) | sg(b)
                    note("sigma.4", sg(m) & ~j == 0, strict=sg(m) != j,
                         M=show_c(m), M1=show_c(a), M2=show_c(b))
                fj = _filter_join(cl, list(sa), list(sb))
                si = st(a & b)
                note("sigma_tilde.7", fj <= si, strict=fj != si,
                     L=show_c(a), M=show_c(b), join=show_f(fj), filter_meet=show_f(si))
                meet, low = sg(a) & sg(b), sg(a & b)
                note("sigma.5", low & ~meet == 0, strict=low != meet,
                     L=show_c(a), M=show_c(b), meet=show_p(meet), sigma_meet=show_p(low))
                jn, up = sg(a) | sg(b), sg(a | b)
                note("sigma.6", jn & ~up == 0, strict=jn != up,
                     L=show_c(a), M=show_c(b), join=show_p(jn), sigma_join=show_p(up))
    return PropertyReport([res[n] for n, _, _ in spec])


# -- point cut-outs --------------------------------------------------------


@dataclass(frozen=True)
class PointCutout:
    """Γ_p at the classified level.

    ``open_part`` is f and ``closed_part`` is g, so that the cut U_f ∩ V_g,
    with V_g the complement of U_g, is {point}.  ``image`` is
    tau(f) minus tau(g), the carrier subset modelling C_{τf} ⊗ A_{τg}."""

    point: Hashable
    open_part: frozenset
    closed_part: frozenset
    cut: frozenset
    image: frozenset
    presentations: int

    space_points: frozenset = frozenset()

    @property
    def closed_set(self) -> frozenset:
        """V_g, the complement of U_g."""
        return self.space_points - self.closed_part

    def to_json(self) -> dict:
        lab = element_label
        return {
            "point": lab(self.point),
            "open_part": sorted(map(lab, self.open_part)),
            "closed_part": sorted(map(lab, self.closed_part)),
            "closed_set": sorted(map(lab, self.closed_set)),
            "cut": sorted(map(lab, self.cut)),
            "image": sorted(map(lab, self.image)),
            "presentations": self.presentations,
        }


def _require_td(cl: CategorifiedLattice) -> None:
    if not space_properties(cl.space).td:
        bad = [p for p in cl.points if not _locally_closed(cl, p)]
        raise HypothesisError(f"space is not T_D: {[element_label(p) for p in bad]} not locally closed")


def _locally_closed(cl: CategorifiedLattice, p) -> bool:
    bit = 1 << cl._pidx[p]
    return any(f & ~g == bit for f in cl._opens for g in cl._opens)


def _all_cutouts(cl: CategorifiedLattice) -> dict:
    """point index -> list of (f, g) presentations."""
    pres: dict[int, list] = {}
    for f in cl._opens:
        for g in cl._opens:
            cut = f & ~g
            if cut and cut & (cut - 1) == 0:
                pres.setdefault(cut.bit_length() - 1, []).append((f, g))
    return pres


def _cutout_from(cl: CategorifiedLattice, i: int, pairs: list) -> PointCutout:
    t = cl._tau
    images = {t[f] & ~t[g] for f, g in pairs}
    if len(images) != 1:
        raise CategorifiedError(f"cut-out at {cl.points[i]!r} depends on the presentation")
    # canonical choice: largest f, then largest g (smallest closed part)
    f, g = max(pairs, key=lambda fg: (_popcount(fg[0]), _popcount(fg[1]), -fg[0], -fg[1]))
    image = images.pop()
    if image == 0:
        raise CategorifiedError(f"Γ at {cl.points[i]!r} vanishes")
    pts = cl.points
    return PointCutout(
        pts[i],
        _unmask(pts, f),
        _unmask(pts, g),
        _unmask(pts, f & ~g),
        _unmask(cl.carrier, image),
        len(pairs),
        frozenset(pts),
    )


def gamma_point(cl: CategorifiedLattice, p: Hashable) -> PointCutout:
    """A presentation {p} = U_f ∩ V_g, checked independent of the choice."""
    _require_td(cl)
    i = cl._pidx[p]
    pairs = _all_cutouts(cl).get(i)
    if not pairs:
        raise HypothesisError(f"{p!r} is not locally closed")
    return _cutout_from(cl, i, pairs)


def cutouts(cl: CategorifiedLattice) -> dict:
    """Γ_p for every point, with pairwise disjointness checked."""
    _require_td(cl)
    pres = _all_cutouts(cl)
    out = {cl.points[i]: _cutout_from(cl, i, pres[i]) for i in range(len(cl.points))}
    seen = 0
    for c in out.values():
        m = cl.carrier_mask(c.image)
        if m & seen:
            raise CategorifiedError(f"cut-outs overlap at {c.point!r}")
        seen |= m
    return out


# -- Cantor-Bendixson ------------------------------------------------------


@dataclass(frozen=True)
class CBFiltration:
    stages: tuple
    rank: Optional[int]

    @property
    def exhaustive(self) -> bool:
        return self.rank is not None

    def to_json(self) -> dict:
        return {
            "stages": [sorted(map(element_label, s)) for s in self.stages],
            "rank": self.rank if self.rank is not None else "undefined",
        }


def isolated_points(x: FiniteSpace) -> frozenset:
    return frozenset(p for p in x.points if frozenset([p]) in x.opens)


def cb_filtration(x: FiniteSpace) -> CBFiltration:
    """X_{≤0} ⊆ X_{≤1} ⊆ ... by repeatedly adding isolated points of the rest."""
    stage = isolated_points(x)
    stages = [stage]
    while True:
        if not x.is_open(stage):
            raise CategorifiedError(f"stage {len(stages) - 1} is not open")
        if stage == x.full:
            return CBFiltration(tuple(stages), len(stages) - 1)
        new = isolated_points(x.subspace(x.full - stage))
        if not new:
            return CBFiltration(tuple(stages), None)
        stage = stage | new
        stages.append(stage)


# -- restriction to closed complements -------------------------------------


def interval_restrict(cl: CategorifiedLattice, u: Iterable) -> CategorifiedLattice:
    """The categorified lattice on Z = X minus u.

    The interval [u, 1] is presented as Omega(Z) through W -> W minus u; the
    localization at tau(u) replaces the carrier by its complement of tau(u)
    and tau by tau(W) minus tau(u)."""
    u = frozenset(u)
    um = cl.point_mask(u)
    if um not in cl._tau:
        raise CategorifiedError(f"{set(u)!r} is not a frame element")
    z = cl.space.full - u
    sub = cl.space.subspace(z)
    interval = [w for w in cl._opens if um & ~w == 0]
    image = {_unmask(cl.points, w & ~um) for w in interval}
    if image != set(sub.opens) or len(image) != len(interval):
        raise CategorifiedError("interval is not isomorphic to the opens of the complement")
    tu = cl._tau[um]
    carrier = [c for i, c in enumerate(cl.carrier) if not tu >> i & 1]
    tau = {_unmask(cl.points, w & ~um): _unmask(cl.carrier, cl._tau[w] & ~tu) for w in interval}
    return CategorifiedLattice(sub, carrier, tau)


# -- local-to-global -------------------------------------------------------


def upsilon(cl: CategorifiedLattice, w: Iterable, cuts: Optional[dict] = None) -> frozenset:
    """υ(W): the localizing ideal generated by Γ_p for p in W."""
    cuts = cuts if cuts is not None else cutouts(cl)
    out = frozenset()
    for p in w:
        out |= cuts[p].image
    return out


def big_supp(cl: CategorifiedLattice, w: Iterable, cuts: Optional[dict] = None) -> frozenset:
    """Supp(w) = {p : Γ_p ⊗ w ≠ 0}."""
    cuts = cuts if cuts is not None else cutouts(cl)
    if upsilon(cl, cl.points, cuts) != frozenset(cl.carrier):
        raise HypothesisError("the local-to-global principle fails, so Supp is not a retraction")
    w = frozenset(w)
    if not w <= set(cl.carrier):
        raise CategorifiedError("w must be a subset of the carrier")
    return frozenset(p for p, c in cuts.items() if c.image & w)


def supp_adjoint(cl: CategorifiedLattice, w: Iterable, cuts: Optional[dict] = None) -> frozenset:
    """⋂{W : w ⊆ υ(W)}, the left adjoint formula."""
    cuts = cuts if cuts is not None else cutouts(cl)
    w = frozenset(w)
    pts = cl.points
    out = frozenset(pts)
    for m in range(1 << len(pts)):
        wset = _unmask(pts, m)
        if w <= upsilon(cl, wset, cuts):
            out &= wset
    return out


@dataclass
class LtgReport:
    applicable: bool
    hypotheses: dict
    cb_rank: Optional[int]
    checks: dict = field(default_factory=dict)
    counterexamples: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.applicable and all(self.checks.values())

    @property
    def verdict(self) -> str:
        if not self.applicable:
            return "inapplicable"
        return "pass" if self.passed else "fail"

    def record(self, name: str, ok: bool, witness=None) -> None:
        self.checks[name] = self.checks.get(name, True) and ok
        if not ok and name not in self.counterexamples:
            self.counterexamples[name] = witness

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "hypotheses": dict(sorted(self.hypotheses.items())),
            "cb_rank": self.cb_rank if self.cb_rank is not None else "undefined",
            "checks": dict(sorted(self.checks.items())),
            "counterexamples": self.counterexamples,
        }


def weak_discretization(cl: CategorifiedLattice, cuts: dict) -> list:
    """Opens f with υ(U_f) not inside tau(f); empty when υ is a weak discretization."""
    bad = []
    for f in cl.elements():
        if not upsilon(cl, f, cuts) <= cl.tau(f):
            bad.append(f)
    return bad


def ltg_check(cl: CategorifiedLattice, seed: int = 0, meet_families: int = 100) -> LtgReport:
    """Replay the local-to-global induction along the CB filtration."""
    props = space_properties(cl.space)
    cb = cb_filtration(cl.space)
    hyp = {"sober": props.sober, "td": props.td, "cb_rank_defined": cb.rank is not None}
    rep = LtgReport(all(hyp.values()), hyp, cb.rank)
    if not rep.applicable:
        return rep
    lab = lambda s: sorted(map(element_label, s))
    cuts = cutouts(cl)
    pts = cl.points

    for p, c in cuts.items():
        rep.record("cutout_idempotent", c.image & c.image == c.image, lab([p]))
        rep.record("cutout_nonzero", bool(c.image), lab([p]))

    for alpha, stage in enumerate(cb.stages):
        rebuilt = upsilon(cl, stage, cuts)
        rep.record("stage_reconstruction", cl.tau(stage) == rebuilt,
                   {"stage": alpha, "tau": lab(cl.tau(stage)), "union_of_cuts": lab(rebuilt)})
        if alpha + 1 < len(cb.stages):
            # points entering at the next stage are isolated in the closed complement
            rest = interval_restrict(cl, stage)
            for p in cb.stages[alpha + 1] - stage:
                local = gamma_point(rest, p)
                rep.record("restricted_cutout", local.image == cuts[p].image,
                           {"stage": alpha, "point": element_label(p)})

    rep.record("exhaustive", upsilon(cl, pts, cuts) == frozenset(cl.carrier), lab(pts))
    bad = weak_discretization(cl, cuts)
    rep.record("weak_discretization", not bad, [lab(f) for f in bad])
    for f in cl.elements():
        rep.record("discretization", upsilon(cl, f, cuts) == cl.tau(f), lab(f))

    rng = random.Random(seed)
    for _ in range(meet_families):
        fam = [frozenset(p for p in pts if rng.random() < 0.6) for _ in range(rng.randint(1, 4))]
        inter = frozenset.intersection(*fam)
        lhs = upsilon(cl, inter, cuts)
        rhs = frozenset.intersection(*(upsilon(cl, w, cuts) for w in fam))
        rep.record("upsilon_meets", lhs == rhs, [lab(w) for w in fam])

    for m in range(1 << len(pts)):
        w = _unmask(pts, m)
        rep.record("supp_retraction", big_supp(cl, upsilon(cl, w, cuts), cuts) == w, lab(w))
    for c in cl.carrier:
        rep.record("detection", bool(big_supp(cl, [c], cuts)), [element_label(c)])
    rep.record("detection", not big_supp(cl, [], cuts), [])
    return rep
