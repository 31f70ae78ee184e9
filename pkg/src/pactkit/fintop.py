"""Finite topological spaces and partial actions on them.

A finite topology is determined by the minimal open neighbourhood ``U(x)`` of
each point; spaces store these as bitmasks. Opens are exactly the unions of
minimal neighbourhoods, so ``opens()`` can always be recovered.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .diagram import associated_action_from_colimit, associated_diagram
from .errors import InvalidTopology, NotContinuous, NotSurjective, SizeMismatch
from .finset import (
    CanonicalPartialMorphism,
    FinMap,
    colimit_of_diagram,
    compose,
    is_mono,
    pullback,
)
from .globalize import Globalization, verify_globalization
from .monoid import FiniteMonoid, cyclic_group
from .paction import GlobalAction, PartialActionDatum, check_partial


def _bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _mask(points: Iterable[int]) -> int:
    m = 0
    for p in points:
        m |= 1 << p
    return m


@dataclass(frozen=True)
class FinTopSpace:
    size: int
    nbhd: tuple[int, ...]

    def __post_init__(self):
        nbhd = tuple(int(u) for u in self.nbhd)
        object.__setattr__(self, "nbhd", nbhd)
        if len(nbhd) != self.size:
            raise InvalidTopology(f"{len(nbhd)} neighbourhoods for {self.size} points")
        full = (1 << self.size) - 1
        for x, u in enumerate(nbhd):
            if not (u >> x) & 1 or u & ~full:
                raise InvalidTopology(f"U({x}) must contain {x} and lie in the space")
            for y in _bits(u):
                if nbhd[y] & ~u:
                    raise InvalidTopology(f"U({y}) is not inside U({x}) although {y} is in U({x})")

    @classmethod
    def discrete(cls, n: int) -> "FinTopSpace":
        return cls(n, tuple(1 << x for x in range(n)))

    @classmethod
    def indiscrete(cls, n: int) -> "FinTopSpace":
        return cls(n, ((1 << n) - 1,) * n)

    @classmethod
    def from_opens(cls, n: int, opens: Iterable[Iterable[int]]) -> "FinTopSpace":
        """Validate an explicit open family and convert it."""
        family = {_mask(o) for o in opens}
        full = (1 << n) - 1
        if 0 not in family or full not in family:
            raise InvalidTopology("the empty set and the whole space must be open")
        for a, b in itertools.combinations(family, 2):
            if a | b not in family or a & b not in family:
                raise InvalidTopology(f"open family not closed under union/intersection at {_bits(a)}, {_bits(b)}")
        if any(o & ~full for o in family):
            raise InvalidTopology("open set outside the space")
        nbhd = []
        for x in range(n):
            u = full
            for o in family:
                if (o >> x) & 1:
                    u &= o
            nbhd.append(u)
        return cls(n, tuple(nbhd))

    def is_open(self, mask: int) -> bool:
        return all(self.nbhd[x] & ~mask == 0 for x in _bits(mask))

    def opens(self) -> list[int]:
        """All open sets as bitmasks, ascending."""
        found = {0}
        for u in self.nbhd:
            found |= {o | u for o in found}
        return sorted(found)

    def open_sets(self) -> list[tuple[int, ...]]:
        return [tuple(_bits(o)) for o in self.opens()]

    def finer_than(self, other: "FinTopSpace") -> bool:
        """Every open of ``other`` is open here."""
        return self.size == other.size and all(self.nbhd[x] & ~other.nbhd[x] == 0 for x in range(self.size))

    def subspace(self, members: Sequence[int]) -> "FinTopSpace":
        pos = {x: i for i, x in enumerate(members)}
        return FinTopSpace(
            len(members),
            tuple(_mask(pos[y] for y in _bits(self.nbhd[x]) if y in pos) for x in members),
        )


def product_space(a: FinTopSpace, b: FinTopSpace) -> FinTopSpace:
    """Product topology; the pair ``(x, y)`` is point ``x·|b| + y``."""
    nb = b.size
    nbhd = []
    for x in range(a.size):
        for y in range(b.size):
            nbhd.append(_mask(i * nb + j for i in _bits(a.nbhd[x]) for j in _bits(b.nbhd[y])))
    return FinTopSpace(a.size * b.size, tuple(nbhd))


def coproduct_space(spaces: Sequence[FinTopSpace]) -> FinTopSpace:
    nbhd = []
    offset = 0
    for s in spaces:
        nbhd.extend(u << offset for u in s.nbhd)
        offset += s.size
    return FinTopSpace(offset, tuple(nbhd))


def is_continuous(f: FinMap, src: FinTopSpace, dst: FinTopSpace) -> bool:
    """Preimages of opens are open; for finite spaces it suffices that
    ``f(U(x)) ⊆ U(f(x))`` for every point."""
    if f.src_size != src.size or f.dst_size != dst.size:
        raise SizeMismatch("map sizes do not match the spaces")
    img = f.images
    return all(
        dst.nbhd[img[x]] >> img[y] & 1
        for x in range(src.size)
        for y in _bits(src.nbhd[x])
    )


def preimages_open(f: FinMap, src: FinTopSpace, dst: FinTopSpace) -> bool:
    """Literal definition of continuity, scanning every open of ``dst``."""
    if f.src_size != src.size or f.dst_size != dst.size:
        raise SizeMismatch("map sizes do not match the spaces")
    for o in dst.opens():
        if not src.is_open(_mask(x for x in range(src.size) if (o >> f.images[x]) & 1)):
            return False
    return True


@dataclass(frozen=True)
class ContinuousMap:
    map: FinMap
    src: FinTopSpace
    dst: FinTopSpace

    def __post_init__(self):
        if not is_continuous(self.map, self.src, self.dst):
            raise NotContinuous(None, f"map {self.map}")


class TopPullback(NamedTuple):
    space: FinTopSpace
    p1: FinMap
    p2: FinMap


def pullback_top(f: ContinuousMap, g: ContinuousMap) -> TopPullback:
    """Set pullback carrying the subspace topology of the product."""
    if f.dst != g.dst:
        raise SizeMismatch("pullback legs need a common codomain space")
    pb = pullback(f.map, g.map)
    nbhd = []
    for a, b in zip(pb.p1.images, pb.p2.images):
        ua, ub = f.src.nbhd[a], g.src.nbhd[b]
        nbhd.append(
            _mask(i for i, (a2, b2) in enumerate(zip(pb.p1.images, pb.p2.images)) if (ua >> a2) & 1 and (ub >> b2) & 1)
        )
    return TopPullback(FinTopSpace(pb.size, tuple(nbhd)), pb.p1, pb.p2)


def quotient_top(space: FinTopSpace, c: FinMap) -> FinTopSpace:
    """Final topology along a surjection: ``V`` open iff ``c^{-1}(V)`` is."""
    if c.src_size != space.size:
        raise SizeMismatch("quotient map must start at the space")
    if not c.is_surjective():
        raise NotSurjective(f"{c} is not surjective")
    fibres = [0] * c.dst_size
    for x, y in enumerate(c.images):
        fibres[y] |= 1 << x
    nbhd = []
    for y in range(c.dst_size):
        v = 1 << y
        while True:
            pre = 0
            for z in _bits(v):
                pre |= fibres[z]
            up = 0
            for x in _bits(pre):
                up |= space.nbhd[x]
            grown = _mask(c.images[x] for x in _bits(up))
            if grown == v:
                break
            v = grown
        nbhd.append(v)
    return FinTopSpace(c.dst_size, tuple(nbhd))


# -- partial actions on finite spaces -----------------------------------------------

@dataclass(frozen=True)
class TopPartialActionDatum:
    """A set-level datum plus a topology on the space and on every domain.

    Domains carry their own topology, which may be finer than the subspace
    topology: the inclusion only has to be a continuous injection.
    """

    base: PartialActionDatum
    space: FinTopSpace
    domain_spaces: tuple[FinTopSpace, ...]

    def __post_init__(self):
        object.__setattr__(self, "domain_spaces", tuple(self.domain_spaces))
        if self.space.size != self.base.carrier_size:
            raise SizeMismatch("space and carrier differ in size")
        if len(self.domain_spaces) != self.base.monoid.size:
            raise SizeMismatch("one domain topology per monoid element")
        for m, (part, dspace) in enumerate(zip(self.base.parts, self.domain_spaces)):
            if dspace.size != len(part.domain):
                raise SizeMismatch(f"domain topology {m} has the wrong number of points")
            if not is_continuous(part.domain.inclusion(), dspace, self.space):
                raise NotContinuous(m, "domain inclusion")
            if not is_continuous(part.map, dspace, self.space):
                raise NotContinuous(m, "partial map")

    @property
    def monoid(self) -> FiniteMonoid:
        return self.base.monoid

    def inclusion(self, m: int) -> ContinuousMap:
        return ContinuousMap(self.base.parts[m].domain.inclusion(), self.domain_spaces[m], self.space)

    def partial_map(self, m: int) -> ContinuousMap:
        return ContinuousMap(self.base.parts[m].map, self.domain_spaces[m], self.space)


@dataclass(frozen=True)
class TopStrongReport:
    is_strong: bool
    set_strong: bool
    failing: Optional[tuple] = None
    reason: str = ""


def check_strong_top(d: TopPartialActionDatum) -> TopStrongReport:
    """Strongness in finite spaces.

    Beyond the set-level axioms, the unit part must be the whole space with
    its own topology, and for every ``(m, n)`` the comparison between
    ``α_m^{-1}(dom α_n)`` and ``dom α_m ∩ dom α_nm`` (both computed as
    pullbacks of spaces) must be a homeomorphism.
    """
    report = check_partial(d.base)
    if not report.is_strong:
        return TopStrongReport(False, False, report.violations[0] if report.violations else None, "not strong as sets")
    M = d.monoid
    e = M.identity
    if d.domain_spaces[e] != d.space:
        return TopStrongReport(False, True, (e,), "unit domain is not the space itself")
    for m in M.elements:
        for n in M.elements:
            nm = M.table[n][m]
            inv = pullback_top(d.partial_map(m), d.inclusion(n))
            inter = pullback_top(d.inclusion(m), d.inclusion(nm))
            # left legs into X are injective, so theta is fixed by the points over X
            left_inv = compose(inv.p1, d.base.parts[m].domain.inclusion())
            left_int = compose(inter.p1, d.base.parts[m].domain.inclusion())
            where = {x: i for i, x in enumerate(left_int.images)}
            if set(where) != set(left_inv.images):
                return TopStrongReport(False, True, (m, n), "apexes differ over X")
            theta = FinMap(inv.space.size, inter.space.size, tuple(where[x] for x in left_inv.images))
            right_inv = compose(inv.p2, d.base.parts[n].map)
            right_int = compose(compose(theta, inter.p2), d.base.parts[nm].map)
            if right_inv != right_int:
                return TopStrongReport(False, True, (m, n), "right legs disagree")
            if not is_continuous(theta, inv.space, inter.space):
                return TopStrongReport(False, True, (m, n), "comparison is not continuous")
            back = FinMap(theta.dst_size, theta.src_size, tuple(theta.images.index(i) for i in range(theta.dst_size)))
            if not is_continuous(back, inter.space, inv.space):
                return TopStrongReport(False, True, (m, n), "inverse comparison is not continuous")
    return TopStrongReport(True, True)


@dataclass(frozen=True)
class TopGlobalization:
    space: FinTopSpace
    action: GlobalAction
    embed: FinMap
    underlying: Globalization


def build_top_reflection(d: TopPartialActionDatum) -> TopGlobalization:
    """Colimit of the associated diagram, computed in finite spaces.

    The carrier and action agree with the set-level quotient; the topology is
    the final topology of the disjoint union of all diagram nodes.
    """
    base = d.base
    M = base.monoid
    for m in M.elements:
        if not is_continuous(base.parts[m].map, d.domain_spaces[m], d.space):
            raise NotContinuous(m)
    diagram = associated_diagram(base)
    colim = colimit_of_diagram(diagram)
    node_spaces = [d.space] * M.size + [d.domain_spaces[n] for _m in M.elements for n in M.elements]
    disjoint = coproduct_space(node_spaces)
    labels = tuple(v for inj in colim.injections for v in inj.images)
    space = quotient_top(disjoint, FinMap(disjoint.size, colim.size, labels))
    G = associated_action_from_colimit(base, colim)
    for m in M.elements:
        if not is_continuous(G.action.maps[m], space, space):
            raise NotContinuous(m, "induced action map")
    if not is_continuous(G.embed, d.space, space):
        raise NotContinuous(M.identity, "unit of the reflection")
    return TopGlobalization(space, G.action, G.embed, G)


@dataclass(frozen=True)
class TopGlobalizationVerdict:
    is_globalization: bool
    failing_m: Optional[int] = None
    set_level_ok: bool = True
    comparison_continuous: bool = True
    inverse_continuous: bool = True
    inverse_comparison: Optional[FinMap] = None


def verify_globalization_top(
    d: TopPartialActionDatum, space: FinTopSpace, action: GlobalAction, iota: FinMap
) -> TopGlobalizationVerdict:
    """Per ``m``, the square with ``β_m∘ι`` and ``ι`` must be a pullback of spaces.

    The set-level test runs first; then the canonical comparison from
    ``dom α_m`` to the pullback apex must be a homeomorphism.
    """
    verdict = verify_globalization(d.base, action, iota)
    if not verdict.is_globalization:
        return TopGlobalizationVerdict(False, verdict.failing_m, set_level_ok=False)
    iota_c = ContinuousMap(iota, d.space, space)
    for m in d.monoid.elements:
        leg = ContinuousMap(compose(iota, action.maps[m]), d.space, space)
        apex = pullback_top(leg, iota_c)
        part = d.base.parts[m]
        pairs = {(a, b): i for i, (a, b) in enumerate(zip(apex.p1.images, apex.p2.images))}
        comparison = FinMap(len(part.domain), apex.space.size, tuple(pairs[(x, y)] for x, y in part.items()))
        inverse = FinMap(
            apex.space.size,
            len(part.domain),
            tuple(comparison.images.index(i) for i in range(apex.space.size)),
        )
        fwd = is_continuous(comparison, d.domain_spaces[m], apex.space)
        back = is_continuous(inverse, apex.space, d.domain_spaces[m])
        if not (fwd and back):
            return TopGlobalizationVerdict(False, m, True, fwd, back, inverse)
    return TopGlobalizationVerdict(True)


def two_topology_datum(
    monoid: FiniteMonoid, coarse: FinTopSpace, fine: FinTopSpace
) -> TopPartialActionDatum:
    """Identity partial maps everywhere; the unit domain carries ``coarse``,
    every other domain carries ``fine``."""
    n = coarse.size
    ident = CanonicalPartialMorphism.total(FinMap.identity(n))
    base = PartialActionDatum(monoid, n, (ident,) * monoid.size)
    spaces = tuple(coarse if m == monoid.identity else fine for m in monoid.elements)
    return TopPartialActionDatum(base, coarse, spaces)


@dataclass(frozen=True)
class CounterexampleReport:
    strong: bool
    globalizable: bool
    failing_m: Optional[int]
    mediator: Optional[FinMap]
    mediator_continuous: Optional[bool]

    @property
    def confirmed(self) -> bool:
        return self.strong and not self.globalizable


def top_counterexample_report(
    coarse: Optional[FinTopSpace] = None, fine: Optional[FinTopSpace] = None
) -> CounterexampleReport:
    """Z2 acting by identities on two points; the non-identity element's
    domain carries a strictly finer topology (discrete over indiscrete by
    default)."""
    coarse = FinTopSpace.indiscrete(2) if coarse is None else coarse
    fine = FinTopSpace.discrete(coarse.size) if fine is None else fine
    d = two_topology_datum(cyclic_group(2), coarse, fine)
    strong = check_strong_top(d).is_strong
    R = build_top_reflection(d)
    verdict = verify_globalization_top(d, R.space, R.action, R.embed)
    mediator = None
    if verdict.inverse_comparison is not None:
        # apex points are pairs (x, x); read the comparison inverse as a map X -> X
        apex = pullback_top(
            ContinuousMap(compose(R.embed, R.action.maps[verdict.failing_m]), d.space, R.space),
            ContinuousMap(R.embed, d.space, R.space),
        )
        dom = d.base.parts[verdict.failing_m].domain.members
        mediator = FinMap(
            d.space.size,
            d.space.size,
            tuple(dom[verdict.inverse_comparison.images[apex.p1.images.index(x)]] for x in range(d.space.size)),
        )
    cont = None
    if mediator is not None:
        cont = is_continuous(mediator, coarse, d.domain_spaces[verdict.failing_m])
    return CounterexampleReport(strong, verdict.is_globalization, verdict.failing_m, mediator, cont)


def verify_top_counterexample(coarse: Optional[FinTopSpace] = None, fine: Optional[FinTopSpace] = None) -> bool:
    """True iff the two-topology datum is strong yet not globalizable."""
    return top_counterexample_report(coarse, fine).confirmed
