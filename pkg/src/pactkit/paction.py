"""Partial action data of finite monoids on finite sets.

A datum assigns to every monoid element ``m`` a partial map ``α_m`` on the
carrier, stored in canonical subset form. The checks here implement the
partial (PA1-PA3), strong (PA2') and global axioms, datum morphisms, and the
restriction of a global action along an injective map.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple, Optional, Sequence, Union

import numpy as np

from .errors import NotGlobal, NotMono, NotPartial, SizeMismatch
from .finset import (
    CanonicalPartialMorphism,
    FinMap,
    Subset,
    all_maps,
    canonicalize_partial,
    compose,
    is_mono,
    pullback,
)
from .monoid import FiniteMonoid


@dataclass(frozen=True)
class PartialActionDatum:
    monoid: FiniteMonoid
    carrier_size: int
    parts: tuple[CanonicalPartialMorphism, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if len(self.parts) != self.monoid.size:
            raise SizeMismatch(f"{len(self.parts)} parts for a monoid of size {self.monoid.size}")
        for m, part in enumerate(self.parts):
            if part.src_size != self.carrier_size or part.dst_size != self.carrier_size:
                raise SizeMismatch(f"part {m} is not a partial map on {self.carrier_size} points")

    @classmethod
    def from_dicts(cls, monoid: FiniteMonoid, carrier_size: int, maps: Sequence) -> "PartialActionDatum":
        """``maps[m]`` is a ``{x: α_m(x)}`` mapping (or iterable of pairs)."""
        return cls(
            monoid,
            carrier_size,
            tuple(CanonicalPartialMorphism.from_pairs(carrier_size, carrier_size, mp) for mp in maps),
        )

    def dom(self, m: int) -> Subset:
        return self.parts[m].domain

    def defined(self, m: int, x: int) -> bool:
        return x in self.parts[m].domain

    def act(self, m: int, x: int) -> int:
        return self.parts[m](x)

    def as_dicts(self) -> list[dict[int, int]]:
        return [p.as_dict() for p in self.parts]

    def is_total(self) -> bool:
        return all(p.is_total() for p in self.parts)


@dataclass(frozen=True)
class GlobalAction:
    """A monoid action by total maps; construction checks CGA1 and CGA2."""

    monoid: FiniteMonoid
    carrier_size: int
    maps: tuple[FinMap, ...]

    def __post_init__(self):
        maps = tuple(
            f if isinstance(f, FinMap) else FinMap(self.carrier_size, self.carrier_size, f)
            for f in self.maps
        )
        object.__setattr__(self, "maps", maps)
        problem = _global_violation(self.monoid, self.carrier_size, [f.images for f in maps])
        if problem:
            raise NotGlobal(problem)

    @classmethod
    def trivial(cls, monoid: FiniteMonoid, carrier_size: int) -> "GlobalAction":
        ident = FinMap.identity(carrier_size)
        return cls(monoid, carrier_size, (ident,) * monoid.size)

    def __call__(self, m: int, y: int) -> int:
        return self.maps[m].images[y]

    def as_datum(self) -> PartialActionDatum:
        return PartialActionDatum(
            self.monoid, self.carrier_size, tuple(CanonicalPartialMorphism.total(f) for f in self.maps)
        )

    def table(self) -> np.ndarray:
        return np.array([f.images for f in self.maps], dtype=np.int64).reshape(
            self.monoid.size, self.carrier_size
        )


def _global_violation(monoid, n, images) -> str:
    if len(images) != monoid.size:
        return f"{len(images)} maps for a monoid of size {monoid.size}"
    for m, im in enumerate(images):
        if len(im) != n:
            return f"map {m} has {len(im)} images, expected {n}"
    if tuple(images[monoid.identity]) != tuple(range(n)):
        return "identity element does not act as the identity map"
    for m in monoid.elements:
        for k in monoid.elements:
            nm = monoid.table[k][m]
            if any(images[k][images[m][y]] != images[nm][y] for y in range(n)):
                return f"beta_{k} . beta_{m} != beta_{nm}"
    return ""


def is_global_action(monoid: FiniteMonoid, carrier_size: int, maps) -> bool:
    return not _global_violation(monoid, carrier_size, [tuple(f.images if isinstance(f, FinMap) else f) for f in maps])


DatumLike = Union[PartialActionDatum, GlobalAction]


def as_datum(d: DatumLike) -> PartialActionDatum:
    return d.as_datum() if isinstance(d, GlobalAction) else d


class Violation(NamedTuple):
    axiom: str
    m: int
    n: Optional[int]
    x: int


@dataclass(frozen=True)
class AxiomReport:
    is_datum: bool
    is_partial: bool
    is_strong: bool
    is_global: bool
    violations: tuple[Violation, ...] = field(default=())

    def first(self, axiom: str) -> Optional[Violation]:
        for v in self.violations:
            if v.axiom == axiom:
                return v
        return None

    def lines(self) -> list[str]:
        out = [
            f"PA1 {'ok' if not self.first('PA1') else 'FAIL'}",
            f"PA2 {'ok' if not self.first('PA2') else 'FAIL'}",
            f"PA3 {'ok' if not self.first('PA3') else 'FAIL'}",
            f"PA2' {'ok' if not self.first('PA2s') else 'FAIL'}",
        ]
        for v in self.violations:
            out.append(f"witness {v.axiom} m={v.m} n={'-' if v.n is None else v.n} x={v.x}")
        return out


def _axiom_scan(d: PartialActionDatum) -> AxiomReport:
    M = d.monoid
    X = d.carrier_size
    e = M.identity
    found: dict[str, Violation] = {}

    def note(tag, m, n, x):
        found.setdefault(tag, Violation(tag, m, n, x))

    unit = d.parts[e]
    for x in range(X):
        if not unit.defined_at(x) or unit(x) != x:
            note("PA1", e, None, x)
            break

    for m in M.elements:
        am = d.parts[m]
        for n in M.elements:
            an = d.parts[n]
            anm = d.parts[M.table[n][m]]
            for x in range(X):
                in_m = am.defined_at(x)
                in_lhs = in_m and an.defined_at(am(x))
                in_rhs = in_m and anm.defined_at(x)
                if in_lhs and not anm.defined_at(x):
                    note("PA2", m, n, x)
                elif in_lhs and an(am(x)) != anm(x):
                    note("PA3", m, n, x)
                if in_lhs != in_rhs:
                    note("PA2s", m, n, x)

    order = {"PA1": 0, "PA2": 1, "PA3": 2, "PA2s": 3}
    violations = tuple(sorted(found.values(), key=lambda v: order[v.axiom]))
    partial = not ({"PA1", "PA2", "PA3"} & found.keys())
    strong = partial and "PA2s" not in found
    return AxiomReport(
        is_datum=True,
        is_partial=partial,
        is_strong=strong,
        is_global=strong and d.is_total(),
        violations=violations,
    )


def check_partial(d: DatumLike) -> AxiomReport:
    """Scan PA1-PA3 (and PA2') over all ``(m, n, x)`` in lexicographic order.

    Violations are data: the report keeps the first witness of each axiom.
    """
    return _axiom_scan(as_datum(d))


def check_strong(d: DatumLike) -> AxiomReport:
    report = _axiom_scan(as_datum(d))
    if not report.is_partial:
        raise NotPartial(f"datum is not a partial action: {report.violations[0]}")
    return report


# -- the categorical form of PA2/PA3, by exhaustive search -------------------

def _part_map(d: PartialActionDatum, m: int) -> FinMap:
    return d.parts[m].map


def inverse_image(d: PartialActionDatum, m: int, n: int):
    """The canonical pullback of ``α_m`` and ``ι_n`` with its two legs into X."""
    am, an = d.parts[m], d.parts[n]
    pb = pullback(am.map, an.domain.inclusion())
    to_x_left = compose(pb.p1, am.domain.inclusion())
    to_x_right = compose(pb.p2, an.map)
    return pb, to_x_left, to_x_right


def cpa2_mediators(d: PartialActionDatum, m: int, n: int) -> np.ndarray:
    """All maps from ``α_m^{-1}(dom α_n)`` into ``dom α_nm`` making the PA triangle commute."""
    pb, left, right = inverse_image(d, m, n)
    anm = d.parts[d.monoid.table[n][m]]
    cands = all_maps(pb.size, len(anm.domain))
    incl = np.array(anm.domain.members, dtype=np.int64)
    act = np.array(anm.map.images, dtype=np.int64)
    ok = np.all(incl[cands] == np.array(left.images, dtype=np.int64), axis=1) & np.all(
        act[cands] == np.array(right.images, dtype=np.int64), axis=1
    )
    return cands[ok]


def satisfies_cpa2_by_search(d: DatumLike) -> bool:
    d = as_datum(d)
    M = d.monoid
    unit = d.parts[M.identity]
    if not (unit.is_total() and unit.map.images == tuple(range(d.carrier_size))):
        return False
    return all(len(cpa2_mediators(d, m, n)) for m in M.elements for n in M.elements)


def scpa2_isomorphisms(d: PartialActionDatum, m: int, n: int) -> list[tuple[int, ...]]:
    """All bijections ``α_m^{-1}(dom α_n) -> dom α_m ∩ dom α_nm`` over X."""
    pb, left, right = inverse_image(d, m, n)
    am = d.parts[m]
    anm = d.parts[d.monoid.table[n][m]]
    inter = pullback(am.domain.inclusion(), anm.domain.inclusion())
    inter_left = compose(inter.p2, anm.domain.inclusion())
    inter_right = compose(inter.p2, anm.map)
    if inter.size != pb.size:
        return []
    found = []
    for perm in itertools.permutations(range(inter.size)):
        if all(
            inter_left(perm[i]) == left(i) and inter_right(perm[i]) == right(i)
            for i in range(pb.size)
        ):
            found.append(perm)
    return found


def satisfies_scpa2_by_search(d: DatumLike) -> bool:
    d = as_datum(d)
    M = d.monoid
    unit = d.parts[M.identity]
    if not (unit.is_total() and unit.map.images == tuple(range(d.carrier_size))):
        return False
    return all(scpa2_isomorphisms(d, m, n) for m in M.elements for n in M.elements)


# -- morphisms -----------------------------------------------------------------

def datum_morphism_witness(f: FinMap, src: DatumLike, dst: DatumLike) -> Optional[tuple[int, int]]:
    """First ``(m, x)`` where ``f`` fails to be a datum morphism, else ``None``."""
    src, dst = as_datum(src), as_datum(dst)
    if f.src_size != src.carrier_size or f.dst_size != dst.carrier_size:
        raise SizeMismatch("map does not run between the two carriers")
    if src.monoid != dst.monoid:
        raise SizeMismatch("data over different monoids")
    for m in src.monoid.elements:
        a, b = src.parts[m], dst.parts[m]
        for x, y in a.items():
            fx = f.images[x]
            if not b.defined_at(fx) or b(fx) != f.images[y]:
                return (m, x)
    return None


def is_datum_morphism(f: FinMap, src: DatumLike, dst: DatumLike) -> bool:
    return datum_morphism_witness(f, src, dst) is None


def datum_morphism_mask(maps: np.ndarray, src: DatumLike, dst: GlobalAction) -> np.ndarray:
    """Vectorised datum-morphism test of each row of ``maps`` into a global action."""
    src = as_datum(src)
    ok = np.ones(len(maps), dtype=bool)
    for m in src.monoid.elements:
        part = src.parts[m]
        if not len(part.domain):
            continue
        dom = np.array(part.domain.members, dtype=np.int64)
        img = np.array(part.map.images, dtype=np.int64)
        g = np.array(dst.maps[m].images, dtype=np.int64)
        ok &= np.all(g[maps[:, dom]] == maps[:, img], axis=1)
    return ok


def equivariant_maps(src: GlobalAction, dst: GlobalAction) -> np.ndarray:
    """All datum morphisms between two global actions, one per row."""
    cands = all_maps(src.carrier_size, dst.carrier_size)
    return cands[datum_morphism_mask(cands, src, dst)]


# -- restriction ---------------------------------------------------------------

def restrict(g: GlobalAction, iota: FinMap) -> PartialActionDatum:
    """Restriction of ``g`` along the mono ``iota``, one pullback per element."""
    if iota.dst_size != g.carrier_size:
        raise SizeMismatch("iota must land in the carrier of the global action")
    if not is_mono(iota):
        raise NotMono(f"{iota} is not injective")
    parts = []
    for m in g.monoid.elements:
        pb = pullback(compose(iota, g.maps[m]), iota)
        parts.append(canonicalize_partial(pb.p1, pb.p2))
    return PartialActionDatum(g.monoid, iota.src_size, tuple(parts))


# -- isomorphism of global actions ---------------------------------------------

def _signature(g: GlobalAction, y: int) -> tuple:
    orbit = frozenset(f.images[y] for f in g.maps)
    fixed = tuple(f.images[y] == y for f in g.maps)
    return (len(orbit), fixed)


def actions_isomorphic(a: GlobalAction, b: GlobalAction) -> Optional[FinMap]:
    """An equivariant bijection ``a -> b`` if one exists.

    Candidates for each point are pruned by a per-point invariant (orbit size
    and stabilised elements); each choice is propagated along the action
    before branching again.
    """
    if a.monoid != b.monoid or a.carrier_size != b.carrier_size:
        return None
    n = a.carrier_size
    sig_a = [_signature(a, y) for y in range(n)]
    sig_b = [_signature(b, z) for z in range(n)]
    if sorted(sig_a) != sorted(sig_b):
        return None

    def propagate(assign, used, y, z):
        stack = [(y, z)]
        assign, used = dict(assign), set(used)
        while stack:
            y, z = stack.pop()
            if y in assign:
                if assign[y] != z:
                    return None
                continue
            if z in used or sig_a[y] != sig_b[z]:
                return None
            assign[y] = z
            used.add(z)
            for fa, fb in zip(a.maps, b.maps):
                stack.append((fa.images[y], fb.images[z]))
        return assign, used

    def search(assign, used):
        free = [y for y in range(n) if y not in assign]
        if not free:
            return assign
        y = free[0]
        for z in range(n):
            if z in used or sig_b[z] != sig_a[y]:
                continue
            step = propagate(assign, used, y, z)
            if step is not None:
                result = search(*step)
                if result is not None:
                    return result
        return None

    found = search({}, set())
    if found is None:
        return None
    return FinMap(n, n, tuple(found[y] for y in range(n)))


# -- enumeration of global actions -----------------------------------------------

def enumerate_global_actions(monoid: FiniteMonoid, carrier_size: int) -> Iterator[GlobalAction]:
    """Every global action of ``monoid`` on ``carrier_size`` points.

    Backtracks over the non-identity elements in index order, pruning with
    CGA2 on the elements assigned so far.
    """
    n = carrier_size
    all_self = [tuple(int(v) for v in row) for row in all_maps(n, n)]
    e = monoid.identity
    order = [m for m in monoid.elements if m != e]
    images: list = [None] * monoid.size
    images[e] = tuple(range(n))
    M = monoid.table

    def consistent(upto):
        done = [e] + order[:upto]
        for m in done:
            for k in done:
                km = M[k][m]
                if images[km] is None:
                    continue
                im, ik, ikm = images[m], images[k], images[km]
                if any(ik[im[y]] != ikm[y] for y in range(n)):
                    return False
        return True

    def rec(i):
        if i == len(order):
            yield GlobalAction(monoid, n, tuple(FinMap(n, n, im) for im in images))
            return
        m = order[i]
        for cand in all_self:
            images[m] = cand
            if consistent(i + 1):
                yield from rec(i + 1)
        images[m] = None

    yield from rec(0)
