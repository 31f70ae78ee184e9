"""Colimit and coequalizer routes to the reflection of a datum into global actions.

Two coproducts index everything here:

* copies ``∐_{m∈M} X`` with ``(m, x) -> m·|X| + x``;
* domains ``∐_{(m,n)∈M×M} dom α_n`` with ``(m, n, j) -> offset(m, n) + j``,
  blocks in lexicographic ``(m, n)`` order, ``j`` a position in ``dom α_n``.

The parallel pair into the copies sends ``(m, n, j)`` to ``(mn, ι_n(j))``
(inclusion side, ``p``) and to ``(m, α_n(j))`` (action side, ``q``).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import NotCoequalizing, NotSurjective, SizeMismatch
from .finset import Colimit, FiniteDiagram, FinMap, all_maps, coequalizer, colimit_of_diagram, compose
from .globalize import (
    DEFAULT_ENUMERATION_CAP,
    Globalization,
    _check_cap,
    build_globalization,
    globalization_from_labels,
    reflection_factorization_counts,
)
from .paction import (
    DatumLike,
    GlobalAction,
    PartialActionDatum,
    as_datum,
    datum_morphism_mask,
    enumerate_global_actions,
    equivariant_maps,
    is_datum_morphism,
)


@dataclass(frozen=True)
class CoproductIndexing:
    monoid_size: int
    carrier_size: int
    domain_sizes: tuple[int, ...]

    @classmethod
    def of(cls, d: PartialActionDatum) -> "CoproductIndexing":
        return cls(d.monoid.size, d.carrier_size, tuple(len(p.domain) for p in d.parts))

    @property
    def copies_size(self) -> int:
        return self.monoid_size * self.carrier_size

    def copy_index(self, m: int, x: int) -> int:
        return m * self.carrier_size + x

    def copy_pair(self, flat: int) -> tuple[int, int]:
        return divmod(flat, self.carrier_size)

    def block_offset(self, m: int, n: int) -> int:
        return m * sum(self.domain_sizes) + sum(self.domain_sizes[:n])

    @property
    def domains_size(self) -> int:
        return self.monoid_size * sum(self.domain_sizes)

    def domain_index(self, m: int, n: int, j: int) -> int:
        return self.block_offset(m, n) + j

    def domain_triples(self) -> list[tuple[int, int, int]]:
        """All ``(m, n, j)`` in flat order."""
        return [
            (m, n, j)
            for m in range(self.monoid_size)
            for n in range(self.monoid_size)
            for j in range(self.domain_sizes[n])
        ]


class ParallelPair(NamedTuple):
    inclusion: FinMap
    action: FinMap

    @property
    def p(self) -> FinMap:
        return self.inclusion

    @property
    def q(self) -> FinMap:
        return self.action


def copy_node(m: int) -> int:
    return m


def domain_node(monoid_size: int, m: int, n: int) -> int:
    return monoid_size + m * monoid_size + n


def associated_diagram(d: DatumLike) -> FiniteDiagram:
    """The diagram with a copy of X per ``m`` and ``dom α_n`` per ``(m, n)``.

    Node ``(m, n)`` has an arrow to node ``mn`` carrying the inclusion of
    ``dom α_n`` and an arrow to node ``m`` carrying ``α_n``.
    """
    d = as_datum(d)
    M, X = d.monoid, d.carrier_size
    k = M.size
    sizes = [X] * k + [len(d.parts[n].domain) for _m in M.elements for n in M.elements]
    arrows = []
    for m in M.elements:
        for n in M.elements:
            node = domain_node(k, m, n)
            arrows.append((node, copy_node(M.table[m][n]), d.parts[n].domain.inclusion()))
            arrows.append((node, copy_node(m), d.parts[n].map))
    return FiniteDiagram(tuple(sizes), tuple(arrows))


def build_pq(d: DatumLike) -> ParallelPair:
    d = as_datum(d)
    M, X = d.monoid, d.carrier_size
    idx = CoproductIndexing.of(d)
    incl, act = [], []
    for m, n, j in idx.domain_triples():
        part = d.parts[n]
        incl.append(idx.copy_index(M.table[m][n], part.domain.members[j]))
        act.append(idx.copy_index(m, part.map.images[j]))
    size = idx.domains_size
    return ParallelPair(
        FinMap(size, idx.copies_size, tuple(incl)),
        FinMap(size, idx.copies_size, tuple(act)),
    )


def coproduct_actions(d: DatumLike) -> tuple[GlobalAction, GlobalAction]:
    """Left translation on both coproducts: ``(on domains, on copies)``."""
    d = as_datum(d)
    M = d.monoid
    idx = CoproductIndexing.of(d)
    triples = idx.domain_triples()
    on_domains = []
    on_copies = []
    for s in M.elements:
        row = M.table[s]
        on_domains.append(
            FinMap(idx.domains_size, idx.domains_size, tuple(idx.domain_index(row[m], n, j) for m, n, j in triples))
        )
        on_copies.append(
            FinMap(
                idx.copies_size,
                idx.copies_size,
                tuple(idx.copy_index(row[m], x) for m in M.elements for x in range(d.carrier_size)),
            )
        )
    return (
        GlobalAction(M, idx.domains_size, tuple(on_domains)),
        GlobalAction(M, idx.copies_size, tuple(on_copies)),
    )


def associated_action_from_coequalizer(d: DatumLike, c: FinMap) -> Globalization:
    """Global action on the quotient with ``β_m(c(s, x)) = c(ms, x)``, and ``ι = c∘u_e``."""
    d = as_datum(d)
    pq = build_pq(d)
    if c.src_size != pq.inclusion.dst_size:
        raise SizeMismatch("c must be defined on the coproduct of copies")
    if compose(pq.inclusion, c) != compose(pq.action, c):
        raise NotCoequalizing("c does not coequalize the parallel pair")
    if not c.is_surjective():
        raise NotSurjective("a coequalizer is surjective")
    return globalization_from_labels(d, c.dst_size, c.images)


def associated_action_from_colimit(d: DatumLike, colimit: Colimit) -> Globalization:
    """Global action induced on a colimit of the associated diagram."""
    d = as_datum(d)
    M = d.monoid
    labels = [v for m in M.elements for v in colimit.injections[copy_node(m)].images]
    return globalization_from_labels(d, colimit.size, labels)


def shifted_cocone(d: DatumLike, colimit: Colimit, m: int) -> list[FinMap]:
    """The cocone reindexed by ``m``: node ``s`` gets ``η_{ms}``, node ``(s, t)`` gets ``η_{(ms, t)}``."""
    d = as_datum(d)
    M = d.monoid
    k = M.size
    legs = list(colimit.injections)
    out = [legs[copy_node(M.table[m][s])] for s in M.elements]
    out += [legs[domain_node(k, M.table[m][s], t)] for s in M.elements for t in M.elements]
    return out


def is_cocone(diagram: FiniteDiagram, legs: Iterable[FinMap]) -> bool:
    legs = list(legs)
    return all(compose(f, legs[t]) == legs[s] for s, t, f in diagram.arrows)


def route_tables(d: DatumLike) -> dict[str, tuple]:
    """``(|Y|, β, ι)`` tables from the quotient, coequalizer and colimit routes."""
    d = as_datum(d)
    quotient = build_globalization(d)
    pq = build_pq(d)
    coeq = associated_action_from_coequalizer(d, coequalizer(pq.inclusion, pq.action).c)
    colim = associated_action_from_colimit(d, colimit_of_diagram(associated_diagram(d)))
    return {"quotient": quotient.tables(), "coequalizer": coeq.tables(), "colimit": colim.tables()}


# -- transposition along the copies coproduct --------------------------------------

def coproduct_transpose(d: DatumLike, target: GlobalAction, f: FinMap) -> FinMap:
    """``(m, x) -> γ_m(f(x))``: the equivariant extension of ``f: X -> Z``."""
    d = as_datum(d)
    X, Z = d.carrier_size, target.carrier_size
    if f.src_size != X or f.dst_size != Z:
        raise SizeMismatch("f must map the datum carrier into the target carrier")
    if target.monoid != d.monoid:
        raise SizeMismatch("target acts by a different monoid")
    images = tuple(target.maps[m].images[f.images[x]] for m in d.monoid.elements for x in range(X))
    return FinMap(d.monoid.size * X, Z, images)


def coproduct_transpose_inverse(d: DatumLike, big: FinMap) -> FinMap:
    """Restriction of a map on the copies to the identity copy."""
    d = as_datum(d)
    X = d.carrier_size
    if big.src_size != d.monoid.size * X:
        raise SizeMismatch("map must be defined on the coproduct of copies")
    e = d.monoid.identity
    return FinMap(X, big.dst_size, big.images[e * X:(e + 1) * X])


def coequalizes_iff_datum(d: DatumLike, target: GlobalAction, f: FinMap) -> tuple[bool, bool]:
    """``(f is a datum morphism, its transpose coequalizes the pair)``; always equal."""
    d = as_datum(d)
    big = coproduct_transpose(d, target, f)
    pq = build_pq(d)
    return is_datum_morphism(f, d, target), compose(pq.inclusion, big) == compose(pq.action, big)


# -- reflection <-> coequalizer ----------------------------------------------------

@dataclass(frozen=True)
class TheoremReport:
    reflection_to_coequalizer: bool
    coequalizer_to_reflection: bool
    targets_checked: int
    witness: str = ""

    @property
    def passed(self) -> bool:
        return self.reflection_to_coequalizer and self.coequalizer_to_reflection

    def __bool__(self):
        return self.passed


def _is_act_coequalizer(
    pq: ParallelPair, copies: GlobalAction, c: FinMap, beta: GlobalAction, targets, cap: int
) -> tuple[bool, int, str]:
    """``c: copies -> beta`` coequalizes ``pq`` and every coequalizing datum
    morphism out of ``copies`` factors through it exactly once."""
    if not is_datum_morphism(c, copies, beta):
        return False, 0, "c is not a datum morphism"
    if compose(pq.inclusion, c) != compose(pq.action, c):
        return False, 0, "c does not coequalize"
    p = np.array(pq.inclusion.images, dtype=np.int64)
    q = np.array(pq.action.images, dtype=np.int64)
    checked = 0
    for gamma in targets:
        checked += 1
        _check_cap(gamma.carrier_size ** copies.carrier_size, cap, "maps from the copies")
        _check_cap(gamma.carrier_size ** beta.carrier_size, cap, "maps from the quotient")
        cands = all_maps(copies.carrier_size, gamma.carrier_size)
        cands = cands[datum_morphism_mask(cands, copies, gamma)]
        cands = cands[np.all(cands[:, p] == cands[:, q], axis=1)]
        lifts = equivariant_maps(beta, gamma)
        through = {}
        for row in lifts:
            key = tuple(int(v) for v in row[list(c.images)])
            through[key] = through.get(key, 0) + 1
        for row in cands:
            key = tuple(int(v) for v in row)
            if through.get(key, 0) != 1:
                return False, checked, f"{key} into carrier {gamma.carrier_size} factors {through.get(key, 0)} times"
    return True, checked, ""


def _reflects(d, action, embed, targets, cap) -> tuple[bool, str]:
    for gamma in targets:
        counts = reflection_factorization_counts(d, action, embed, gamma, cap)
        for f, n in counts.items():
            if n != 1:
                return False, f"datum morphism {f} factors {n} times"
    return True, ""


def check_reflection_coequalizer_theorem(
    d: DatumLike, max_target: int = 2, cap: int = DEFAULT_ENUMERATION_CAP, targets=None
) -> TheoremReport:
    """Both directions, tested against every global action on at most
    ``max_target`` points (or the given ``targets``).

    Forward: the quotient reflection ``r`` is checked to be a reflection and
    its transpose to be a coequalizer in global actions. Backward: the Set
    coequalizer of the pair, with its induced action, is checked to be a
    coequalizer in global actions and ``c∘u_e`` to be a reflection.
    """
    d = as_datum(d)
    if targets is None:
        targets = [g for z in range(max_target + 1) for g in enumerate_global_actions(d.monoid, z)]
    targets = list(targets)
    pq = build_pq(d)
    _, copies = coproduct_actions(d)

    G = build_globalization(d)
    ok_r, why = _reflects(d, G.action, G.embed, targets, cap)
    forward = False
    count = 0
    if ok_r:
        big = coproduct_transpose(d, G.action, G.embed)
        forward, count, why = _is_act_coequalizer(pq, copies, big, G.action, targets, cap)

    coeq = coequalizer(pq.inclusion, pq.action)
    induced = associated_action_from_coequalizer(d, coeq.c)
    backward, _, why2 = _is_act_coequalizer(pq, copies, coeq.c, induced.action, targets, cap)
    if backward:
        embed = coproduct_transpose_inverse(d, coeq.c)
        backward, why2 = _reflects(d, induced.action, embed, targets, cap)
    return TheoremReport(forward, backward, len(targets), why or why2)
