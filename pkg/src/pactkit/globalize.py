"""The quotient globalization of a partial action datum and the tests built on it.

``build_globalization`` forms ``Y = (M × X)/≈`` where ``≈`` is generated by
``(n·m', x) ~ (n, α_{m'}(x))`` for ``x ∈ dom α_{m'}``. The class of ``(m, x)``
is numbered by its least member in the order ``m·|X| + x``.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .errors import EnumerationTooLarge, NotCoequalizing, NotPartial, NotSurjective, SizeMismatch
from .finset import FinMap, all_maps, is_mono, quotient_labels
from .paction import (
    DatumLike,
    GlobalAction,
    PartialActionDatum,
    as_datum,
    check_partial,
    datum_morphism_mask,
    equivariant_maps,
)

DEFAULT_ENUMERATION_CAP = 10**6


@dataclass(frozen=True)
class Globalization:
    source: PartialActionDatum
    quotient_size: int
    class_of: tuple[int, ...]
    action: GlobalAction
    embed: FinMap
    embed_injective: bool

    def cls(self, m: int, x: int) -> int:
        return self.class_of[m * self.source.carrier_size + x]

    def classes(self) -> list[list[tuple[int, int]]]:
        """Members ``(m, x)`` of every class, classes and members in order."""
        out: list[list[tuple[int, int]]] = [[] for _ in range(self.quotient_size)]
        X = self.source.carrier_size
        for flat, k in enumerate(self.class_of):
            out[k].append(divmod(flat, X))
        return out

    def tables(self) -> tuple:
        """``(|Y|, β table, ι images)`` for exact route comparisons."""
        return (
            self.quotient_size,
            tuple(f.images for f in self.action.maps),
            self.embed.images,
        )


@dataclass(frozen=True)
class GlobalizationVerdict:
    is_globalization: bool
    failing_m: Optional[int] = None
    pullback_mismatch: Optional[tuple[tuple[int, int], ...]] = None
    iota_mono: bool = True


def generating_pairs(d: PartialActionDatum):
    """Flat-index pairs ``((n·m', x), (n, α_{m'}(x)))`` generating ``≈``."""
    M, X = d.monoid, d.carrier_size
    for n in M.elements:
        for mp in M.elements:
            nm = M.table[n][mp]
            for x, y in d.parts[mp].items():
                yield nm * X + x, n * X + y


def globalization_from_labels(d: PartialActionDatum, k: int, labels) -> Globalization:
    """Assemble ``β_n([m, x]) = [nm, x]`` and ``ι(x) = [e, x]`` from a class labelling."""
    M, X = d.monoid, d.carrier_size
    labels = tuple(int(v) for v in labels)
    if set(labels) != set(range(k)):
        raise NotSurjective(f"labels do not cover all {k} classes")
    beta = []
    for n in M.elements:
        img = [-1] * k
        row = M.table[n]
        for m in M.elements:
            for x in range(X):
                src, dst = labels[m * X + x], labels[row[m] * X + x]
                if img[src] not in (-1, dst):
                    raise NotCoequalizing(f"class {src} has two images under element {n}")
                img[src] = dst
        beta.append(FinMap(k, k, img))
    e = M.identity
    embed = FinMap(X, k, labels[e * X:(e + 1) * X])
    return Globalization(d, k, labels, GlobalAction(M, k, tuple(beta)), embed, is_mono(embed))


def build_globalization(d: DatumLike) -> Globalization:
    """Quotient globalization of any datum (the axioms are not required)."""
    d = as_datum(d)
    k, labels = quotient_labels(d.monoid.size * d.carrier_size, generating_pairs(d))
    return globalization_from_labels(d, k, labels)


def verify_globalization(d: DatumLike, g: GlobalAction, iota: FinMap) -> GlobalizationVerdict:
    """Compare, per ``m``, the pullback of ``β_m∘ι`` and ``ι`` with the graph of ``α_m``."""
    d = as_datum(d)
    if iota.src_size != d.carrier_size or iota.dst_size != g.carrier_size:
        raise SizeMismatch("iota must run from the datum carrier to the action carrier")
    if g.monoid != d.monoid:
        raise SizeMismatch("datum and action live over different monoids")
    X = d.carrier_size
    fibre: dict[int, list[int]] = {}
    for y, v in enumerate(iota.images):
        fibre.setdefault(v, []).append(y)
    mono = is_mono(iota)
    for m in d.monoid.elements:
        beta = g.maps[m].images
        pb = {(x, y) for x in range(X) for y in fibre.get(beta[iota.images[x]], ())}
        graph = set(d.parts[m].items())
        if pb != graph:
            return GlobalizationVerdict(False, m, tuple(sorted(pb ^ graph)), mono)
    if not mono:
        # unreachable when α_e = id: a collapsed pair already shows up at m = e
        return GlobalizationVerdict(False, d.monoid.identity, (), False)
    return GlobalizationVerdict(True)


def decide_globalizable(d: DatumLike) -> bool:
    """Whether a partial action has a (universal) globalization.

    Routed through the built reflection: any globalization at all forces the
    reflection's squares to be pullbacks.
    """
    d = as_datum(d)
    if not check_partial(d).is_partial:
        raise NotPartial("decide_globalizable needs a partial action")
    G = build_globalization(d)
    return verify_globalization(d, G.action, G.embed).is_globalization


def _check_cap(count: int, cap: int, what: str):
    if count > cap:
        raise EnumerationTooLarge(f"{what}: {count} candidate maps exceed the cap {cap}")


def reflection_factorization_counts(
    d: DatumLike, action: GlobalAction, embed: FinMap, target: GlobalAction, cap: int = DEFAULT_ENUMERATION_CAP
) -> dict[tuple[int, ...], int]:
    """For each datum morphism ``f: d -> target``, the number of equivariant
    ``f': action -> target`` with ``f'∘embed = f``."""
    d = as_datum(d)
    X, Y, Z = d.carrier_size, action.carrier_size, target.carrier_size
    _check_cap(Z**X, cap, "maps X -> Z")
    _check_cap(Z**Y, cap, "maps Y -> Z")
    fs = all_maps(X, Z)
    fs = fs[datum_morphism_mask(fs, d, target)]
    lifts = equivariant_maps(action, target)
    restricted = Counter(tuple(int(v) for v in row[list(embed.images)]) for row in lifts)
    return {tuple(int(v) for v in f): restricted.get(tuple(int(v) for v in f), 0) for f in fs}


def verify_reflection_against(
    d: DatumLike, G: Globalization, target: GlobalAction, cap: int = DEFAULT_ENUMERATION_CAP
) -> bool:
    """Every datum morphism ``d -> target`` factors uniquely through ``G.embed``."""
    counts = reflection_factorization_counts(d, G.action, G.embed, target, cap)
    return all(c == 1 for c in counts.values())
