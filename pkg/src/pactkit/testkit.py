"""Deterministic generators and brute-force oracles for the property suites.

Randomness comes from SplitMix64 (increment ``0x9E3779B97F4A7C15``, output
multipliers ``0xBF58476D1CE4E5B9`` and ``0x94D049BB133111EB``, shifts 30/27/31).
Sample ``i`` of a run with seed ``s`` starts from state ``mix(s + (i+1)·γ)``, so
every sample is a pure function of ``(seed, i)``. ``below(n)`` is ``next() % n``.
"""
from __future__ import annotations

import functools
import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

import numpy as np

from .errors import EnumerationTooLarge, GiveUp
from .finset import (
    CanonicalPartialMorphism,
    FinMap,
    Subset,
    all_maps,
    compose,
    pullback,
    quotient_labels,
)
from .fintop import ContinuousMap, FinTopSpace, is_continuous, pullback_top
from .monoid import (
    FiniteMonoid,
    fixture_monoids,
    monoid_from_transformations,
    transformation_closure,
)
from .paction import (
    GlobalAction,
    PartialActionDatum,
    check_partial,
    restrict,
)

MASK64 = (1 << 64) - 1
GAMMA = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    @classmethod
    def for_sample(cls, seed: int, index: int) -> "SplitMix64":
        return cls(mix64(seed + (index + 1) * GAMMA))

    def next(self) -> int:
        self.state = (self.state + GAMMA) & MASK64
        return mix64(self.state)

    def below(self, n: int) -> int:
        return self.next() % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in ``lo..hi`` inclusive."""
        return lo + self.below(hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        return self.below(den) < num

    def choice(self, seq: Sequence):
        return seq[self.below(len(seq))]

    def shuffled(self, seq: Sequence) -> list:
        out = list(seq)
        for i in range(len(out) - 1, 0, -1):
            j = self.below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_monoid: int = 6
    max_carrier: int = 6
    samples: int = 100
    monoids: Optional[tuple[FiniteMonoid, ...]] = None
    attempts: int = 2000

    def __post_init__(self):
        if self.max_monoid < 1 or self.max_carrier < 0 or self.samples < 0:
            raise ValueError("GenConfig bounds must be positive")


# -- monoids ---------------------------------------------------------------------

def _random_transformation_monoid(rng: SplitMix64, max_size: int) -> tuple[FiniteMonoid, list]:
    for _ in range(50):
        n = rng.between(1, 3)
        gens = [tuple(rng.below(n) for _ in range(n)) for _ in range(rng.between(1, 2))]
        elems = transformation_closure(n, gens, cap=10**4)
        if len(elems) <= max_size:
            return monoid_from_transformations(n, gens), elems
    return fixture_monoids()[0], [(0,)]


def _pick_monoid(cfg: GenConfig, rng: SplitMix64) -> FiniteMonoid:
    if cfg.monoids:
        return rng.choice(cfg.monoids)
    pool = [m for m in fixture_monoids() if m.size <= cfg.max_monoid]
    if rng.chance(1, 3):
        return _random_transformation_monoid(rng, cfg.max_monoid)[0]
    return rng.choice(pool)


# -- global actions -----------------------------------------------------------------

def _translation_action(monoid: FiniteMonoid, seeds: int):
    """Left translation on ``M × seeds``; point ``(m, s)`` is ``m·seeds + s``."""
    size = monoid.size * seeds
    return [
        tuple(monoid.table[k][m] * seeds + s for m in monoid.elements for s in range(seeds))
        for k in monoid.elements
    ], size


def _random_action(monoid: FiniteMonoid, rng: SplitMix64, max_carrier: int) -> GlobalAction:
    """A sub-action of a free action, collapsed by random invariant
    equivalences until it fits, then relabelled at random."""
    if max_carrier == 0 or rng.chance(1, 40):
        return GlobalAction.trivial(monoid, 0)
    maps, size = _translation_action(monoid, rng.between(1, 3))
    # sub-action generated by a few random points
    start = {rng.below(size) for _ in range(rng.between(1, 3))}
    orbit = set(start)
    frontier = list(start)
    while frontier:
        y = frontier.pop()
        for f in maps:
            if f[y] not in orbit:
                orbit.add(f[y])
                frontier.append(f[y])
    points = sorted(orbit)
    pos = {y: i for i, y in enumerate(points)}
    maps = [tuple(pos[f[y]] for y in points) for f in maps]
    target = rng.between(1, max_carrier)
    if rng.chance(1, 5) and len(maps[0]) > 1:
        maps = _collapse(maps, rng.below(len(maps[0])), rng.below(len(maps[0])))
    while len(maps[0]) > target:
        n = len(maps[0])
        maps = _collapse(maps, rng.below(n), rng.below(n))
    n = len(maps[0])
    if n < target and rng.chance(1, 3):
        extra = rng.between(1, target - n)
        maps = [f + tuple(range(n, n + extra)) for f in maps]
    n = len(maps[0])
    perm = rng.shuffled(range(n))
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    relabelled = tuple(FinMap(n, n, tuple(perm[f[inv[y]]] for y in range(n))) for f in maps)
    return GlobalAction(monoid, n, relabelled)


def _collapse(maps, a, b):
    """Quotient of an action by the smallest invariant equivalence joining ``a`` and ``b``."""
    n = len(maps[0])
    pairs = [(a, b)]
    while True:
        k, labels = quotient_labels(n, pairs)
        extra = []
        for f in maps:
            rep: dict[int, int] = {}
            for y in range(n):
                c = labels[y]
                if c in rep and labels[f[rep[c]]] != labels[f[y]]:
                    extra.append((f[rep[c]], f[y]))
                rep.setdefault(c, y)
        if not extra:
            break
        pairs += extra
    out = []
    for f in maps:
        img = [0] * k
        for y in range(n):
            img[labels[y]] = labels[f[y]]
        out.append(tuple(img))
    return out


def gen_global_action(cfg: GenConfig, index: int = 0) -> GlobalAction:
    rng = SplitMix64.for_sample(cfg.seed, index)
    monoid = _pick_monoid(cfg, rng)
    return _random_action(monoid, rng, cfg.max_carrier)


def random_mono(rng: SplitMix64, target: int, size: Optional[int] = None) -> FinMap:
    size = rng.between(0, target) if size is None else size
    return FinMap(size, target, tuple(rng.shuffled(range(target))[:size]))


def gen_action_and_mono(cfg: GenConfig, index: int = 0) -> tuple[GlobalAction, FinMap]:
    rng = SplitMix64.for_sample(cfg.seed, index)
    g = _random_action(_pick_monoid(cfg, rng), rng, cfg.max_carrier)
    return g, random_mono(rng, g.carrier_size)


def gen_strong_partial(cfg: GenConfig, index: int = 0) -> PartialActionDatum:
    """Restriction of a random global action along a random injection."""
    g, iota = gen_action_and_mono(cfg, index)
    return restrict(g, iota)


def random_datum(monoid: FiniteMonoid, carrier_size: int, rng: SplitMix64, unit_identity: bool = True) -> PartialActionDatum:
    maps = []
    for m in monoid.elements:
        if unit_identity and m == monoid.identity:
            maps.append({x: x for x in range(carrier_size)})
            continue
        keep = rng.below(3)  # bias towards small domains, which pass PA2 more often
        maps.append({x: rng.below(carrier_size) for x in range(carrier_size) if rng.below(3) < keep})
    return PartialActionDatum.from_dicts(monoid, carrier_size, maps)


def gen_partial_maybe_nonstrong(cfg: GenConfig, index: int = 0, tally: Optional[Counter] = None) -> PartialActionDatum:
    """Rejection-sample random data until one is a partial action.

    ``tally`` (if given) counts ``attempts``, ``strong`` and ``non_strong``.
    """
    rng = SplitMix64.for_sample(cfg.seed, index)
    monoid = _pick_monoid(cfg, rng)
    carrier = rng.between(0, min(cfg.max_carrier, 4))
    for attempt in range(cfg.attempts):
        d = random_datum(monoid, carrier, rng)
        report = check_partial(d)
        if report.is_partial:
            if tally is not None:
                tally["attempts"] += attempt + 1
                tally["strong" if report.is_strong else "non_strong"] += 1
            return d
    raise GiveUp(f"no partial action after {cfg.attempts} attempts")


def gen_datum(cfg: GenConfig, index: int = 0) -> PartialActionDatum:
    """Arbitrary datum (axioms not enforced except α_e = id half of the time)."""
    rng = SplitMix64.for_sample(cfg.seed, index)
    monoid = _pick_monoid(cfg, rng)
    return random_datum(monoid, rng.between(0, min(cfg.max_carrier, 4)), rng, unit_identity=rng.chance(1, 2))


# -- exhaustive enumeration ----------------------------------------------------------

def enumerate_all_data(monoid: FiniteMonoid, carrier_size: int, cap: int = 10**6) -> Iterator[PartialActionDatum]:
    """Every partial action datum; ``(|X|+1)^(|X|·|M|)`` of them."""
    X = carrier_size
    per_part = (X + 1) ** X
    total = per_part ** monoid.size
    if total > cap:
        raise EnumerationTooLarge(f"{total} data exceed the cap {cap}")
    # value X stands for "undefined"
    options = list(itertools.product(range(X + 1), repeat=X))
    parts = [
        CanonicalPartialMorphism.from_pairs(X, X, {x: y for x, y in enumerate(opt) if y < X})
        for opt in options
    ]
    for combo in itertools.product(parts, repeat=monoid.size):
        yield PartialActionDatum(monoid, X, combo)


def enumerate_all_partial_actions(monoid: FiniteMonoid, carrier_size: int, cap: int = 10**6) -> Iterator[PartialActionDatum]:
    for d in enumerate_all_data(monoid, carrier_size, cap):
        if check_partial(d).is_partial:
            yield d


# -- universal property oracles -------------------------------------------------------

def _encode(rows: np.ndarray, base: int) -> np.ndarray:
    if rows.shape[1] == 0:
        return np.zeros(len(rows), dtype=np.int64)
    weights = base ** np.arange(rows.shape[1], dtype=np.int64)
    return rows @ weights


def pullback_universal(f: FinMap, g: FinMap, max_apex: int = 3) -> bool:
    """Every commuting cone with apex of at most ``max_apex`` points has exactly
    one mediating map into the computed pullback."""
    pb = pullback(f, g)
    p1 = np.array(pb.p1.images, dtype=np.int64)
    p2 = np.array(pb.p2.images, dtype=np.int64)
    fa = np.array(f.images, dtype=np.int64)
    gb = np.array(g.images, dtype=np.int64)
    A, B = f.src_size, g.src_size
    for c in range(max_apex + 1):
        us = all_maps(c, pb.size)
        key = _encode(p1[us], A + 1) * (B + 1) ** c + _encode(p2[us], B + 1)
        counts = Counter(key.tolist())
        hs, ks = all_maps(c, A), all_maps(c, B)
        if len(hs) == 0 or len(ks) == 0:
            continue
        fh = fa[hs]
        gk = gb[ks]
        hkey = _encode(hs, A + 1)
        kkey = _encode(ks, B + 1)
        for i in range(len(hs)):
            ok = np.all(gk == fh[i], axis=1)
            for j in np.flatnonzero(ok):
                if counts.get(int(hkey[i] * (B + 1) ** c + kkey[j]), 0) != 1:
                    return False
        # mediators must not exist for non-commuting cones
        for i in range(len(hs)):
            bad = np.flatnonzero(~np.all(gk == fh[i], axis=1))
            for j in bad:
                if counts.get(int(hkey[i] * (B + 1) ** c + kkey[j]), 0):
                    return False
    return True


def _continuous_rows(maps: np.ndarray, src: FinTopSpace, dst: FinTopSpace) -> np.ndarray:
    """Rows of ``maps`` (each a map src -> dst) whose preimages of opens are open;
    the literal definition, independent of the neighbourhood criterion."""
    ok = np.ones(len(maps), dtype=bool)
    if src.size == 0:
        return ok
    weights = 1 << np.arange(src.size, dtype=np.int64)
    src_opens = np.array(src.opens(), dtype=np.int64)
    for v in dst.opens():
        pre = ((v >> maps) & 1) @ weights
        ok &= np.isin(pre, src_opens)
    return ok


@functools.lru_cache(maxsize=4096)
def continuous_maps(src: FinTopSpace, dst: FinTopSpace) -> np.ndarray:
    """All continuous maps ``src -> dst`` as rows, lexicographic; cached."""
    maps = all_maps(src.size, dst.size)
    out = maps[_continuous_rows(maps, src, dst)]
    out.flags.writeable = False
    return out


def pullback_universal_top(
    f: ContinuousMap, g: ContinuousMap, apex_spaces: Sequence[FinTopSpace]
) -> bool:
    """Like :func:`pullback_universal` but cones and mediators must be continuous."""
    pb = pullback_top(f, g)
    fa = np.array(f.map.images, dtype=np.int64)
    gb = np.array(g.map.images, dtype=np.int64)
    p1 = np.array(pb.p1.images, dtype=np.int64)
    p2 = np.array(pb.p2.images, dtype=np.int64)
    A, B = f.src.size, g.src.size
    for C in apex_spaces:
        c = C.size
        us = continuous_maps(C, pb.space)
        key = _encode(p1[us], A + 1) * (B + 1) ** c + _encode(p2[us], B + 1)
        reach = Counter(key.tolist())
        hs = continuous_maps(C, f.src)
        ks = continuous_maps(C, g.src)
        if len(hs) == 0 or len(ks) == 0:
            continue
        commutes = np.all(fa[hs][:, None, :] == gb[ks][None, :, :], axis=2)
        keys = _encode(hs, A + 1)[:, None] * (B + 1) ** c + _encode(ks, B + 1)[None, :]
        found = np.array([reach.get(k, 0) for k in keys.ravel().tolist()]).reshape(keys.shape)
        if not np.array_equal(found, commutes.astype(int)):
            return False
    return True


def colimit_universal(diagram, colimit, max_target: int = 2) -> bool:
    """Every cocone into a set of at most ``max_target`` points factors
    uniquely through the computed colimit."""
    from .diagram import is_cocone

    for z in range(max_target + 1):
        through = Counter()
        for u in all_maps(colimit.size, z):
            umap = FinMap(colimit.size, z, tuple(int(v) for v in u))
            through[tuple(compose(inj, umap).images for inj in colimit.injections)] += 1
        offsets = diagram.offsets()
        for legs in all_maps(offsets[-1], z):
            maps = [
                FinMap(size, z, tuple(int(v) for v in legs[offsets[i]:offsets[i] + size]))
                for i, size in enumerate(diagram.node_sizes)
            ]
            expected = 1 if is_cocone(diagram, maps) else 0
            if through.get(tuple(m.images for m in maps), 0) != expected:
                return False
    return True


def all_topologies(n: int) -> list[FinTopSpace]:
    """Every topology on ``n`` points, via transitive reflexive relations."""
    found = set()
    pairs = [(x, y) for x in range(n) for y in range(n) if x != y]
    for bits in itertools.product((0, 1), repeat=len(pairs)):
        rel = [[x == y for y in range(n)] for x in range(n)]
        for (x, y), b in zip(pairs, bits):
            rel[x][y] = bool(b)
        if any(rel[x][y] and rel[y][z] and not rel[x][z] for x in range(n) for y in range(n) for z in range(n)):
            continue
        nbhd = tuple(sum(1 << y for y in range(n) if rel[x][y]) for x in range(n))
        found.add(nbhd)
    return [FinTopSpace(n, nb) for nb in sorted(found)]
