"""The category of finite sets: maps, subsets, pullbacks, partial morphisms and colimits.

Every set is ``{0, ..., n-1}`` for some ``n >= 0``. Orderings are fixed so that
derived structures are reproducible: pullback apexes list pairs ``(a, b)``
lexicographically and quotient classes are numbered by their least member.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from scipy.cluster.hierarchy import DisjointSet

from .errors import NotMono, OutOfRange, SizeMismatch


@dataclass(frozen=True)
class FinMap:
    src_size: int
    dst_size: int
    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(v) for v in self.images)
        object.__setattr__(self, "images", images)
        if len(images) != self.src_size:
            raise SizeMismatch(f"{len(images)} images given for a source of size {self.src_size}")
        if any(not 0 <= v < self.dst_size for v in images):
            raise OutOfRange(f"images {images} not all in 0..{self.dst_size - 1}")

    @classmethod
    def from_images(cls, images: Sequence[int], dst_size: int) -> "FinMap":
        return cls(len(images), dst_size, tuple(images))

    @classmethod
    def identity(cls, n: int) -> "FinMap":
        return cls(n, n, tuple(range(n)))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __len__(self):
        return self.src_size

    def __repr__(self):
        return f"FinMap({self.src_size}->{self.dst_size}, {list(self.images)})"

    def then(self, g: "FinMap") -> "FinMap":
        return compose(self, g)

    def is_surjective(self) -> bool:
        return len(set(self.images)) == self.dst_size

    def image(self) -> "Subset":
        return Subset(self.dst_size, tuple(sorted(set(self.images))))


@dataclass(frozen=True)
class Subset:
    ambient_size: int
    members: tuple[int, ...]

    def __post_init__(self):
        members = tuple(int(v) for v in self.members)
        object.__setattr__(self, "members", members)
        if any(b <= a for a, b in zip(members, members[1:])):
            raise OutOfRange(f"subset members {members} must be strictly increasing")
        if members and not (0 <= members[0] and members[-1] < self.ambient_size):
            raise OutOfRange(f"subset members {members} outside 0..{self.ambient_size - 1}")

    @classmethod
    def of(cls, ambient_size: int, members: Iterable[int]) -> "Subset":
        return cls(ambient_size, tuple(sorted(set(members))))

    @classmethod
    def full(cls, n: int) -> "Subset":
        return cls(n, tuple(range(n)))

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        return x in self._positions

    @property
    def _positions(self) -> dict[int, int]:
        # cached by hand: frozen dataclasses reject attribute assignment
        cache = self.__dict__.get("_pos")
        if cache is None:
            cache = {x: i for i, x in enumerate(self.members)}
            object.__setattr__(self, "_pos", cache)
        return cache

    def position(self, x: int) -> int:
        return self._positions[x]

    def is_full(self) -> bool:
        return len(self.members) == self.ambient_size

    def inclusion(self) -> FinMap:
        return FinMap(len(self.members), self.ambient_size, self.members)

    def mask(self) -> int:
        bits = 0
        for x in self.members:
            bits |= 1 << x
        return bits


@dataclass(frozen=True)
class CanonicalPartialMorphism:
    """The unique subset-inclusion representative of a partial map.

    ``map`` is indexed by position in ``domain.members``.
    """

    domain: Subset
    map: FinMap

    def __post_init__(self):
        if self.map.src_size != len(self.domain):
            raise SizeMismatch("partial map must be indexed by the domain positions")

    @classmethod
    def from_pairs(cls, src_size: int, dst_size: int, pairs) -> "CanonicalPartialMorphism":
        """Build from ``{x: y}`` (or an iterable of ``(x, y)``)."""
        items = dict(pairs)
        dom = Subset.of(src_size, items)
        return cls(dom, FinMap(len(dom), dst_size, tuple(items[x] for x in dom.members)))

    @classmethod
    def total(cls, f: FinMap) -> "CanonicalPartialMorphism":
        return cls(Subset.full(f.src_size), f)

    @property
    def src_size(self) -> int:
        return self.domain.ambient_size

    @property
    def dst_size(self) -> int:
        return self.map.dst_size

    def __call__(self, x: int) -> int:
        return self.map.images[self.domain.position(x)]

    def defined_at(self, x: int) -> bool:
        return x in self.domain

    def items(self):
        return zip(self.domain.members, self.map.images)

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def is_total(self) -> bool:
        return self.domain.is_full()


@dataclass(frozen=True)
class FiniteDiagram:
    node_sizes: tuple[int, ...]
    arrows: tuple[tuple[int, int, FinMap], ...]

    def __post_init__(self):
        object.__setattr__(self, "node_sizes", tuple(int(n) for n in self.node_sizes))
        object.__setattr__(self, "arrows", tuple((int(s), int(t), f) for s, t, f in self.arrows))
        for s, t, f in self.arrows:
            if not (0 <= s < len(self.node_sizes) and 0 <= t < len(self.node_sizes)):
                raise OutOfRange(f"arrow {s}->{t} refers to a missing node")
            if f.src_size != self.node_sizes[s] or f.dst_size != self.node_sizes[t]:
                raise SizeMismatch(f"arrow {s}->{t} map sizes do not match its endpoints")

    def offsets(self) -> list[int]:
        return list(itertools.accumulate(self.node_sizes, initial=0))


class Pullback(NamedTuple):
    size: int
    p1: FinMap
    p2: FinMap


class Colimit(NamedTuple):
    size: int
    injections: list[FinMap]


class Coequalizer(NamedTuple):
    size: int
    c: FinMap


def compose(f: FinMap, g: FinMap) -> FinMap:
    """``g∘f``: apply ``f`` first, then ``g``."""
    if f.dst_size != g.src_size:
        raise SizeMismatch(f"cannot compose {f.src_size}->{f.dst_size} with {g.src_size}->{g.dst_size}")
    gi = g.images
    return FinMap(f.src_size, g.dst_size, tuple(gi[v] for v in f.images))


def is_mono(f: FinMap) -> bool:
    return len(set(f.images)) == f.src_size


def pullback(f: FinMap, g: FinMap) -> Pullback:
    """Pairs ``(a, b)`` with ``f(a) = g(b)``, lexicographically ordered."""
    if f.dst_size != g.dst_size:
        raise SizeMismatch("pullback legs must share a codomain")
    fibres: dict[int, list[int]] = {}
    for b, z in enumerate(g.images):
        fibres.setdefault(z, []).append(b)
    pairs = [(a, b) for a, z in enumerate(f.images) for b in fibres.get(z, ())]
    n = len(pairs)
    return Pullback(
        n,
        FinMap(n, f.src_size, tuple(a for a, _ in pairs)),
        FinMap(n, g.src_size, tuple(b for _, b in pairs)),
    )


def canonicalize_partial(f: FinMap, g: FinMap) -> CanonicalPartialMorphism:
    """Reindex the span ``(f, g)`` along the mono ``f`` onto a subset."""
    if f.src_size != g.src_size:
        raise SizeMismatch("span legs must share a source")
    if not is_mono(f):
        raise NotMono(f"first leg {f} is not injective")
    return CanonicalPartialMorphism.from_pairs(f.dst_size, g.dst_size, zip(f.images, g.images))


def quotient_labels(n: int, pairs: Iterable[tuple[int, int]]) -> tuple[int, list[int]]:
    """Classes of the equivalence on ``0..n-1`` generated by ``pairs``.

    Returns ``(k, labels)``; classes are numbered by least member.
    """
    ds = DisjointSet(range(n))
    for a, b in pairs:
        ds.merge(a, b)
    root_label: dict[int, int] = {}
    labels = []
    for x in range(n):
        labels.append(root_label.setdefault(ds[x], len(root_label)))
    return len(root_label), labels


def colimit_of_diagram(d: FiniteDiagram) -> Colimit:
    offsets = d.offsets()
    pairs = (
        (offsets[s] + x, offsets[t] + y)
        for s, t, f in d.arrows
        for x, y in enumerate(f.images)
    )
    k, labels = quotient_labels(offsets[-1], pairs)
    injections = [
        FinMap(size, k, labels[offsets[i]:offsets[i] + size])
        for i, size in enumerate(d.node_sizes)
    ]
    return Colimit(k, injections)


def coequalizer(p: FinMap, q: FinMap) -> Coequalizer:
    if (p.src_size, p.dst_size) != (q.src_size, q.dst_size):
        raise SizeMismatch("coequalizer needs a parallel pair")
    k, labels = quotient_labels(p.dst_size, zip(p.images, q.images))
    return Coequalizer(k, FinMap(p.dst_size, k, labels))


def all_maps(src_size: int, dst_size: int) -> np.ndarray:
    """Every map ``src -> dst`` as a row of an ``(dst**src, src)`` array.

    Rows are in lexicographic order of the image tuple.
    """
    if src_size == 0:
        return np.zeros((1, 0), dtype=np.int64)
    if dst_size == 0:
        return np.zeros((0, src_size), dtype=np.int64)
    grids = np.indices((dst_size,) * src_size, dtype=np.int64)
    return grids.reshape(src_size, -1).T.copy()


def injections(src_size: int, dst_size: int):
    """All injective maps, in lexicographic order."""
    for images in itertools.permutations(range(dst_size), src_size):
        yield FinMap(src_size, dst_size, images)
