"""Finite monoids stored as multiplication tables over dense indices."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import BadIdentity, ClosureTooLarge, NotAssociative, OutOfRange


@dataclass(frozen=True)
class FiniteMonoid:
    """A monoid on ``0..size-1`` with ``table[a][b] = a*b``.

    Construction validates the table; an invalid table raises
    :class:`OutOfRange`, :class:`BadIdentity` or :class:`NotAssociative`.
    """

    table: tuple[tuple[int, ...], ...]
    identity: int = 0
    name: str = field(default="", compare=False)

    def __post_init__(self):
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        _check_table(table, int(self.identity))
        object.__setattr__(self, "identity", int(self.identity))

    @property
    def size(self) -> int:
        return len(self.table)

    def __len__(self):
        return len(self.table)

    @property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.int64).reshape(self.size, self.size)
        arr.setflags(write=False)
        return arr

    def is_commutative(self) -> bool:
        return bool(np.array_equal(self.array, self.array.T))

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteMonoid{label} size={self.size} identity={self.identity}>"


def _check_table(table, identity):
    n = len(table)
    if n == 0:
        raise OutOfRange("a monoid needs at least one element")
    if any(len(row) != n for row in table):
        raise OutOfRange("multiplication table must be square")
    if not 0 <= identity < n:
        raise OutOfRange(f"identity {identity} outside 0..{n - 1}")
    t = np.array(table, dtype=np.int64)
    if t.min() < 0 or t.max() >= n:
        raise OutOfRange(f"table entries must lie in 0..{n - 1}")
    idx = np.arange(n)
    bad = np.flatnonzero((t[identity] != idx) | (t[:, identity] != idx))
    if bad.size:
        raise BadIdentity(int(bad[0]))
    # (a*b)*c against a*(b*c); argwhere walks triples lexicographically
    left = t[t[:, :, None], idx[None, None, :]]
    right = t[idx[:, None, None], t[None, :, :]]
    witnesses = np.argwhere(left != right)
    if witnesses.size:
        a, b, c = (int(v) for v in witnesses[0])
        raise NotAssociative(a, b, c)


def validate_monoid(table: Sequence[Sequence[int]], identity: int, name: str = "") -> FiniteMonoid:
    return FiniteMonoid(tuple(tuple(row) for row in table), identity, name)


def trivial_monoid() -> FiniteMonoid:
    return FiniteMonoid(((0,),), 0, "trivial")


def cyclic_group(n: int) -> FiniteMonoid:
    """Z_n under addition, identity 0."""
    if n < 1:
        raise OutOfRange("cyclic_group needs n >= 1")
    return FiniteMonoid(tuple(tuple((a + b) % n for b in range(n)) for a in range(n)), 0, f"Z{n}")


def idempotent_monoid() -> FiniteMonoid:
    """{e, a} with a*a = a (e = 0, a = 1)."""
    return FiniteMonoid(((0, 1), (1, 1)), 0, "idempotent")


def threshold_monoid(n: int = 3) -> FiniteMonoid:
    """{0, ..., n-1} with a*b = min(a + b, n - 1)."""
    if n < 1:
        raise OutOfRange("threshold_monoid needs n >= 1")
    return FiniteMonoid(
        tuple(tuple(min(a + b, n - 1) for b in range(n)) for a in range(n)), 0, f"threshold{n}"
    )


def fixture_monoids() -> list[FiniteMonoid]:
    """The small monoids used across the test surface, ordered by size."""
    return [trivial_monoid(), cyclic_group(2), idempotent_monoid(), cyclic_group(3), threshold_monoid(3)]


def transformation_closure(carrier_size: int, generators, cap: int = 64) -> list[tuple[int, ...]]:
    """Breadth-first closure of ``{id} ∪ generators`` under composition.

    Elements are listed in discovery order, starting from the identity map;
    each queued element ``t`` spawns ``g∘t`` for the generators in order.
    """
    gens = [tuple(int(v) for v in g) for g in generators]
    for g in gens:
        if len(g) != carrier_size or any(not 0 <= v < carrier_size for v in g):
            raise OutOfRange(f"generator {g} is not a total map on {carrier_size} points")
    ident = tuple(range(carrier_size))
    seen = {ident: 0}
    order = [ident]
    queue = deque([ident])
    while queue:
        t = queue.popleft()
        for g in gens:
            new = tuple(g[v] for v in t)
            if new not in seen:
                if len(order) >= cap:
                    raise ClosureTooLarge(f"closure exceeds {cap} elements")
                seen[new] = len(order)
                order.append(new)
                queue.append(new)
    return order


def monoid_from_transformations(carrier_size: int, generators, cap: int = 64) -> FiniteMonoid:
    """Monoid of all composites of the generators; ``a*b`` is ``a∘b``."""
    elems = transformation_closure(carrier_size, generators, cap)
    index = {t: i for i, t in enumerate(elems)}
    table = tuple(
        tuple(index[tuple(a[v] for v in b)] for b in elems)
        for a in elems
    )
    return FiniteMonoid(table, 0, "transformations")
