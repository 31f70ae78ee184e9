import itertools

import pytest
from hypothesis import given, settings, strategies as st

from oracles import oracle_pullback_pairs
from pactkit.errors import NotMono, OutOfRange, SizeMismatch
from pactkit.finset import (
    CanonicalPartialMorphism,
    FiniteDiagram,
    FinMap,
    Subset,
    all_maps,
    canonicalize_partial,
    coequalizer,
    colimit_of_diagram,
    compose,
    injections,
    is_mono,
    pullback,
    quotient_labels,
)
from pactkit.testkit import colimit_universal, pullback_universal


def fm(images, dst):
    return FinMap(len(images), dst, tuple(images))


# -- maps and composition ------------------------------------------------------------

def test_compose_with_identity():
    g = fm([2, 0, 1], 3)
    assert compose(FinMap.identity(3), g) == g


def test_involution_squares_to_identity():
    swap = fm([1, 0], 2)
    assert compose(swap, swap) == FinMap.identity(2)


def test_compose_pointwise():
    assert compose(fm([0, 0, 1], 2), fm([1, 0], 2)).images == (1, 1, 0)


def test_compose_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose(fm([0, 1], 2), fm([0, 0, 0], 1))


def test_map_validation():
    with pytest.raises(OutOfRange):
        fm([0, 3], 3)
    with pytest.raises(SizeMismatch):
        FinMap(2, 3, (0,))


def test_is_mono():
    assert is_mono(FinMap.identity(4))
    assert not is_mono(fm([1, 1], 2))
    assert is_mono(fm([2, 0], 3))
    assert is_mono(FinMap(0, 5, ()))


def test_subset_basics():
    s = Subset.of(5, [3, 1, 3])
    assert s.members == (1, 3) and 3 in s and 2 not in s
    assert s.position(3) == 1
    assert s.inclusion() == fm([1, 3], 5)
    with pytest.raises(OutOfRange):
        Subset(3, (2, 1))


# -- pullbacks -----------------------------------------------------------------------

def test_pullback_of_identities_is_diagonal():
    pb = pullback(FinMap.identity(3), FinMap.identity(3))
    assert pb.size == 3
    assert list(zip(pb.p1.images, pb.p2.images)) == [(0, 0), (1, 1), (2, 2)]


def test_pullback_from_empty():
    pb = pullback(FinMap(0, 2, ()), fm([0, 1, 1], 2))
    assert pb.size == 0


def test_pullback_collapsing_leg():
    pb = pullback(fm([0, 0], 1), fm([0], 1))
    assert pb.size == 2
    assert list(zip(pb.p1.images, pb.p2.images)) == [(0, 0), (1, 0)]


def test_pullback_size_mismatch():
    with pytest.raises(SizeMismatch):
        pullback(fm([0], 1), fm([0], 2))


maps_into = st.integers(1, 3).flatmap(
    lambda z: st.tuples(
        st.lists(st.integers(0, z - 1), max_size=4),
        st.lists(st.integers(0, z - 1), max_size=4),
        st.just(z),
    )
)


@settings(max_examples=200, deadline=None)
@given(maps_into)
def test_pullback_matches_pair_enumeration(case):
    f, g, z = case
    pb = pullback(fm(f, z), fm(g, z))
    assert list(zip(pb.p1.images, pb.p2.images)) == oracle_pullback_pairs(f, g)


@settings(max_examples=40, deadline=None)
@given(maps_into)
def test_pullback_universal_up_to_four(case):
    f, g, z = case
    assert pullback_universal(fm(f, z), fm(g, z), max_apex=2)


def test_pullback_oracle_rejects_wrong_apex():
    # a deliberately broken "pullback" that drops a pair must fail the oracle
    import pactkit.testkit as tk

    real = tk.pullback

    def lossy(f, g):
        pb = real(f, g)
        return type(pb)(pb.size - 1, FinMap(pb.size - 1, f.src_size, pb.p1.images[:-1]),
                        FinMap(pb.size - 1, g.src_size, pb.p2.images[:-1]))

    tk.pullback = lossy
    try:
        assert not pullback_universal(fm([0, 0], 1), fm([0], 1), max_apex=1)
    finally:
        tk.pullback = real


# -- canonical partial morphisms -------------------------------------------------------

def test_canonical_identity_span():
    g = fm([1, 0, 1], 2)
    c = canonicalize_partial(FinMap.identity(3), g)
    assert c.domain == Subset.full(3) and c.map == g


def test_canonical_empty_span():
    c = canonicalize_partial(FinMap(0, 3, ()), FinMap(0, 2, ()))
    assert len(c.domain) == 0 and c.map.src_size == 0


def test_canonical_reindex():
    c = canonicalize_partial(fm([2, 0], 3), fm([1, 1], 2))
    assert c.domain.members == (0, 2)
    assert c.map.images == (1, 1)


def test_canonical_rejects_non_mono():
    with pytest.raises(NotMono):
        canonicalize_partial(fm([0, 0], 2), fm([0, 1], 2))
    with pytest.raises(SizeMismatch):
        canonicalize_partial(fm([0], 2), fm([0, 1], 2))


def test_canonical_is_idempotent_and_iso_invariant():
    for perm in itertools.permutations(range(3)):
        f = fm([(2, 4, 0)[p] for p in perm], 5)
        g = fm([(1, 0, 1)[p] for p in perm], 2)
        c = canonicalize_partial(f, g)
        assert c == canonicalize_partial(fm([0, 2, 4], 5), fm([1, 1, 0], 2))
        assert canonicalize_partial(c.domain.inclusion(), c.map) == c


def test_partial_morphism_accessors():
    c = CanonicalPartialMorphism.from_pairs(4, 3, {3: 2, 1: 0})
    assert c(3) == 2 and c.defined_at(1) and not c.defined_at(0)
    assert c.as_dict() == {1: 0, 3: 2}
    assert not c.is_total()


# -- quotients -----------------------------------------------------------------------

def test_single_node_colimit():
    col = colimit_of_diagram(FiniteDiagram((3,), ()))
    assert col.size == 3 and col.injections[0] == FinMap.identity(3)


def test_two_points_glued():
    col = colimit_of_diagram(FiniteDiagram((1, 1), ((0, 1, fm([0], 1)),)))
    assert col.size == 1


def test_coequalizer_of_equal_maps():
    p = fm([0, 2], 3)
    co = coequalizer(p, p)
    assert co.size == 3 and co.c == FinMap.identity(3)


def test_coequalizer_of_swap():
    co = coequalizer(FinMap.identity(2), fm([1, 0], 2))
    assert co.size == 1


def test_coequalizer_size_mismatch():
    with pytest.raises(SizeMismatch):
        coequalizer(fm([0], 2), fm([0, 1], 2))


def test_quotient_numbering_least_member():
    k, labels = quotient_labels(6, [(5, 1), (4, 0), (3, 5)])
    assert k == 3
    assert labels == [0, 1, 2, 1, 0, 1]


def transitive_closure_labels(n, pairs):
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        rel[a][b] = rel[b][a] = True
    for k in range(n):
        for i in range(n):
            for j in range(n):
                rel[i][j] = rel[i][j] or (rel[i][k] and rel[k][j])
    labels, seen = [], []
    for i in range(n):
        root = min(j for j in range(n) if rel[i][j])
        if root not in seen:
            seen.append(root)
        labels.append(seen.index(root))
    return len(seen), labels


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 7).flatmap(
    lambda n: st.tuples(st.just(n), st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=6))
))
def test_quotient_labels_match_closure(case):
    n, pairs = case
    assert quotient_labels(n, pairs) == transitive_closure_labels(n, pairs)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 3).flatmap(
    lambda z: st.integers(0, 3).flatmap(
        lambda a: st.tuples(
            st.lists(st.integers(0, z - 1), min_size=a, max_size=a),
            st.lists(st.integers(0, z - 1), min_size=a, max_size=a),
            st.just(z),
        )
    )
))
def test_coequalizer_equals_parallel_pair_colimit(case):
    p, q, z = case
    co = coequalizer(fm(p, z), fm(q, z))
    # target listed first so both quotients number classes the same way
    d = FiniteDiagram((z, len(p)), ((1, 0, fm(p, z)), (1, 0, fm(q, z))))
    col = colimit_of_diagram(d)
    assert compose(fm(p, z), co.c) == compose(fm(q, z), co.c)
    assert col.size == co.size and col.injections[0] == co.c


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=3, max_size=3), st.lists(st.integers(0, 1), min_size=2, max_size=2))
def test_colimit_universal_small(f, g):
    d = FiniteDiagram((3, 3, 2), ((0, 1, fm(f, 3)), (2, 1, fm([g[0], g[1] + 1], 3))))
    assert colimit_universal(d, colimit_of_diagram(d), max_target=2)


def test_all_maps_and_injections():
    rows = all_maps(2, 3)
    assert rows.shape == (9, 2)
    assert [tuple(r) for r in rows] == list(itertools.product(range(3), repeat=2))
    assert all_maps(0, 0).shape == (1, 0)
    assert all_maps(2, 0).shape == (0, 2)
    assert len(list(injections(2, 3))) == 6
    assert all(is_mono(f) for f in injections(2, 4))
