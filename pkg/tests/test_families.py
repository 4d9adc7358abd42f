from hypothesis import given, settings, strategies as st

from gluemin.families import (
    antichain_reduce, family_equal, minimal_cover_points, union_includes_family,
    union_includes_subspace, widen,
)
from gluemin.linalg import full_space, includes, span, zero_subspace

from test_linalg import subspaces, vectors

X = span([(1, 0)], 2)
Y = span([(0, 1)], 2)
Q2 = full_space(2)


def fam(*members):
    return antichain_reduce(members, 2)


def test_antichain_reduce_examples():
    assert fam(X, Q2).members == (Q2,)
    assert set(fam(X, Y).members) == {X, Y}
    assert fam(span([(1, 2)], 2), span([(2, 4)], 2), zero_subspace(2)).members == (span([(1, 2)], 2),)


def test_union_includes_subspace_examples():
    assert not union_includes_subspace(fam(X, Y), span([(1, 1)], 2))
    assert union_includes_subspace(fam(X), zero_subspace(2))
    assert union_includes_subspace(fam(Q2), X)


def test_union_includes_family_examples():
    assert union_includes_family(fam(X, Y), fam(X))
    assert not family_equal(fam(Q2), fam(X, Y))
    f = fam(X, Y)
    assert family_equal(f, antichain_reduce(list(f) + list(f), 2))


def test_minimal_cover_points_examples():
    assert set(minimal_cover_points([(1, 0), (2, 0), (0, 1)]).members) == {X, Y}
    assert minimal_cover_points([(0, 0)]).members == (zero_subspace(2),)
    assert minimal_cover_points([(1, 1)]).members == (span([(1, 1)], 2),)


def test_widen_examples():
    assert widen(fam(X, Y)).members == (Q2,)
    assert widen(fam(Q2)).members == (Q2,)
    assert widen(fam(zero_subspace(2))).members == (zero_subspace(2),)


def test_contains_point():
    f = fam(X, Y)
    assert f.contains_point((3, 0)) and f.contains_point((0, -1))
    assert not f.contains_point((1, 1))


@st.composite
def families(draw, n):
    return antichain_reduce([draw(subspaces(n)) for _ in range(draw(st.integers(1, 4)))], n)


@settings(max_examples=80)
@given(st.data())
def test_antichain_invariant(data):
    n = data.draw(st.integers(1, 4))
    f = data.draw(families(n))
    for a in f.members:
        for b in f.members:
            assert a == b or not includes(a, b)
    assert family_equal(f, antichain_reduce(list(f) + list(f), n))


@settings(max_examples=60)
@given(st.data())
def test_union_inclusion_matches_points(data):
    """A subspace inside the union lies inside a single member (infinite field)."""
    n = data.draw(st.integers(1, 4))
    f = data.draw(families(n))
    s = data.draw(subspaces(n))
    inside = union_includes_subspace(f, s)
    assert inside == any(includes(m, s) for m in f.members)
    if not inside and s.dim:
        # moment-curve points of s: any dim(s) of them are independent, so each
        # member (meeting s properly) holds at most dim(s) - 1 of them
        d = s.dim
        pts = [tuple(sum((k ** e * b[i] for e, b in enumerate(s.basis)), 0) for i in range(n))
               for k in range(1, len(f) * (d - 1) + 2)]
        assert any(not f.contains_point(p) for p in pts)


@settings(max_examples=60)
@given(st.data())
def test_widen_is_sum(data):
    n = data.draw(st.integers(1, 4))
    f = data.draw(families(n))
    w = widen(f)
    assert len(w) == 1
    assert union_includes_family(w, f)
    assert widen(w) == w


@given(st.data())
def test_cover_points_contains_points(data):
    n = data.draw(st.integers(1, 4))
    pts = [data.draw(vectors(n)) for _ in range(data.draw(st.integers(1, 5)))]
    f = minimal_cover_points(pts)
    assert all(f.contains_point(p) for p in pts)
    assert all(m.dim <= 1 for m in f.members)
