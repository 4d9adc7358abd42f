import pytest

from gluemin import (
    GluedMorphism, Matrix, Point, agreement_subspace, embed_set, embed_vec, factor, glue, glued_iso,
    identity_morphism, is_epi, is_iso, is_mono, is_normalized, make_space, morphism_compose,
    morphism_equal, morphism_validate, normalize, point_eq, subobject_from_pieces,
    subobject_intersect, subobject_preimage,
)
from gluemin.errors import IncompatibleGluing, NonInjectiveGluing, NotAMono, SelfFolding
from gluemin.glued import diagonal, graph, swap, morphism_check, normalize_map, point_set_equal
from gluemin.linalg import block_diag, contains, full_space, image, kernel, span, zero_subspace

import generators as gen


def axes_into_plane(src):
    return GluedMorphism(src, embed_vec(2), ((0, Matrix.of([[1], [0]])), (0, Matrix.of([[0], [1]]))))


# --- normalize -------------------------------------------------------------------

def test_normalize_examples(two_lines_at_0):
    doubled = make_space([1, 1], {(0, 1): [graph(full_space(1), Matrix.of([[2]]))]})
    assert normalize(doubled) == embed_vec(1)
    assert normalize(two_lines_at_0) == two_lines_at_0
    assert normalize(embed_vec(3)) == embed_vec(3)


def test_normalize_keeps_lower_index():
    g = make_space([1, 2], {(0, 1): [graph(full_space(1), Matrix.of([[1], [0]]))]})
    nf = normalize_map(g)
    assert nf.space == embed_vec(2) and nf.kept == [1]
    assert nf.maps[0] == (0, Matrix.of([[1], [0]]))


def test_self_folding():
    g = make_space([1, 1], {(0, 1): [graph(full_space(1), Matrix.of([[1]])),
                                     graph(full_space(1), Matrix.of([[2]]))]})
    with pytest.raises(SelfFolding):
        normalize(g)
    # a zigzag through a third component
    h = glue([1, 1, 1], [])
    with pytest.raises(SelfFolding):
        glue([1, 1, 1], [(0, 1, [(1,)], [[1]]), (1, 2, [(1,)], [[1]]), (0, 2, [(1,)], [[3]])])
    assert not is_normalized(g) and is_normalized(h)


def test_non_injective_gluing():
    g = make_space([1, 2], {(0, 1): [span([(1, 0, 0)], 3)]})
    with pytest.raises(NonInjectiveGluing):
        normalize(g)


def test_saturation():
    # 0 ~ 1 along the first axis, 1 ~ 2 in full: 0 ~ 2 must appear before 2 is merged
    g = glue([2, 2, 2], [(0, 1, [(1, 0)], [[1, 0], [0, 0]]), (1, 2, [(1, 0), (0, 1)], [[0, 1], [1, 0]])])
    assert g.components == (2, 2)
    assert point_eq(g, Point(0, (1, 0)), Point(1, (1, 0)))


def test_normalize_idempotent():
    rng = gen.rng_for(21)
    for _ in range(60):
        g = gen.glued_space(rng)
        assert normalize(g) == g
        raw = make_space(g.components, {k: list(v) for k, v in g.gluings})
        assert normalize(normalize(raw)) == normalize(raw)


# --- points and agreement --------------------------------------------------------------

def test_point_eq_examples(two_lines_at_0, two_lines):
    assert point_eq(two_lines_at_0, Point(0, (0,)), Point(1, (0,)))
    assert not point_eq(two_lines, Point(0, (0,)), Point(1, (0,)))
    assert point_eq(two_lines, Point(0, (1,)), Point(0, (1,)))
    assert not point_eq(two_lines_at_0, Point(0, (1,)), Point(1, (1,)))


def test_agreement_examples(two_lines_at_0, two_lines):
    i1 = Matrix.of([[1]])
    assert agreement_subspace(embed_vec(1), 0, i1, 0, i1) == [diagonal(1)]
    assert agreement_subspace(two_lines, 0, i1, 1, i1) == []
    assert agreement_subspace(two_lines_at_0, 0, i1, 1, i1) == [zero_subspace(2)]


# --- morphisms ----------------------------------------------------------------------

def test_morphism_validate_examples(two_lines_at_0):
    assert morphism_validate(identity_morphism(two_lines_at_0))
    assert morphism_validate(axes_into_plane(two_lines_at_0))


def test_morphism_equal_through_gluing():
    tgt = glue([2, 2], [(0, 1, [(1, 0)], [[3, 0], [0, 0]])])
    src = embed_vec(1)
    m1 = GluedMorphism(src, tgt, ((0, Matrix.of([[1], [0]])),))
    m2 = GluedMorphism(src, tgt, ((1, Matrix.of([[3], [0]])),))
    m3 = GluedMorphism(src, tgt, ((1, Matrix.of([[1], [0]])),))
    assert morphism_equal(m1, m2)
    assert not morphism_equal(m1, m3)


def test_incompatible_gluing():
    src = glue([2, 2], [(0, 1, [(1, 0)], [[1, 0], [0, 0]])])
    bad = GluedMorphism(src, embed_vec(2), ((0, Matrix.of([[1, 0], [0, 1]])), (0, Matrix.of([[2, 0], [0, 1]]))))
    assert not morphism_validate(bad)
    with pytest.raises(IncompatibleGluing):
        morphism_check(bad)


def test_compose_laws():
    rng = gen.rng_for(22)
    for _ in range(30):
        m, w = gen.morphism(rng)
        assert morphism_equal(morphism_compose(identity_morphism(m.target), m), m)
        assert morphism_equal(morphism_compose(m, identity_morphism(m.source)), m)
        assert morphism_equal(morphism_compose(w, morphism_compose(m, identity_morphism(m.source))),
                              morphism_compose(morphism_compose(w, m), identity_morphism(m.source)))


def test_mono_examples(two_lines_at_0, two_lines):
    assert is_mono(axes_into_plane(two_lines_at_0))
    assert not is_mono(axes_into_plane(two_lines))
    assert is_mono(identity_morphism(two_lines))


def test_epi_examples():
    assert is_epi(identity_morphism(embed_vec(2)))
    assert not is_epi(GluedMorphism(embed_vec(1), embed_vec(2), ((0, Matrix.of([[1], [0]])),)))


def test_mono_against_points():
    """is_mono agrees with a search for colliding pairs of source points."""
    rng = gen.rng_for(23)
    for _ in range(80):
        m, _ = gen.morphism(rng)
        collision = False
        src = m.source
        for i, (ti, fi) in enumerate(m.assignment):
            if kernel(fi).dim:
                collision = True
            for j in range(i + 1, src.size):
                tj, fj = m.assignment[j]
                for s in agreement_subspace(m.target, ti, fi, tj, fj):
                    for _ in range(4):
                        c = gen.vec(rng, s.dim, 0.2)
                        v = tuple(sum((x * b[k] for x, b in zip(c, s.basis)), 0) for k in range(s.ambient_dim))
                        p, q = Point(i, v[:fi.cols]), Point(j, v[fi.cols:])
                        assert point_eq(m.target, m(p), m(q))
                        if not point_eq(src, p, q):
                            collision = True
        assert is_mono(m) == (not collision)


# --- factorization and subobjects ---------------------------------------------------

def test_factor_examples():
    m = GluedMorphism(embed_vec(2), embed_vec(2), ((0, Matrix.of([[1, 0], [0, 0]])),))
    e, im, mo = factor(m)
    assert im.components == (1,) and not im.gluings
    assert is_epi(e) and is_mono(mo)
    assert contains(span(mo.assignment[0][1].columns(), 2), (1, 0))
    inc = GluedMorphism(embed_vec(1), embed_vec(2), ((0, Matrix.of([[1], [1]])),))
    assert is_iso(factor(inc)[0])
    epi = GluedMorphism(embed_vec(2), embed_vec(1), ((0, Matrix.of([[1, 1]])),))
    assert is_iso(factor(epi)[2])


def test_factor_laws():
    rng = gen.rng_for(24)
    for _ in range(40):
        m, _ = gen.morphism(rng)
        e, im, mo = factor(m)
        assert is_epi(e) and is_mono(mo) and morphism_equal(morphism_compose(mo, e), m)
        assert morphism_validate(e) and morphism_validate(mo)
        if is_mono(m):
            assert is_iso(e)
        if is_epi(m):
            assert is_iso(mo)


def test_intersect_and_preimage_examples(two_lines_at_0):
    q2 = embed_vec(2)
    x = subobject_from_pieces(q2, [(0, Matrix.of([[1], [0]]))]).mono
    y = subobject_from_pieces(q2, [(0, Matrix.of([[0], [1]]))]).mono
    meet = subobject_intersect(x, y)
    assert meet.source.components == (0,)
    ident = identity_morphism(q2)
    assert point_set_equal(subobject_preimage(x, ident), x)
    lines = axes_into_plane(two_lines_at_0)
    proj = GluedMorphism(q2, q2, ((0, Matrix.of([[1, 0], [0, 0]])),))
    pre = subobject_preimage(lines, proj)
    assert pre.source == q2 and is_iso(pre)


def test_intersect_requires_monos(two_lines):
    with pytest.raises(NotAMono):
        subobject_intersect(axes_into_plane(two_lines), axes_into_plane(two_lines))


# --- isomorphism ---------------------------------------------------------------------

def test_glued_iso_examples(two_lines_at_0):
    assert glued_iso(two_lines_at_0, embed_vec(2)) is None
    assert embed_set(2).components == (0, 0) and not embed_set(2).gluings
    raw = make_space([1, 1], {(0, 1): [graph(full_space(1), Matrix.of([[2]]))]})
    iso = glued_iso(raw, normalize(raw))
    assert iso is not None and is_iso(iso)
    assert glued_iso(two_lines_at_0, two_lines_at_0) is not None


def transport(g, perm, mats):
    """The space g with component i moved to perm[i] and re-coordinatized by mats[i]."""
    rels = {}
    for (i, j), ms in g.gluings:
        for r in ms:
            r2 = image(block_diag(mats[i], mats[j]), r)
            a, b = perm[i], perm[j]
            if a > b:
                r2, a, b = swap(r2, g.components[i], g.components[j]), b, a
            rels.setdefault((a, b), []).append(r2)
    dims = [0] * g.size
    for i, n in enumerate(g.components):
        dims[perm[i]] = n
    return make_space(dims, rels)


def test_glued_iso_random_relabel():
    rng = gen.rng_for(25)
    for _ in range(25):
        g = gen.glued_space(rng)
        perm = list(range(g.size))
        rng.shuffle(perm)
        h = transport(g, perm, [gen.injective(rng, n, n) for n in g.components])
        iso = glued_iso(g, h)
        assert iso is not None and is_iso(iso) and morphism_validate(iso)
        assert sorted(t for t, _ in iso.assignment) == list(range(h.size))
