"""Finite gluings of finite-dimensional rational spaces.

A :class:`GluedSpace` has components ``Q^{n_1}, ..., Q^{n_k}``.  For each
pair ``i < j`` it stores an antichain of *relations*: subspaces of
``Q^{n_i} x Q^{n_j}`` that are graphs of partial linear isomorphisms.  A point
``(i, x)`` equals ``(j, y)`` iff ``(x, y)`` lies in one of them.  A single
relation per pair is the common case; several are needed e.g. to glue two
planes along both coordinate axes without gluing the whole plane.

Normal form (produced by :func:`normalize`):

* saturated: every composite of relations ``i -> j -> l`` lies in a relation
  ``i -> l``, so point equality is transitive;
* no self-folding: no chain of gluings identifies distinct points of one
  component;
* no component is glued in full onto another (such a component is removed).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .errors import (
    DimensionMismatch, IncompatibleGluing, NonInjectiveGluing, NotAMono, SelfFolding,
)
from .families import covered, reduce_members
from .linalg import (
    Matrix, Subspace, column_space, contains, full_space, hstack, identity, includes,
    intersect, inverse, kernel, preimage, product_subspace, project, rank, solve, span,
    vector, vstack, zeros, complement_basis,
)


# --- relations ------------------------------------------------------------

def swap(r: Subspace, na: int, nb: int) -> Subspace:
    """Converse relation: reorder Q^na x Q^nb coordinates to Q^nb x Q^na."""
    return project(r, list(range(na, na + nb)) + list(range(na)))


def compose_relations(r: Subspace, s: Subspace, na: int, nb: int, nc: int) -> Subspace:
    """{(a, c) : (a, b) in r and (b, c) in s for some b}."""
    left = product_subspace(r, full_space(nc))
    right = product_subspace(full_space(na), s)
    both = intersect(left, right)
    return project(both, list(range(na)) + list(range(na + nb, na + nb + nc)))


def diagonal(n: int) -> Subspace:
    return span([tuple(Fraction(int(k == i)) for k in range(n)) * 2 for i in range(n)], 2 * n)


def graph(domain: Subspace, phi: Matrix) -> Subspace:
    """Relation {(u, phi u) : u in domain}."""
    return span([tuple(u) + phi.apply(u) for u in domain.basis], domain.ambient_dim + phi.rows)


def relation_domain(r: Subspace, na: int) -> Subspace:
    return project(r, range(na))


def relation_matrix(r: Subspace, na: int, nb: int) -> Matrix:
    """Matrix of a relation that is a total function on Q^na."""
    if r.dim != na or relation_domain(r, na).dim != na:
        raise ValueError("relation is not a total function of its first block")
    return Matrix.from_columns([row[na:] for row in r.basis], nb)


def relation_to_gluing(r: Subspace, na: int, nb: int):
    """Split a partial-iso graph into (domain basis, phi) with phi zero off the domain."""
    dom = relation_domain(r, na)
    ys = [row[na:] for row in r.basis]
    comp = complement_basis(dom)
    src = Matrix.from_columns([row[:na] for row in r.basis] + comp, na)
    img = Matrix.from_columns(ys + [(Fraction(0),) * nb] * len(comp), nb)
    phi = img @ inverse(src) if na else zeros(nb, 0)
    return dom, phi


def is_partial_iso(r: Subspace, na: int, nb: int) -> bool:
    return project(r, range(na)).dim == r.dim and project(r, range(na, na + nb)).dim == r.dim


# --- spaces ---------------------------------------------------------------

@dataclass(frozen=True)
class GluedSpace:
    components: tuple
    gluings: tuple = ()  # sorted ((i, j), (relation, ...)) with i < j

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(int(n) for n in self.components))
        for (i, j), rels in self.gluings:
            if not (0 <= i < j < len(self.components)):
                raise DimensionMismatch(f"bad gluing indices {(i, j)}")
            for r in rels:
                if r.ambient_dim != self.components[i] + self.components[j]:
                    raise DimensionMismatch(f"gluing {(i, j)} has wrong ambient dimension")

    @property
    def size(self) -> int:
        return len(self.components)

    @property
    def total_dim(self) -> int:
        return sum(self.components)

    def gluing_map(self) -> dict:
        return dict(self.gluings)

    def relations(self, i: int, j: int) -> tuple:
        """Relations between components i and j, oriented with i's coordinates first."""
        if i == j:
            raise ValueError("relations are between distinct components")
        if i < j:
            return self.gluing_map().get((i, j), ())
        return tuple(swap(r, self.components[j], self.components[i])
                     for r in self.gluing_map().get((j, i), ()))

    def gluing_count(self) -> int:
        return sum(len(rels) for _, rels in self.gluings)


def make_space(components: Sequence[int], gluings: dict | None = None) -> GluedSpace:
    """Build a raw space from {(i, j): [relation, ...]} without normalizing."""
    gl = []
    for (i, j), rels in sorted((gluings or {}).items()):
        if i > j:
            i, j, rels = j, i, [swap(r, components[i], components[j]) for r in rels]
        if i == j:
            raise ValueError("a component cannot be glued to itself")
        ms = tuple(reduce_members(rels))
        if ms:
            gl.append(((i, j), ms))
    merged: dict = {}
    for k, ms in gl:
        merged[k] = tuple(reduce_members(merged.get(k, ()) + ms))
    return GluedSpace(tuple(components), tuple(sorted(merged.items())))


def glue(components: Sequence[int], gluings: Sequence = ()) -> GluedSpace:
    """Build and normalize a space from (i, j, domain_vectors, phi) gluings."""
    rels: dict = {}
    for i, j, dom, phi in gluings:
        d = span(dom, components[i])
        phi = phi if isinstance(phi, Matrix) else Matrix.of(phi, cols=components[i])
        rels.setdefault((i, j), []).append(graph(d, phi))
    return normalize(make_space(components, rels))


def embed_vec(n: int) -> GluedSpace:
    return GluedSpace((n,), ())


def embed_set(k: int) -> GluedSpace:
    return GluedSpace((0,) * k, ())


class NormalForm(NamedTuple):
    space: GluedSpace
    maps: list   # per original component: (new index, matrix into it)
    kept: list   # per new component: original index


def _get(rels: dict, dims, i, j):
    if i < j:
        return rels.get((i, j), [])
    return [swap(r, dims[j], dims[i]) for r in rels.get((j, i), [])]


def _put(rels: dict, dims, i, j, members):
    if i < j:
        rels[(i, j)] = members
    else:
        rels[(j, i)] = [swap(r, dims[i], dims[j]) for r in members]


def normalize_map(g: GluedSpace) -> NormalForm:
    dims = list(g.components)
    k = len(dims)
    rels = {key: list(ms) for key, ms in g.gluings}
    for (i, j), ms in rels.items():
        for r in ms:
            if not is_partial_iso(r, dims[i], dims[j]):
                raise NonInjectiveGluing(f"gluing between components {i} and {j} is not injective")

    def check_fold(i, j, r, s):
        back = swap(s, dims[i], dims[j])
        if not includes(diagonal(dims[i]), compose_relations(r, back, dims[i], dims[j], dims[i])):
            raise SelfFolding(f"gluings fold component {i} onto itself through component {j}")
        if not includes(diagonal(dims[j]), compose_relations(back, r, dims[j], dims[i], dims[j])):
            raise SelfFolding(f"gluings fold component {j} onto itself through component {i}")

    for (i, j), ms in rels.items():
        for a in range(len(ms)):
            for b in range(a, len(ms)):
                check_fold(i, j, ms[a], ms[b])

    # Saturate.  Each new relation is checked against its pair right away:
    # with a fold present the composites would otherwise grow forever.
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for l in range(i + 1, k):
                for j in range(k):
                    if j in (i, l):
                        continue
                    for r in _get(rels, dims, i, j):
                        for s in _get(rels, dims, j, l):
                            c = compose_relations(r, s, dims[i], dims[j], dims[l])
                            cur = rels.get((i, l), [])
                            if not covered(cur, c):
                                for m in cur:
                                    check_fold(i, l, c, m)
                                rels[(i, l)] = reduce_members(cur + [c])
                                changed = True

    alive = list(range(k))
    sub: dict = {}
    while True:
        found = None
        for i in reversed(alive):
            for j in alive:
                if j == i:
                    continue
                for r in _get(rels, dims, i, j):
                    if relation_domain(r, dims[i]).is_full():
                        found = (i, j, r)
                        break
                if found:
                    break
            if found:
                break
        if not found:
            break
        i, j, r = found
        sub[i] = (j, relation_matrix(r, dims[i], dims[j]))
        alive.remove(i)
        rels = {key: ms for key, ms in rels.items() if i not in key}

    new_index = {old: n for n, old in enumerate(alive)}
    maps = []
    for c in range(k):
        m = identity(dims[c])
        cur = c
        while cur in sub:
            nxt, phi = sub[cur]
            m = phi @ m
            cur = nxt
        maps.append((new_index[cur], m))
    glu = {}
    for (i, j), ms in rels.items():
        if ms:
            glu[(new_index[i], new_index[j])] = ms
    space = make_space([dims[c] for c in alive], glu)
    return NormalForm(space, maps, alive)


def normalize(g: GluedSpace) -> GluedSpace:
    return normalize_map(g).space


def is_normalized(g: GluedSpace) -> bool:
    try:
        return normalize(g) == g
    except (SelfFolding, NonInjectiveGluing):
        return False


# --- points ---------------------------------------------------------------

@dataclass(frozen=True)
class Point:
    component: int
    vector: tuple

    def __post_init__(self):
        object.__setattr__(self, "vector", vector(self.vector))


def check_point(g: GluedSpace, p: Point):
    if not (0 <= p.component < g.size) or len(p.vector) != g.components[p.component]:
        raise DimensionMismatch(f"malformed point {p} for components {g.components}")


def point_eq(g: GluedSpace, p: Point, q: Point) -> bool:
    check_point(g, p)
    check_point(g, q)
    if p.component == q.component:
        return p.vector == q.vector
    v = p.vector + q.vector
    return any(contains(r, v) for r in g.relations(p.component, q.component))


def equalizer(g: GluedSpace, c1: int, a: Matrix, c2: int, b: Matrix) -> list:
    """Subspaces of Q^d whose union is {x : (c1, a x) == (c2, b x)}; empty list if none."""
    if a.cols != b.cols or a.rows != g.components[c1] or b.rows != g.components[c2]:
        raise DimensionMismatch("equalizer: shapes do not match the space")
    if c1 == c2:
        return [kernel(a - b)]
    ab = vstack(a, b)
    return reduce_members(preimage(ab, r) for r in g.relations(c1, c2))


def agreement_subspace(g: GluedSpace, c1: int, f1: Matrix, c2: int, f2: Matrix):
    """{(x, y) : (c1, f1 x) == (c2, f2 y)} as a list of subspaces (empty list = no such pair)."""
    a = hstack(f1, zeros(f1.rows, f2.cols))
    b = hstack(zeros(f2.rows, f1.cols), f2)
    return equalizer(g, c1, a, c2, b)


def agrees_everywhere(g: GluedSpace, c1: int, a: Matrix, c2: int, b: Matrix) -> bool:
    return any(s.is_full() for s in equalizer(g, c1, a, c2, b))


# --- morphisms ------------------------------------------------------------

@dataclass(frozen=True)
class GluedMorphism:
    source: GluedSpace
    target: GluedSpace
    assignment: tuple  # per source component: (target component, matrix)

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple((int(t), m) for t, m in self.assignment))

    def __call__(self, p: Point) -> Point:
        t, m = self.assignment[p.component]
        return Point(t, m.apply(p.vector))


def identity_morphism(g: GluedSpace) -> GluedMorphism:
    return GluedMorphism(g, g, tuple((i, identity(n)) for i, n in enumerate(g.components)))


def _check_shapes(m: GluedMorphism):
    if len(m.assignment) != m.source.size:
        raise DimensionMismatch("one assignment entry per source component required")
    for i, (t, f) in enumerate(m.assignment):
        if not (0 <= t < m.target.size):
            raise DimensionMismatch(f"component {i} targets missing component {t}")
        if f.shape != (m.target.components[t], m.source.components[i]):
            raise DimensionMismatch(
                f"component {i}: matrix {f.shape}, expected "
                f"{(m.target.components[t], m.source.components[i])}")


def morphism_check(m: GluedMorphism):
    """Raise if m is malformed or sends glued points apart."""
    _check_shapes(m)
    for (i, j), rels in m.source.gluings:
        ti, fi = m.assignment[i]
        tj, fj = m.assignment[j]
        ni = m.source.components[i]
        for r in rels:
            x = Matrix.from_columns([row[:ni] for row in r.basis], ni)
            y = Matrix.from_columns([row[ni:] for row in r.basis], m.source.components[j])
            if not agrees_everywhere(m.target, ti, fi @ x, tj, fj @ y):
                raise IncompatibleGluing(f"glued points of components {i} and {j} are sent apart")


def morphism_validate(m: GluedMorphism) -> bool:
    try:
        morphism_check(m)
    except (DimensionMismatch, IncompatibleGluing):
        return False
    return True


def morphism_compose(m2: GluedMorphism, m1: GluedMorphism) -> GluedMorphism:
    """m2 after m1."""
    if m1.target != m2.source:
        raise DimensionMismatch("composition mismatch: target of m1 is not the source of m2")
    out = []
    for t1, f1 in m1.assignment:
        t2, f2 = m2.assignment[t1]
        out.append((t2, f2 @ f1))
    return GluedMorphism(m1.source, m2.target, tuple(out))


def morphism_equal(m: GluedMorphism, n: GluedMorphism) -> bool:
    if m.source != n.source or m.target != n.target:
        return False
    return all(agrees_everywhere(m.target, t1, f1, t2, f2)
               for (t1, f1), (t2, f2) in zip(m.assignment, n.assignment))


def is_mono(m: GluedMorphism) -> bool:
    """Distinct points have distinct images."""
    for i, (ti, fi) in enumerate(m.assignment):
        if rank(fi) != fi.cols:
            return False
        for j in range(i + 1, m.source.size):
            tj, fj = m.assignment[j]
            src = m.source.relations(i, j)
            for s in agreement_subspace(m.target, ti, fi, tj, fj):
                if not covered(src, s):
                    return False
    return True


def is_epi(m: GluedMorphism) -> bool:
    """Every target component is the full image of some source component."""
    for e, n in enumerate(m.target.components):
        if not any(t == e and rank(f) == n for t, f in m.assignment):
            return False
    return True


def is_iso(m: GluedMorphism) -> bool:
    return is_mono(m) and is_epi(m)


# --- subobjects and factorization ----------------------------------------

class Subobject(NamedTuple):
    space: GluedSpace
    mono: GluedMorphism
    maps: list  # per piece: (component of space, matrix from piece coordinates)


def subobject_from_pieces(x: GluedSpace, pieces: Sequence) -> Subobject:
    """Subobject of x whose points are the union of the given pieces.

    Each piece is (component c, injective matrix P); it contributes the
    subspace col(P) of component c, with coordinates given by P.
    """
    dims = [p.cols for _, p in pieces]
    rels = {}
    for k in range(len(pieces)):
        ck, pk = pieces[k]
        for l in range(k + 1, len(pieces)):
            cl, pl = pieces[l]
            ms = agreement_subspace(x, ck, pk, cl, pl)
            if ms:
                rels[(k, l)] = ms
    nf = normalize_map(make_space(dims, rels))
    mono = GluedMorphism(nf.space, x, tuple(pieces[orig] for orig in nf.kept))
    return Subobject(nf.space, mono, nf.maps)


def factor(m: GluedMorphism):
    """Image factorization m = mo . e with e epi and mo mono; returns (e, image, mo)."""
    pieces = []
    for t, f in m.assignment:
        pieces.append((t, column_space(f).basis_matrix()))
    sub = subobject_from_pieces(m.target, pieces)
    e = []
    for i, (t, f) in enumerate(m.assignment):
        coords = solve(pieces[i][1], f)
        k, phi = sub.maps[i]
        e.append((k, phi @ coords))
    return GluedMorphism(m.source, sub.space, tuple(e)), sub.space, sub.mono


def lift_through_mono(mono: GluedMorphism, comp: int, a: Matrix):
    """Find (k, Z) with mono . (k, Z) == (comp, a) pointwise, or None."""
    d = a.cols
    for k, (ck, pk) in enumerate(mono.assignment):
        for s in agreement_subspace(mono.target, comp, a, ck, pk):
            if relation_domain(s, d).is_full():
                return k, relation_matrix(s, d, pk.cols)
    return None


def factor_through_mono(m: GluedMorphism, mono: GluedMorphism) -> GluedMorphism | None:
    """The unique u with mono . u == m, when it exists."""
    out = []
    for t, f in m.assignment:
        lifted = lift_through_mono(mono, t, f)
        if lifted is None:
            return None
        out.append(lifted)
    return GluedMorphism(m.source, mono.source, tuple(out))


def _require_mono(m: GluedMorphism):
    if not is_mono(m):
        raise NotAMono("expected a mono")


def subobject_intersect(a: GluedMorphism, b: GluedMorphism) -> GluedMorphism:
    _require_mono(a)
    _require_mono(b)
    if a.target != b.target:
        raise DimensionMismatch("subobjects of different spaces")
    pieces = []
    for ta, fa in a.assignment:
        for tb, fb in b.assignment:
            for s in agreement_subspace(a.target, ta, fa, tb, fb):
                w = relation_domain(s, fa.cols)
                pieces.append((ta, fa @ w.basis_matrix()))
    return subobject_from_pieces(a.target, pieces).mono


def subobject_preimage(s: GluedMorphism, m: GluedMorphism) -> GluedMorphism:
    """Pullback of the subobject s of Y along m: X -> Y, as a subobject of X."""
    _require_mono(s)
    if s.target != m.target:
        raise DimensionMismatch("preimage: s and m have different codomains")
    pieces = []
    for i, (tm, fm) in enumerate(m.assignment):
        for ts, fs in s.assignment:
            for rel in agreement_subspace(m.target, tm, fm, ts, fs):
                w = relation_domain(rel, fm.cols)
                pieces.append((i, w.basis_matrix()))
    return subobject_from_pieces(m.source, pieces).mono


def point_set_equal(a: GluedMorphism, b: GluedMorphism) -> bool:
    """Two monos into the same space denote the same subobject."""
    return factor_through_mono(a, b) is not None and factor_through_mono(b, a) is not None


# --- isomorphism ----------------------------------------------------------

def glued_iso(g: GluedSpace, h: GluedSpace) -> GluedMorphism | None:
    """An isomorphism g -> h, or None.  Inputs need not be normalized."""
    from ._solve import find_isomorphism
    ng, nh = normalize_map(g), normalize_map(h)
    core = find_isomorphism(ng.space, nh.space)
    if core is None:
        return None
    if ng.space == g and nh.space == h:
        return core
    into = GluedMorphism(g, ng.space, tuple(ng.maps))
    back = GluedMorphism(nh.space, h, tuple((orig, identity(h.components[orig])) for orig in nh.kept))
    return morphism_compose(back, morphism_compose(core, into))
