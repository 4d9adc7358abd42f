"""Search for glued morphisms satisfying pointwise equations.

An unknown morphism fixes a component assignment and leaves the matrix
entries as unknowns.  A pointwise equation ``(c1, E1 x) == (c2, E2 x)`` for
all x is linear when c1 == c2.  Otherwise it says the columns of ``[E1; E2]``
lie in one of the gluing relations between c1 and c2 -- a disjunction of
linear systems, explored depth first.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product

from .glued import (
    GluedMorphism, GluedSpace, morphism_compose, morphism_equal, morphism_validate,
)
from .linalg import Matrix, _reduce, annihilator, inverse, is_invertible

CONST = -1


class Unknowns:
    def __init__(self):
        self.n = 0

    def matrix(self, rows: int, cols: int) -> list:
        out = []
        for _ in range(rows):
            out.append([{self.n + j: Fraction(1)} for j in range(cols)])
            self.n += cols
        return out


def const(m: Matrix) -> list:
    return [[{CONST: x} if x else {} for x in row] for row in m.data]


def _axpy(acc: dict, c, e: dict):
    for k, v in e.items():
        acc[k] = acc.get(k, 0) + c * v


def times(e: list, m: Matrix) -> list:
    """Expression matrix times constant matrix."""
    out = []
    for row in e:
        new = []
        for j in range(m.cols):
            acc: dict = {}
            for k, ek in enumerate(row):
                c = m.data[k][j]
                if c:
                    _axpy(acc, c, ek)
            new.append(acc)
        out.append(new)
    return out


def ltimes(m: Matrix, e: list) -> list:
    """Constant matrix times expression matrix."""
    cols = len(e[0]) if e else 0
    out = []
    for i in range(m.rows):
        new = []
        for j in range(cols):
            acc: dict = {}
            for k in range(m.cols):
                c = m.data[i][k]
                if c:
                    _axpy(acc, c, e[k][j])
            new.append(acc)
        out.append(new)
    return out


def _row(e: dict, nvars: int) -> list:
    r = [Fraction(0)] * (nvars + 1)
    for k, v in e.items():
        if k == CONST:
            r[nvars] -= v
        else:
            r[k] += v
    return r


def eq_rows(e1: list, e2: list, nvars: int) -> list:
    rows = []
    for r1, r2 in zip(e1, e2):
        for a, b in zip(r1, r2):
            d = dict(a)
            _axpy(d, -1, b)
            rows.append(_row(d, nvars))
    return rows


def subspace_rows(e: list, sub, nvars: int) -> list:
    """Every column of the expression matrix lies in ``sub``."""
    ann = annihilator(sub)
    return eq_rows(ltimes(ann, e), [[{}] * (len(e[0]) if e else 0) for _ in range(ann.rows)], nvars)


def pointwise(space: GluedSpace, c1: int, e1: list, c2: int, e2: list, nvars: int, same_dim=None):
    """Alternatives (lists of equation rows) for (c1, e1 x) == (c2, e2 x)."""
    if c1 == c2:
        return [eq_rows(e1, e2, nvars)]
    alts = []
    for r in space.relations(c1, c2):
        if same_dim is not None and r.dim != same_dim:
            continue
        alts.append(subspace_rows(e1 + e2, r, nvars))
    return alts


def _consistent(rows, nvars):
    nz, piv = _reduce(rows, nvars + 1)
    return (not piv or piv[-1] < nvars), nz, piv


def solve_disjunctions(nvars: int, disjunctions: list):
    """Yield (particular, null basis) for every consistent choice of alternatives."""
    disjunctions = sorted(disjunctions, key=len)
    if any(len(d) == 0 for d in disjunctions):
        return

    def rec(k, rows):
        if k == len(disjunctions):
            yield rows
            return
        for alt in disjunctions[k]:
            ok, nz, _ = _consistent(rows + alt, nvars)
            if ok:
                yield from rec(k + 1, nz)

    for rows in rec(0, []):
        nz, piv = _reduce(rows, nvars + 1)
        part = [Fraction(0)] * nvars
        for r, p in zip(nz, piv):
            part[p] = r[nvars]
        free = [c for c in range(nvars) if c not in piv]
        null = []
        for f in free:
            v = [Fraction(0)] * nvars
            v[f] = Fraction(1)
            for r, p in zip(nz, piv):
                v[p] = -r[f]
            null.append(v)
        yield part, null


def _instantiate(values, shapes, offsets):
    mats = []
    for (r, c), off in zip(shapes, offsets):
        mats.append(Matrix(r, c, tuple(tuple(values[off + i * c + j] for j in range(c)) for i in range(r))))
    return mats


def _samples(part, null, rng, tries):
    if not null:
        yield part
        return
    yield part
    for _ in range(tries):
        v = list(part)
        for nb in null:
            c = rng.randint(-40, 40)
            if c:
                v = [a + c * b for a, b in zip(v, nb)]
        yield v


class MorphismProblem:
    """Unknown morphism source -> target with a fixed component assignment."""

    def __init__(self, source: GluedSpace, target: GluedSpace, assignment, unknowns=None):
        self.source, self.target, self.assign = source, target, list(assignment)
        self.unknowns = unknowns or Unknowns()
        self.start = self.unknowns.n
        self.shapes = [(target.components[t], source.components[i]) for i, t in enumerate(self.assign)]
        self.offsets = []
        self.vars = []
        for r, c in self.shapes:
            self.offsets.append(self.unknowns.n)
            self.vars.append(self.unknowns.matrix(r, c))

    def validity(self, nvars, same_dim=False):
        """Disjunctions expressing compatibility with the source gluings."""
        out = []
        for (i, j), rels in self.source.gluings:
            ni = self.source.components[i]
            for r in rels:
                x = Matrix.from_columns([row[:ni] for row in r.basis], ni)
                y = Matrix.from_columns([row[ni:] for row in r.basis], self.source.components[j])
                out.append(pointwise(self.target, self.assign[i], times(self.vars[i], x),
                                     self.assign[j], times(self.vars[j], y), nvars,
                                     same_dim=r.dim if same_dim else None))
        return out

    def build(self, values) -> GluedMorphism:
        mats = _instantiate(values, self.shapes, self.offsets)
        return GluedMorphism(self.source, self.target, tuple(zip(self.assign, mats)))


def search(problems, disjunctions_for, accept, rng=None, tries=12, first=True):
    """Generic driver.

    ``problems`` yields lists of MorphismProblem sharing one Unknowns pool;
    ``disjunctions_for(problems)`` returns the constraint disjunctions;
    ``accept(morphisms)`` is the exact final check.  Returns the first
    accepted tuple of morphisms, or with ``first=False`` a list of
    (morphisms, nullity) for every consistent branch.
    """
    rng = rng or random.Random(0)
    found = []
    for probs in problems:
        nvars = probs[0].unknowns.n
        disj = disjunctions_for(probs, nvars)
        for part, null in solve_disjunctions(nvars, disj):
            for vals in _samples(part, null, rng, tries):
                ms = tuple(p.build(vals) for p in probs)
                if accept(ms):
                    if first:
                        return ms
                    found.append((ms, len(null)))
                    break
    return None if first else found


def _bijections(g: GluedSpace, h: GluedSpace):
    if sorted(g.components) != sorted(h.components) or g.gluing_count() != h.gluing_count():
        return
    for perm in permutations(range(h.size)):
        if all(g.components[i] == h.components[perm[i]] for i in range(g.size)):
            yield perm


def _inverse_of(m: GluedMorphism) -> GluedMorphism | None:
    inv = [None] * m.target.size
    for i, (t, f) in enumerate(m.assignment):
        fi = inverse(f)
        if fi is None or inv[t] is not None:
            return None
        inv[t] = (i, fi)
    if any(x is None for x in inv):
        return None
    return GluedMorphism(m.target, m.source, tuple(inv))


def invertible_pair(m: GluedMorphism) -> GluedMorphism | None:
    """The inverse morphism when m is a componentwise-invertible iso."""
    if not all(is_invertible(f) for _, f in m.assignment):
        return None
    inv = _inverse_of(m)
    if inv is None or not morphism_validate(m) or not morphism_validate(inv):
        return None
    return inv


def find_isomorphism(g: GluedSpace, h: GluedSpace, extra=None, accept_extra=None, rng=None):
    """Iso g -> h; ``extra(problem, nvars)`` adds constraints, ``accept_extra(iso)`` checks them."""
    if g.size != h.size:
        return None

    def problems():
        for perm in _bijections(g, h):
            yield [MorphismProblem(g, h, perm)]

    def disj(probs, nvars):
        p = probs[0]
        out = p.validity(nvars, same_dim=True)
        if extra is not None:
            out += extra(p, nvars)
        return out

    def accept(ms):
        m = ms[0]
        if invertible_pair(m) is None:
            return False
        return accept_extra is None or accept_extra(m)

    res = search(problems(), disj, accept, rng=rng)
    return res[0] if res else None


def find_diagonals(e: GluedMorphism, f: GluedMorphism, m: GluedMorphism, g: GluedMorphism):
    """All u: T -> S with u.e == f and m.u == g for the square g.e == m.f.

    Returns a list of (u, nullity) over consistent branches; a unique
    diagonal shows up as branches with nullity 0 that are all equal.
    """
    t_space, s_space = e.target, f.target

    def problems():
        for assign in product(range(s_space.size), repeat=t_space.size):
            yield [MorphismProblem(t_space, s_space, assign)]

    def disj(probs, nvars):
        p = probs[0]
        out = p.validity(nvars)
        for d, (te, fe) in enumerate(e.assignment):
            tf, ff = f.assignment[d]
            out.append(pointwise(s_space, p.assign[te], times(p.vars[te], fe), tf, const(ff), nvars))
        for c in range(t_space.size):
            tm, fm = m.assignment[p.assign[c]]
            tg, fg = g.assignment[c]
            out.append(pointwise(m.target, tm, ltimes(fm, p.vars[c]), tg, const(fg), nvars))
        return out

    def accept(ms):
        u = ms[0]
        return (morphism_validate(u) and morphism_equal(morphism_compose(u, e), f)
                and morphism_equal(morphism_compose(m, u), g))

    return search(problems(), disj, accept, first=False)
