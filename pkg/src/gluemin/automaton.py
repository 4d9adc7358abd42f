"""Hybrid set-vector automata: automata whose state object is a glued space.

Two profiles fix the input and output objects:

* ``"weighted"``: I = F = Q.  The initial point is the image of 1, the final
  morphism lands in the one-component space ``Q``.
* ``"set:k"``: I is a single point and F a set of k points (k zero-dimensional
  components).  :func:`import_dfa` produces these with k = 2.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import DimensionMismatch, InvalidAutomaton, ProfileMismatch, UnknownSymbol
from .families import covered, reduce_members
from .glued import (
    GluedMorphism, GluedSpace, Point, check_point, embed_set, embed_vec,
    factor_through_mono, lift_through_mono, make_space,
    morphism_check, morphism_compose, morphism_equal, normalize, normalize_map, point_eq,
    relation_domain, subobject_from_pieces,
)
from .linalg import (
    Matrix, Subspace, block_diag, column_matrix, full_space, hstack, image, intersect,
    kernel, preimage, project, quotient_maps, span, subspace_sum, zero_subspace, zeros,
)
from .wfa import WFA

DEFAULT_BUDGET = 8


def output_object(profile: str) -> GluedSpace:
    if profile == "weighted":
        return embed_vec(1)
    if profile.startswith("set:"):
        return embed_set(int(profile[4:]))
    raise ProfileMismatch(f"unknown profile {profile!r}")


@dataclass(frozen=True)
class GluedAutomaton:
    alphabet: tuple
    profile: str
    states: GluedSpace
    initial: Point
    final: GluedMorphism
    transitions: Mapping[str, GluedMorphism]

    def __hash__(self):
        return hash((self.alphabet, self.profile, self.states, self.initial))

    @property
    def output(self) -> GluedSpace:
        return output_object(self.profile)

    def delta(self, a: str) -> GluedMorphism:
        try:
            return self.transitions[a]
        except KeyError:
            raise UnknownSymbol(a) from None


@dataclass(frozen=True)
class ReachResult:
    automaton: GluedAutomaton
    embedding: GluedMorphism
    exact: bool
    families: tuple = ()   # per component of the input: reached subspaces


@dataclass(frozen=True)
class ObsResult:
    automaton: GluedAutomaton
    projection: GluedMorphism
    rounds: int = 0


# --- validity and evaluation ----------------------------------------------

def auto_check(a: GluedAutomaton):
    """Raise InvalidAutomaton naming the first failing constituent."""
    if set(a.transitions) != set(a.alphabet):
        raise InvalidAutomaton("transitions must cover the alphabet exactly")
    try:
        out = a.output
    except ProfileMismatch as exc:
        raise InvalidAutomaton(str(exc)) from None
    if normalize(a.states) != a.states:
        raise InvalidAutomaton("state space is not normalized")
    try:
        check_point(a.states, a.initial)
    except DimensionMismatch as exc:
        raise InvalidAutomaton(f"initial point: {exc}") from None
    if a.profile != "weighted" and any(a.initial.vector):
        raise InvalidAutomaton("initial point of a set-profile automaton must be an origin")
    for name, m in [("final", a.final)] + [(f"transition {s!r}", a.transitions[s]) for s in a.alphabet]:
        tgt = out if name == "final" else a.states
        if m.source != a.states or m.target != tgt:
            raise InvalidAutomaton(f"{name}: wrong source or target space")
        try:
            morphism_check(m)
        except Exception as exc:
            raise InvalidAutomaton(f"{name}: {exc}") from None


def auto_validate(a: GluedAutomaton) -> bool:
    try:
        auto_check(a)
    except InvalidAutomaton:
        return False
    return True


def run(a: GluedAutomaton, word) -> Point:
    p = a.initial
    for s in word:
        p = a.delta(s)(p)
    return p


def auto_eval(a: GluedAutomaton, word):
    """Output on ``word``: a Fraction (weighted) or output point index (set profile)."""
    q = a.final(run(a, word))
    if a.profile == "weighted":
        return q.vector[0]
    return q.component


def initial_matrix(a: GluedAutomaton) -> Matrix:
    """The initial morphism I -> states as a matrix into the initial component."""
    if a.profile == "weighted":
        return column_matrix(a.initial.vector)
    return zeros(len(a.initial.vector), 0)


# --- conversions ------------------------------------------------------------

def from_wfa(w: WFA) -> GluedAutomaton:
    """A WFA as a single-component weighted glued automaton."""
    states = embed_vec(w.dim)
    out = embed_vec(1)
    final = GluedMorphism(states, out, ((0, Matrix(1, w.dim, (w.final,))),))
    trans = {s: GluedMorphism(states, states, ((0, w.transitions[s]),)) for s in w.alphabet}
    return GluedAutomaton(w.alphabet, "weighted", states, Point(0, w.initial), final, trans)


def linearize(a: GluedAutomaton) -> WFA:
    """Block direct-sum WFA computing the same weighted language."""
    if a.profile != "weighted":
        raise ProfileMismatch("linearize needs the weighted profile")
    dims = a.states.components
    offs = [sum(dims[:i]) for i in range(len(dims))]
    n = sum(dims)
    trans = {}
    for s in a.alphabet:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, (t, f) in enumerate(a.delta(s).assignment):
            for r in range(f.rows):
                for c in range(f.cols):
                    rows[offs[t] + r][offs[i] + c] = f.data[r][c]
        trans[s] = Matrix(n, n, tuple(tuple(r) for r in rows))
    init = [Fraction(0)] * n
    c0 = a.initial.component
    init[offs[c0]:offs[c0] + dims[c0]] = a.initial.vector
    fin = []
    for i, (_, f) in enumerate(a.final.assignment):
        fin.extend(f.data[0])
    return WFA(a.alphabet, n, tuple(init), tuple(fin), trans)


def import_dfa(states: int, init: int, table, accepting, alphabet=None) -> GluedAutomaton:
    """DFA as a set-profile automaton with zero-dimensional components.

    ``table[q][a]`` is the successor of q on a (dict per state, or a list
    indexed like ``alphabet``).
    """
    if alphabet is None:
        alphabet = tuple(sorted(table[0])) if isinstance(table[0], Mapping) else None
    if alphabet is None:
        raise InvalidAutomaton("alphabet required when table rows are lists")
    alphabet = tuple(alphabet)
    if len(table) != states or not (0 <= init < states):
        raise InvalidAutomaton("malformed DFA table")
    sp = embed_set(states)
    empty = Matrix(0, 0, ())
    trans = {}
    for k, a in enumerate(alphabet):
        assign = []
        for q in range(states):
            row = table[q]
            nxt = row[a] if isinstance(row, Mapping) else row[k]
            if not (0 <= nxt < states):
                raise InvalidAutomaton(f"transition from {q} on {a!r} leaves the state set")
            assign.append((nxt, empty))
        trans[a] = GluedMorphism(sp, sp, tuple(assign))
    acc = set(accepting)
    final = GluedMorphism(sp, embed_set(2), tuple((int(q in acc), empty) for q in range(states)))
    return GluedAutomaton(alphabet, "set:2", sp, Point(init, ()), final, trans)


def import_duvs(indices: Sequence[str], dims: Sequence[int], initial, final, transitions,
                alphabet=None) -> GluedAutomaton:
    """Disjoint union of vector spaces automaton, one unglued component per index.

    ``initial`` is (index, vector); ``final[index]`` a row vector;
    ``transitions[a][index]`` is (target index, matrix).
    """
    pos = {name: k for k, name in enumerate(indices)}
    if len(pos) != len(indices) or len(dims) != len(indices):
        raise InvalidAutomaton("indices must be distinct and match dims")
    sp = make_space(dims)
    alphabet = tuple(alphabet or transitions.keys())
    trans = {}
    for a in alphabet:
        assign = []
        for name in indices:
            tgt, m = transitions[a][name]
            m = m if isinstance(m, Matrix) else Matrix.of(m, cols=dims[pos[name]])
            assign.append((pos[tgt], m))
        trans[a] = GluedMorphism(sp, sp, tuple(assign))
    fin = GluedMorphism(sp, embed_vec(1), tuple(
        (0, final[name] if isinstance(final[name], Matrix) else Matrix.of([final[name]], cols=dims[pos[name]]))
        for name in indices))
    idx, vec = initial
    a = GluedAutomaton(alphabet, "weighted", sp, Point(pos[idx], vec), fin, trans)
    auto_check(a)
    return a


# --- reach ------------------------------------------------------------------

def _restrict(a: GluedAutomaton, mono: GluedMorphism) -> GluedAutomaton:
    """Sub-automaton carried by a transition-closed subobject containing the initial point."""
    sub = mono.source
    trans = {}
    for s in a.alphabet:
        u = factor_through_mono(morphism_compose(a.delta(s), mono), mono)
        if u is None:
            raise InvalidAutomaton("subobject is not closed under transitions")
        trans[s] = u
    k, z = lift_through_mono(mono, a.initial.component, initial_matrix(a))
    init = Point(k, z.column(0) if a.profile == "weighted" else (Fraction(0),) * z.rows)
    return GluedAutomaton(a.alphabet, a.profile, sub, init, morphism_compose(a.final, mono), trans)


def reach(a: GluedAutomaton, budget: int = DEFAULT_BUDGET) -> ReachResult:
    """Smallest transition-closed finite subobject containing the initial point.

    Saturates per-component antichains of reached subspaces.  When a family
    grows past ``budget`` it is replaced by its sum and that component stays
    collapsed; the result is then an over-approximation (``exact=False``).
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    dims = a.states.components
    fams: list = [[] for _ in dims]
    collapsed: set = set()
    exact = True
    queue = deque()

    def is_covered(c, w):
        if covered(fams[c], w):
            return True
        for c2 in range(len(dims)):
            if c2 == c or not fams[c2]:
                continue
            for r in a.states.relations(c, c2):
                for m in fams[c2]:
                    pulled = relation_domain(intersect(r, _times_space(dims[c], m)), dims[c])
                    if covered([pulled], w):
                        return True
        return False

    def add(c, w):
        nonlocal exact
        if is_covered(c, w):
            return
        if c in collapsed:
            w = subspace_sum(fams[c][0], w)
            fams[c] = [w]
        else:
            fams[c] = reduce_members(fams[c] + [w])
            if len(fams[c]) > budget:
                w = zero_subspace(dims[c])
                for m in fams[c]:
                    w = subspace_sum(w, m)
                fams[c] = [w]
                collapsed.add(c)
                exact = False
        queue.append((c, w))

    c0 = a.initial.component
    add(c0, span(initial_matrix(a).columns(), dims[c0]) if a.profile == "weighted"
        else zero_subspace(dims[c0]))
    done: set = set()
    while queue:
        c, w = queue.popleft()
        if w not in fams[c] or (c, w) in done:
            continue
        done.add((c, w))
        for s in a.alphabet:
            t, f = a.delta(s).assignment[c]
            add(t, image(f, w))

    pieces = [(c, w.basis_matrix()) for c in range(len(dims)) for w in fams[c]]
    sub = subobject_from_pieces(a.states, pieces)
    return ReachResult(_restrict(a, sub.mono), sub.mono, exact, tuple(tuple(f) for f in fams))


def _times_space(n: int, m: Subspace) -> Subspace:
    """Q^n x m."""
    from .linalg import product_subspace
    return product_subspace(full_space(n), m)


# --- obs ----------------------------------------------------------------------

def _pair_space(k: dict, dims, i, j):
    """K_ij oriented with i first (None is the empty relation)."""
    if i <= j:
        return k[(i, j)]
    s = k[(j, i)]
    if s is None:
        return None
    return project(s, list(range(dims[j], dims[j] + dims[i])) + list(range(dims[j])))


def observational_relation(a: GluedAutomaton):
    """Greatest fixpoint K of pairs of configurations with equal behaviour.

    Returns (K, rounds) with K keyed by (i, j), i <= j, each value a subspace of
    Q^{n_i} x Q^{n_j} or None when no two configurations can agree.
    """
    out = a.output
    if out.gluings:
        raise ProfileMismatch("output objects with gluings are not supported")
    dims = a.states.components
    n = len(dims)
    k = {}
    for i in range(n):
        ti, fi = a.final.assignment[i]
        for j in range(i, n):
            tj, fj = a.final.assignment[j]
            if ti != tj:
                k[(i, j)] = None
            else:
                k[(i, j)] = kernel(hstack(fi, -fj))
    rounds = 0
    changed = True
    while changed:
        changed = False
        rounds += 1
        for (i, j), cur in k.items():
            if cur is None:
                continue
            new = cur
            for s in a.alphabet:
                ti, fi = a.delta(s).assignment[i]
                tj, fj = a.delta(s).assignment[j]
                tgt = _pair_space(k, dims, ti, tj)
                if tgt is None:
                    new = None
                    break
                new = intersect(new, preimage(block_diag(fi, fj), tgt))
            if new != cur:
                k[(i, j)] = new
                changed = True
    return k, rounds


def obs(a: GluedAutomaton) -> ObsResult:
    """Observational quotient: merge configurations with equal future behaviour."""
    dims = a.states.components
    n = len(dims)
    k, rounds = observational_relation(a)
    sections, projections, qdims = [], [], []
    for i in range(n):
        null = preimage(Matrix.from_columns(
            [tuple(int(r == c) for r in range(dims[i])) + (0,) * dims[i] for c in range(dims[i])],
            2 * dims[i]), k[(i, i)])
        c, p = quotient_maps(dims[i], null)
        sections.append(c)
        projections.append(p)
        qdims.append(c.cols)
    rels = {}
    for (i, j), s in k.items():
        if i == j or s is None:
            continue
        rels[(i, j)] = [image(block_diag(projections[i], projections[j]), s)]
    nf = normalize_map(make_space(qdims, rels))
    sp = nf.space

    def retarget(t, m):
        nt, phi = nf.maps[t]
        return nt, phi @ m

    proj = GluedMorphism(a.states, sp, tuple(retarget(i, projections[i]) for i in range(n)))
    trans = {}
    for s in a.alphabet:
        assign = []
        for orig in nf.kept:
            t, f = a.delta(s).assignment[orig]
            assign.append(retarget(t, projections[t] @ f @ sections[orig]))
        trans[s] = GluedMorphism(sp, sp, tuple(assign))
    final = GluedMorphism(sp, a.output, tuple(
        (a.final.assignment[orig][0], a.final.assignment[orig][1] @ sections[orig]) for orig in nf.kept))
    init = proj(a.initial)
    return ObsResult(GluedAutomaton(a.alphabet, a.profile, sp, init, final, trans), proj, rounds)


# --- minimization -------------------------------------------------------------

@dataclass(frozen=True)
class Minimization:
    automaton: GluedAutomaton
    exact: bool
    embedding: GluedMorphism     # mono: reach(a).states -> a.states
    projection: GluedMorphism    # epi: reach(a).states -> result.states


def minimize_report(a: GluedAutomaton, budget: int = DEFAULT_BUDGET) -> Minimization:
    r = reach(a, budget)
    o = obs(r.automaton)
    return Minimization(o.automaton, r.exact, r.embedding, o.projection)


def minimize(a: GluedAutomaton, budget: int = DEFAULT_BUDGET) -> GluedAutomaton:
    """obs(reach(a)); minimal for the language whenever reach is exact."""
    return minimize_report(a, budget).automaton


# --- isomorphism and equivalence ----------------------------------------------

def is_automaton_morphism(h: GluedMorphism, a: GluedAutomaton, b: GluedAutomaton) -> bool:
    if not point_eq(b.states, h(a.initial), b.initial):
        return False
    if not morphism_equal(morphism_compose(b.final, h), a.final):
        return False
    return all(morphism_equal(morphism_compose(h, a.delta(s)), morphism_compose(b.delta(s), h))
               for s in a.alphabet)


def auto_iso(a: GluedAutomaton, b: GluedAutomaton) -> GluedMorphism | None:
    """An isomorphism of automata a -> b, or None."""
    from ._solve import const, find_isomorphism, ltimes, pointwise, times
    if set(a.alphabet) != set(b.alphabet) or a.profile != b.profile:
        raise ProfileMismatch("automata have different alphabets or profiles")

    ia, ib = initial_matrix(a), initial_matrix(b)

    def extra(p, nvars):
        out = []
        c0 = a.initial.component
        out.append(pointwise(b.states, p.assign[c0], times(p.vars[c0], ia),
                             b.initial.component, const(ib), nvars))
        for c in range(a.states.size):
            tf, ff = a.final.assignment[c]
            tf2, ff2 = b.final.assignment[p.assign[c]]
            out.append(pointwise(a.output, tf, const(ff), tf2, ltimes(ff2, p.vars[c]), nvars))
            for s in a.alphabet:
                t, f = a.delta(s).assignment[c]
                t2, f2 = b.delta(s).assignment[p.assign[c]]
                out.append(pointwise(b.states, p.assign[t], times(p.vars[t], f),
                                     t2, ltimes(f2, p.vars[c]), nvars))
        return out

    return find_isomorphism(a.states, b.states, extra=extra,
                            accept_extra=lambda h: is_automaton_morphism(h, a, b))


def auto_equiv(a: GluedAutomaton, b: GluedAutomaton) -> bool:
    """Language equality."""
    from .wfa import wfa_equiv
    if set(a.alphabet) != set(b.alphabet) or a.profile != b.profile:
        raise ProfileMismatch("automata have different alphabets or profiles")
    if a.profile == "weighted":
        return wfa_equiv(linearize(a), linearize(b))
    # set profile: outputs only depend on the component, so explore component pairs
    start = (a.initial.component, b.initial.component)
    seen = {start}
    queue = deque([start])
    while queue:
        p, q = queue.popleft()
        if a.final.assignment[p][0] != b.final.assignment[q][0]:
            return False
        for s in a.alphabet:
            nxt = (a.delta(s).assignment[p][0], b.delta(s).assignment[q][0])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


# --- classical oracle -----------------------------------------------------------

def moore_refine(a: GluedAutomaton) -> list:
    """Moore partition refinement on a set-profile automaton, blocks as sorted lists."""
    if a.profile == "weighted":
        raise ProfileMismatch("moore_refine needs a set-profile automaton")
    n = a.states.size
    label = [a.final.assignment[q][0] for q in range(n)]
    while True:
        sig = [(label[q],) + tuple(label[a.delta(s).assignment[q][0]] for s in a.alphabet)
               for q in range(n)]
        ids: dict = {}
        new = [ids.setdefault(x, len(ids)) for x in sig]
        if len(ids) == len(set(label)):
            break
        label = new
    blocks: dict = {}
    for q in range(n):
        blocks.setdefault(label[q], []).append(q)
    return sorted(blocks.values())


def stats(a: GluedAutomaton) -> dict:
    return {
        "components": a.states.size,
        "dims": list(a.states.components),
        "total_dim": a.states.total_dim,
        "gluings": a.states.gluing_count(),
    }
