"""Weighted automata over Q (automata in the category of vector spaces).

A state is a column vector; ``transitions[a]`` acts by left multiplication,
so reading ``a1 ... an`` applies ``M_a1`` first.  The final functional is a
row vector.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import DimensionMismatch, ProfileMismatch, UnknownSymbol
from .linalg import (
    Matrix, block_diag, column_matrix, contains, inverse, solve, span, vector,
)


@dataclass(frozen=True)
class WFA:
    alphabet: tuple
    dim: int
    initial: tuple
    final: tuple
    transitions: Mapping[str, Matrix]

    def __post_init__(self):
        if not self.alphabet or len(set(self.alphabet)) != len(self.alphabet):
            raise ValueError("alphabet must be nonempty with distinct symbols")
        if len(self.initial) != self.dim or len(self.final) != self.dim:
            raise DimensionMismatch("initial/final vectors must have length dim")
        if set(self.transitions) != set(self.alphabet):
            raise ValueError("one transition matrix per symbol required")
        for a, m in self.transitions.items():
            if m.shape != (self.dim, self.dim):
                raise DimensionMismatch(f"transition {a!r} is {m.shape}, expected {self.dim}x{self.dim}")

    @classmethod
    def build(cls, alphabet, initial, final, transitions) -> "WFA":
        initial = vector(initial)
        n = len(initial)
        trans = {a: (m if isinstance(m, Matrix) else Matrix.of(m, cols=n)) for a, m in transitions.items()}
        return cls(tuple(alphabet), n, initial, vector(final), trans)

    def __hash__(self):
        return hash((self.alphabet, self.dim, self.initial, self.final,
                     tuple(self.transitions[a] for a in self.alphabet)))


def _check_word(a: WFA, word):
    for s in word:
        if s not in a.transitions:
            raise UnknownSymbol(s)


def run(a: WFA, word) -> tuple:
    """State vector reached after reading ``word``."""
    _check_word(a, word)
    x = a.initial
    for s in word:
        x = a.transitions[s].apply(x)
    return x


def wfa_eval(a: WFA, word) -> Fraction:
    x = run(a, word)
    return sum((f * v for f, v in zip(a.final, x)), Fraction(0))


def _closure(seeds, step, n):
    """FIFO worklist span closure; returns list of independent vectors in insertion order."""
    basis: list = []
    sub = span([], n)
    queue = deque(seeds)
    while queue:
        v = queue.popleft()
        if contains(sub, v):
            continue
        basis.append(v)
        sub = span(basis, n)
        for w in step(v):
            queue.append(w)
    return basis


def reachable_basis(a: WFA) -> list:
    return _closure([a.initial], lambda v: [a.transitions[s].apply(v) for s in a.alphabet], a.dim)


def forward_reduce(a: WFA) -> WFA:
    """Restrict to the span of the reachable vectors."""
    basis = reachable_basis(a)
    p = Matrix.from_columns(basis, a.dim)
    k = len(basis)

    def coords(m):
        return solve(p, m)

    trans = {s: coords(a.transitions[s] @ p) for s in a.alphabet}
    init = coords(column_matrix(a.initial)).column(0) if k else ()
    fin = (Matrix(1, a.dim, (a.final,)) @ p).data[0] if k else ()
    return WFA(a.alphabet, k, init, fin, trans)


def backward_reduce(a: WFA) -> WFA:
    """Quotient by the common kernel of the functionals f M_w."""
    def step(r):
        row = Matrix(1, a.dim, (r,))
        return [(row @ a.transitions[s]).data[0] for s in a.alphabet]

    rows = _closure([a.final], step, a.dim)
    q = Matrix(len(rows), a.dim, tuple(rows))
    k = len(rows)
    trans = {}
    for s in a.alphabet:
        # find T with q M = T q, i.e. (q M)^T = q^T T^T
        t = solve(q.T, (q @ a.transitions[s]).T)
        trans[s] = t.T
    init = q.apply(a.initial)
    fin = solve(q.T, column_matrix(a.final)).column(0) if k else ()
    return WFA(a.alphabet, k, init, fin, trans)


def wfa_minimize(a: WFA) -> WFA:
    return backward_reduce(forward_reduce(a))


def direct_sum(a: WFA, b: WFA, sign: int = 1) -> WFA:
    if a.alphabet != b.alphabet and set(a.alphabet) != set(b.alphabet):
        raise ProfileMismatch("alphabets differ")
    trans = {s: block_diag(a.transitions[s], b.transitions[s]) for s in a.alphabet}
    init = a.initial + tuple(sign * x for x in b.initial)
    return WFA(a.alphabet, a.dim + b.dim, init, a.final + b.final, trans)


def wfa_equiv(a: WFA, b: WFA) -> bool:
    """Decide equality of the two weighted languages.

    The automaton on the direct sum with initial vector (i_a, -i_b) computes
    the difference of the two languages; it is zero iff the final functional
    vanishes on the reachable span.
    """
    if set(a.alphabet) != set(b.alphabet):
        raise ProfileMismatch("alphabets differ")
    d = direct_sum(a, b, sign=-1)
    for v in reachable_basis(d):
        if sum((f * x for f, x in zip(d.final, v)), Fraction(0)) != 0:
            return False
    return True


def change_basis(a: WFA, p: Matrix) -> WFA:
    """Conjugate by an invertible matrix: new state = p^-1 old state."""
    pinv = inverse(p)
    if pinv is None:
        raise ValueError("change of basis must be invertible")
    trans = {s: pinv @ a.transitions[s] @ p for s in a.alphabet}
    return WFA(a.alphabet, a.dim, pinv.apply(a.initial),
               (Matrix(1, a.dim, (a.final,)) @ p).data[0], trans)

