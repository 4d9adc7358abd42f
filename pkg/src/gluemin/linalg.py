"""Exact linear algebra over the rationals.

Vectors are plain tuples of :class:`fractions.Fraction`.  Matrices carry their
shape explicitly so that ``n x 0`` and ``0 x n`` maps (needed for
zero-dimensional components) behave.  A :class:`Subspace` stores the reduced
row echelon basis of its row space, which makes equality structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch

Vector = tuple


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, float):
        raise TypeError("floats are not accepted; use int, str or Fraction")
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in entries)


def zero_vector(n: int) -> Vector:
    return (Fraction(0),) * n


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise DimensionMismatch(f"matrix data does not match shape {self.rows}x{self.cols}")

    @classmethod
    def of(cls, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = tuple(vector(r) for r in rows)
        if cols is None:
            if not data:
                raise DimensionMismatch("column count needed for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> "Matrix":
        cols = [vector(c) for c in columns]
        if any(len(c) != rows for c in cols):
            raise DimensionMismatch("column length mismatch")
        return cls(rows, len(cols), tuple(tuple(c[i] for c in cols) for i in range(rows)))

    def __iter__(self):
        return iter(self.data)

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self) -> "Matrix":
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)) if self.rows else ((),) * self.cols)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list:
        return [self.column(j) for j in range(self.cols)]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise DimensionMismatch(f"cannot apply {self.rows}x{self.cols} matrix to vector of length {len(v)}")
        return tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        ocols = other.columns()
        data = tuple(
            tuple(sum((a * b for a, b in zip(row, c)), Fraction(0)) for c in ocols)
            for row in self.data
        )
        return Matrix(self.rows, other.cols, data)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise DimensionMismatch("shape mismatch in addition")
        return Matrix(self.rows, self.cols, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix(self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.data))

    def tolist(self) -> list:
        return [list(r) for r in self.data]

    def __repr__(self):
        body = ", ".join("[" + ", ".join(str(x) for x in r) + "]" for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def identity(n: int) -> Matrix:
    return Matrix(n, n, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def zeros(rows: int, cols: int) -> Matrix:
    return Matrix(rows, cols, tuple((Fraction(0),) * cols for _ in range(rows)))


def column_matrix(v: Sequence) -> Matrix:
    return Matrix(len(v), 1, tuple((to_fraction(x),) for x in v))


def hstack(*ms: Matrix) -> Matrix:
    rows = ms[0].rows
    if any(m.rows != rows for m in ms):
        raise DimensionMismatch("hstack row mismatch")
    return Matrix(rows, sum(m.cols for m in ms),
                  tuple(sum((m.data[i] for m in ms), ()) for i in range(rows)))


def vstack(*ms: Matrix) -> Matrix:
    cols = ms[0].cols
    if any(m.cols != cols for m in ms):
        raise DimensionMismatch("vstack column mismatch")
    return Matrix(sum(m.rows for m in ms), cols, sum((m.data for m in ms), ()))


def block_diag(*ms: Matrix) -> Matrix:
    total = sum(m.cols for m in ms)
    data = []
    offset = 0
    for m in ms:
        pad_l = (Fraction(0),) * offset
        pad_r = (Fraction(0),) * (total - offset - m.cols)
        data.extend(pad_l + r + pad_r for r in m.data)
        offset += m.cols
    return Matrix(len(data), total, tuple(data))


# --- row reduction -------------------------------------------------------

def _reduce(rows: list, ncols: int):
    """In-place Gauss-Jordan on a list of lists; returns (nonzero rows, pivots)."""
    rows = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        lead = rows[r][c]
        if lead != 1:
            rows[r] = [x / lead for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return [tuple(x) for x in rows[:r]], pivots


def rref(m: Matrix) -> Matrix:
    """Reduced row echelon form, zero rows moved to the bottom."""
    nz, _ = _reduce(m.data, m.cols)
    return Matrix(m.rows, m.cols, tuple(nz) + tuple((Fraction(0),) * m.cols for _ in range(m.rows - len(nz))))


def rank(m: Matrix) -> int:
    return len(_reduce(m.data, m.cols)[1])


def solve(a: Matrix, b: Matrix) -> Matrix | None:
    """Some X with ``a @ X == b``, or None when the system is inconsistent."""
    if a.rows != b.rows:
        raise DimensionMismatch("solve: row mismatch")
    aug = [ra + rb for ra, rb in zip(a.data, b.data)]
    nz, pivots = _reduce(aug, a.cols + b.cols)
    if pivots and pivots[-1] >= a.cols:
        return None
    x = [[Fraction(0)] * b.cols for _ in range(a.cols)]
    for row, p in zip(nz, pivots):
        x[p] = list(row[a.cols:])
    return Matrix(a.cols, b.cols, tuple(tuple(r) for r in x))


def inverse(a: Matrix) -> Matrix | None:
    if a.rows != a.cols:
        return None
    x = solve(a, identity(a.rows))
    if x is None or rank(a) != a.rows:
        return None
    return x


def is_invertible(a: Matrix) -> bool:
    return a.rows == a.cols and rank(a) == a.rows


# --- subspaces -----------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim, stored by its RREF basis."""

    ambient_dim: int
    basis: tuple

    @property
    def dim(self) -> int:
        return len(self.basis)

    rank = dim

    @property
    def pivots(self) -> tuple:
        return tuple(next(i for i, x in enumerate(b) if x != 0) for b in self.basis)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def is_zero(self) -> bool:
        return self.dim == 0

    def basis_matrix(self) -> Matrix:
        """Basis vectors as the columns of an ``ambient_dim x dim`` matrix."""
        return Matrix.from_columns(self.basis, self.ambient_dim)

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the RREF basis (v must lie in the subspace)."""
        return tuple(to_fraction(v[p]) for p in self.pivots)

    def sort_key(self):
        return (self.dim, self.basis)

    def __repr__(self):
        if not self.basis:
            return f"Subspace(Q^{self.ambient_dim}: {{0}})"
        vs = ", ".join("(" + ",".join(str(x) for x in b) + ")" for b in self.basis)
        return f"Subspace(Q^{self.ambient_dim}: span{{{vs}}})"


def span(vectors: Iterable[Sequence], ambient_dim: int) -> Subspace:
    vs = [vector(v) for v in vectors]
    for v in vs:
        if len(v) != ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in Q^{ambient_dim}")
    nz, _ = _reduce(vs, ambient_dim)
    return Subspace(ambient_dim, tuple(nz))


def zero_subspace(n: int) -> Subspace:
    return Subspace(n, ())


def full_space(n: int) -> Subspace:
    return Subspace(n, identity(n).data)


def _check_same(s: Subspace, t: Subspace):
    if s.ambient_dim != t.ambient_dim:
        raise DimensionMismatch(f"subspaces of Q^{s.ambient_dim} and Q^{t.ambient_dim}")


def residual(s: Subspace, v: Sequence) -> Vector:
    v = list(vector(v))
    if len(v) != s.ambient_dim:
        raise DimensionMismatch(f"vector of length {len(v)} against Q^{s.ambient_dim}")
    for b, p in zip(s.basis, s.pivots):
        c = v[p]
        if c != 0:
            v = [x - c * y for x, y in zip(v, b)]
    return tuple(v)


def contains(s: Subspace, v: Sequence) -> bool:
    return is_zero(residual(s, v))


def includes(s: Subspace, t: Subspace) -> bool:
    """True iff t is a subspace of s."""
    _check_same(s, t)
    if t.dim > s.dim:
        return False
    return all(contains(s, b) for b in t.basis)


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    _check_same(s, t)
    return span(s.basis + t.basis, s.ambient_dim)


def kernel(m: Matrix) -> Subspace:
    """Null space {x : m x = 0} as a subspace of Q^cols."""
    nz, pivots = _reduce(m.data, m.cols)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(nz, pivots):
            v[p] = -row[f]
        basis.append(v)
    return span(basis, m.cols)


def annihilator(s: Subspace) -> Matrix:
    """Rows spanning the linear functionals vanishing on s."""
    k = kernel(Matrix(s.dim, s.ambient_dim, s.basis))
    return Matrix(k.dim, s.ambient_dim, k.basis)


def intersect(s: Subspace, t: Subspace) -> Subspace:
    _check_same(s, t)
    return kernel(vstack(annihilator(s), annihilator(t)))


def image(m: Matrix, s: Subspace) -> Subspace:
    if m.cols != s.ambient_dim:
        raise DimensionMismatch(f"image of Q^{s.ambient_dim} subspace under {m.shape} matrix")
    return span((m.apply(b) for b in s.basis), m.rows)


def column_space(m: Matrix) -> Subspace:
    return span(m.columns(), m.rows)


def preimage(m: Matrix, s: Subspace) -> Subspace:
    if m.rows != s.ambient_dim:
        raise DimensionMismatch(f"preimage of Q^{s.ambient_dim} subspace under {m.shape} matrix")
    return kernel(annihilator(s) @ m)


def product_subspace(s: Subspace, t: Subspace) -> Subspace:
    zs, zt = zero_vector(t.ambient_dim), zero_vector(s.ambient_dim)
    return span([b + zs for b in s.basis] + [zt + c for c in t.basis], s.ambient_dim + t.ambient_dim)


def complement_basis(s: Subspace) -> list:
    """Standard basis vectors on the non-pivot coordinates; they extend s to the whole space."""
    piv = set(s.pivots)
    out = []
    for k in range(s.ambient_dim):
        if k not in piv:
            e = [Fraction(0)] * s.ambient_dim
            e[k] = Fraction(1)
            out.append(tuple(e))
    return out


def project(s: Subspace, coords: Sequence[int]) -> Subspace:
    """Image of s under the coordinate projection onto ``coords``."""
    return span((tuple(b[i] for i in coords) for b in s.basis), len(coords))


def split_projection(s: Subspace, n: int) -> Subspace:
    """Projection of a subspace of Q^(n+m) onto its first n coordinates."""
    return project(s, range(n))


def quotient_maps(n: int, sub: Subspace):
    """Section ``C`` (n x q) and projection ``P`` (q x n) for Q^n / sub.

    ``P @ C`` is the identity and ``P`` vanishes exactly on ``sub``.
    """
    comp = complement_basis(sub)
    c = Matrix.from_columns(comp, n)
    full = Matrix.from_columns(comp + list(sub.basis), n)
    inv = inverse(full)
    p = Matrix(len(comp), n, inv.data[:len(comp)])
    return c, p
