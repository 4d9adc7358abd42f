"""Finite unions of subspaces kept in antichain normal form.

Over an infinite field a subspace contained in a finite union of subspaces is
contained in one of them.  Every containment test below relies on that fact,
which is what makes antichain covers canonical.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .linalg import Subspace, includes, span, subspace_sum, zero_subspace


@dataclass(frozen=True)
class SubspaceFamily:
    ambient_dim: int
    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)

    def contains_point(self, v: Sequence) -> bool:
        s = span([v], self.ambient_dim)
        return any(includes(m, s) for m in self.members)


def reduce_members(members: Iterable[Subspace]) -> list:
    """Drop members included in another member; canonical order."""
    uniq = sorted(set(members), key=lambda s: s.sort_key(), reverse=True)
    kept = []
    for s in uniq:
        if not any(includes(k, s) for k in kept):
            kept.append(s)
    return sorted(kept, key=lambda s: s.sort_key())


def antichain_reduce(members: Iterable[Subspace], ambient_dim: int | None = None) -> SubspaceFamily:
    members = list(members)
    if ambient_dim is None:
        if not members:
            raise DimensionMismatch("ambient dimension needed for an empty family")
        ambient_dim = members[0].ambient_dim
    if any(m.ambient_dim != ambient_dim for m in members):
        raise DimensionMismatch("family members live in different ambient spaces")
    return SubspaceFamily(ambient_dim, tuple(reduce_members(members)))


def covered(members: Iterable[Subspace], s: Subspace) -> bool:
    """Point-set containment of s in the union of ``members``."""
    return any(includes(m, s) for m in members)


def union_includes_subspace(f: SubspaceFamily, s: Subspace) -> bool:
    if f.ambient_dim != s.ambient_dim:
        raise DimensionMismatch("family and subspace in different ambient spaces")
    return covered(f.members, s)


def union_includes_family(f: SubspaceFamily, g: SubspaceFamily) -> bool:
    """True iff the union of g is contained in the union of f."""
    if f.ambient_dim != g.ambient_dim:
        raise DimensionMismatch("families in different ambient spaces")
    return all(covered(f.members, s) for s in g.members)


def family_equal(f: SubspaceFamily, g: SubspaceFamily) -> bool:
    return union_includes_family(f, g) and union_includes_family(g, f)


def minimal_cover_points(points: Sequence[Sequence], ambient_dim: int | None = None) -> SubspaceFamily:
    """Smallest antichain cover of a finite point set: the lines through its nonzero points."""
    if ambient_dim is None:
        ambient_dim = len(points[0])
    lines = [span([p], ambient_dim) for p in points]
    if not lines:
        return SubspaceFamily(ambient_dim, ())
    return antichain_reduce(lines, ambient_dim)


def widen(f: SubspaceFamily) -> SubspaceFamily:
    if not f.members:
        return f
    total = zero_subspace(f.ambient_dim)
    for m in f.members:
        total = subspace_sum(total, m)
    return SubspaceFamily(f.ambient_dim, (total,))
