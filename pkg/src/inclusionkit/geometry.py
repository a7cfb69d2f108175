"""Exact polytope geometry at desk scale.

Polytopes are intersections of rational halfspaces ⟨a; x⟩ ≤ c (boxes
keep their corner representation for round-tripping).  Everything is
computed over Fractions: vertices by solving square subsystems, volume
by a pulling triangulation of the face lattice, integrals of affine
maps by the vertex-mean rule on each simplex.  Nothing here scales past
a handful of constraints per cell, and nothing here needs to.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .convexity import OPTIMAL, UNBOUNDED, simplex_solve
from .errors import AmbientMismatch, DimensionMismatch
from .linalg import Mat, Vec, rat, solve_square, vec

BOX = "box"
HALFSPACES = "halfspaces"


@dataclass(frozen=True, slots=True)
class Polytope:
    """Convex polytope {x : ⟨aᵢ; x⟩ ≤ cᵢ}; boxes remember their corners."""

    ambient: int
    kind: str
    normals: tuple[Vec, ...] = ()
    offsets: tuple[Fraction, ...] = ()
    low: Vec | None = None
    high: Vec | None = None

    @classmethod
    def box(cls, low: Vec, high: Vec) -> "Polytope":
        if len(low) != len(high):
            raise AmbientMismatch("box corners have different lengths")
        return cls(len(low), BOX, low=low, high=high)

    @classmethod
    def halfspaces(cls, normals: Sequence[Vec], offsets: Sequence[Fraction]) -> "Polytope":
        if len(normals) != len(offsets):
            raise DimensionMismatch("one offset per normal required")
        if not normals:
            raise DimensionMismatch("at least one halfspace required")
        n = len(normals[0])
        for a in normals:
            if len(a) != n:
                raise AmbientMismatch("normals have mixed lengths")
        return cls(n, HALFSPACES, normals=tuple(normals), offsets=tuple(rat(c) for c in offsets))

    def rows(self) -> list[tuple[Vec, Fraction]]:
        """H-representation as (normal, offset) pairs."""
        if self.kind == HALFSPACES:
            return list(zip(self.normals, self.offsets))
        out: list[tuple[Vec, Fraction]] = []
        n = self.ambient
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            out.append((Vec(tuple(e)), self.high[i]))
            out.append((Vec(tuple(-x for x in e)), -self.low[i]))
        return out

    def contains(self, x: Vec, strict: bool = False) -> bool:
        if len(x) != self.ambient:
            raise AmbientMismatch("point has wrong length")
        for a, c in self.rows():
            v = a.dot(x)
            if v > c or (strict and v == c):
                return False
        return True

    def scale_translate(self, s: Fraction, t: Vec) -> "Polytope":
        """Image {s·x + t : x ∈ P}; requires s > 0."""
        if s <= 0:
            raise ValueError("scale must be positive")
        if len(t) != self.ambient:
            raise AmbientMismatch("translation has wrong length")
        if self.kind == BOX:
            return Polytope.box(self.low.scale(s) + t, self.high.scale(s) + t)
        offsets = tuple(s * c + a.dot(t) for a, c in zip(self.normals, self.offsets))
        return Polytope(self.ambient, HALFSPACES, normals=self.normals, offsets=offsets)


def affine_dim(points: Sequence[Vec]) -> int:
    """Dimension of the affine hull; -1 for the empty set."""
    if not points:
        return -1
    from .linalg import rank

    p0 = points[0]
    rows = [list((p - p0).entries) for p in points[1:]]
    if not rows:
        return 0
    return rank(Mat.from_rows(rows))


def vertices(p: Polytope) -> list[Vec]:
    """All vertices, exactly, sorted lexicographically.

    Every vertex is the unique solution of some square subsystem of
    tight constraints; enumerate the subsystems and keep the feasible
    solutions.  Desk scale only.
    """
    rows = p.rows()
    n = p.ambient
    out: list[Vec] = []
    seen: set[tuple[Fraction, ...]] = set()
    for idxs in combinations(range(len(rows)), n):
        a = [list(rows[i][0].entries) for i in idxs]
        b = [rows[i][1] for i in idxs]
        sol = solve_square(a, b)
        if sol is None:
            continue
        x = Vec(tuple(sol))
        if x.entries in seen:
            continue
        if p.contains(x):
            seen.add(x.entries)
            out.append(x)
    out.sort(key=lambda v: v.entries)
    return out


def _ineq_lp(
    objective: list[Fraction],
    rows: list[list[Fraction]],
    rhs: list[Fraction],
    nonneg: list[bool],
):
    """max objective·x s.t. rows·x ≤ rhs, via one slack per row."""
    k = len(rows)
    nv = len(objective)
    eq_rows = []
    for i, row in enumerate(rows):
        slack = [Fraction(0)] * k
        slack[i] = Fraction(1)
        eq_rows.append(list(row) + slack)
    obj = list(objective) + [Fraction(0)] * k
    flags = list(nonneg) + [True] * k
    res = simplex_solve(obj, eq_rows, rhs, flags)
    return res


def is_bounded(p: Polytope) -> bool:
    """Exact boundedness: every coordinate has a finite range."""
    if p.kind == BOX:
        return True
    rows = [list(a.entries) for a, _ in p.rows()]
    rhs = [c for _, c in p.rows()]
    n = p.ambient
    for i in range(n):
        for sign in (1, -1):
            obj = [Fraction(0)] * n
            obj[i] = Fraction(sign)
            res = _ineq_lp(obj, rows, rhs, [False] * n)
            if res.status == UNBOUNDED:
                return False
    return True


def interior_point(p: Polytope) -> Vec | None:
    """A strictly interior point, or None when the interior is empty.

    Maximizes the slack margin ε (capped at 1 so unbounded polytopes
    still answer) over ⟨aᵢ; x⟩ + ε ≤ cᵢ.
    """
    prows = p.rows()
    n = p.ambient
    rows = []
    rhs = []
    for a, c in prows:
        rows.append(list(a.entries) + [Fraction(1)])
        rhs.append(c)
    rows.append([Fraction(0)] * n + [Fraction(1)])
    rhs.append(Fraction(1))
    obj = [Fraction(0)] * n + [Fraction(1)]
    res = _ineq_lp(obj, rows, rhs, [False] * n + [True])
    if res.status != OPTIMAL or res.value is None or res.value <= 0:
        return None
    return Vec(tuple(res.x[:n]))


def interiors_intersect(p: Polytope, q: Polytope) -> bool:
    """Whether int(P) ∩ int(Q) ≠ ∅, exactly (common strict point LP)."""
    if p.ambient != q.ambient:
        raise AmbientMismatch("polytopes live in different ambient spaces")
    n = p.ambient
    rows = []
    rhs = []
    for a, c in p.rows() + q.rows():
        rows.append(list(a.entries) + [Fraction(1)])
        rhs.append(c)
    rows.append([Fraction(0)] * n + [Fraction(1)])
    rhs.append(Fraction(1))
    obj = [Fraction(0)] * n + [Fraction(1)]
    res = _ineq_lp(obj, rows, rhs, [False] * n + [True])
    return res.status == OPTIMAL and res.value is not None and res.value > 0


def bounding_box(p: Polytope) -> tuple[Vec, Vec]:
    """Componentwise min / max over the vertex set (bounded polytopes)."""
    if p.kind == BOX:
        return p.low, p.high
    vs = vertices(p)
    if not vs:
        raise ValueError("empty polytope has no bounding box")
    low = [min(v[i] for v in vs) for i in range(p.ambient)]
    high = [max(v[i] for v in vs) for i in range(p.ambient)]
    return Vec(tuple(low)), Vec(tuple(high))


def _tight_sets(p: Polytope, verts: list[Vec]) -> list[frozenset[int]]:
    return [
        frozenset(i for i, v in enumerate(verts) if a.dot(v) == c)
        for a, c in p.rows()
    ]


def triangulate(p: Polytope) -> list[tuple[Vec, ...]]:
    """Decompose a bounded polytope into simplices (pulling order).

    Each face is coned from its lexicographically smallest vertex over
    the facets that avoid it.  Lower-dimensional polytopes return no
    simplices (they carry no volume).
    """
    verts = vertices(p)
    n = p.ambient
    if len(verts) < n + 1 or affine_dim(verts) < n:
        return []
    tight = _tight_sets(p, verts)

    def facets_of(face: frozenset[int], d: int) -> list[frozenset[int]]:
        out = []
        seen: set[frozenset[int]] = set()
        for t in tight:
            sub = face & t
            if not sub or sub == face or sub in seen:
                continue
            if affine_dim([verts[i] for i in sub]) == d - 1:
                seen.add(sub)
                out.append(sub)
        return sorted(out, key=lambda s: sorted(s))

    def tri(face: frozenset[int], d: int) -> list[tuple[int, ...]]:
        idx = sorted(face)
        if d == 1:
            return [(idx[0], idx[-1])]
        v0 = idx[0]
        out = []
        for sub in facets_of(face, d):
            if v0 in sub:
                continue
            for s in tri(sub, d - 1):
                out.append(s + (v0,))
        return out

    return [tuple(verts[i] for i in s) for s in tri(frozenset(range(len(verts))), n)]


def simplex_volume(simplex: Sequence[Vec]) -> Fraction:
    """|det of edge vectors| / n! for an n-simplex in QQⁿ."""
    n = len(simplex) - 1
    rows = [list((simplex[i + 1] - simplex[0]).entries) for i in range(n)]
    det = _det(rows)
    fact = 1
    for i in range(2, n + 1):
        fact *= i
    return abs(det) / fact


def _det(rows: list[list[Fraction]]) -> Fraction:
    n = len(rows)
    m = [list(r) for r in rows]
    det = Fraction(1)
    for c in range(n):
        piv = None
        for i in range(c, n):
            if m[i][c] != 0:
                piv = i
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        inv = m[c][c]
        m[c] = [x / inv for x in m[c]]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def volume(p: Polytope) -> Fraction:
    """Exact Lebesgue measure of a bounded polytope (0 if degenerate)."""
    return sum((simplex_volume(s) for s in triangulate(p)), Fraction(0))


def integrate_affine(p: Polytope, gradient: Mat, offset: Vec) -> Vec:
    """∫_P (G·x + o) dx, exactly, one coordinate per output row.

    Affine integrands over a simplex integrate to volume times the mean
    of the vertex values; sum over a triangulation.
    """
    if gradient.rows != len(offset):
        raise DimensionMismatch("gradient rows must match offset length")
    total = [Fraction(0)] * gradient.rows
    for s in triangulate(p):
        vol = simplex_volume(s)
        if vol == 0:
            continue
        k = len(s)
        for r in range(gradient.rows):
            mean = sum((gradient.row(r).dot(v) + offset[r] for v in s), Fraction(0)) / k
            total[r] += vol * mean
    return Vec(tuple(total))


def unit_box(n: int) -> Polytope:
    return Polytope.box(vec(*([0] * n)), vec(*([1] * n)))
