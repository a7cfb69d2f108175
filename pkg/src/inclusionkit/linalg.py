"""Exact linear algebra over the rationals.

Every quantity in this module is a ``fractions.Fraction``: gcd-reduced,
positive denominator, arbitrary precision.  No float ever enters a
computation, so rank, kernel, and subspace comparisons are decisions,
not estimates.

Subspaces are stored through a canonical basis: the reduced row echelon
form of any spanning set, rows ordered by pivot column, each pivot
normalized to 1.  Two subspaces are equal iff their canonical bases are
syntactically equal, which makes ``subspace_equal`` a tuple comparison.

Matrices are flattened row-major into vectors of length rows*cols when
they are treated as points of a subspace; symmetry is an invariant of
the entries, not a compressed coordinate system.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
import re
from typing import Iterable, Iterator, Sequence, Union

from .errors import AmbientMismatch, ContainmentViolation

QQ = Fraction

RatLike = Union[Fraction, int, str]

_RAT_RE = re.compile(r"^-?\d+(/\d+)?$")


def rat(x: RatLike) -> Fraction:
    """Coerce an int, canonical string ``p/q``, or Fraction to a Fraction.

    Floats (and float-formatted strings) are rejected: exactness is a
    contract, not a default.
    """
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        if not _RAT_RE.match(x):
            raise ValueError(f"not a canonical rational string: {x!r}")
        try:
            return Fraction(x)
        except ZeroDivisionError:
            raise ValueError(f"zero denominator: {x!r}") from None
    raise TypeError(f"cannot coerce {type(x).__name__} to a rational")


def rat_str(x: Fraction) -> str:
    """Canonical string form ``p/q``, with ``/q`` omitted when q == 1."""
    return str(x)


@dataclass(frozen=True, slots=True)
class Vec:
    """Immutable rational vector."""

    entries: tuple[Fraction, ...]

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.entries)

    def __add__(self, other: "Vec") -> "Vec":
        if len(self) != len(other):
            raise AmbientMismatch(f"vector lengths {len(self)} != {len(other)}")
        return Vec(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vec") -> "Vec":
        if len(self) != len(other):
            raise AmbientMismatch(f"vector lengths {len(self)} != {len(other)}")
        return Vec(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Vec":
        return Vec(tuple(-a for a in self.entries))

    def scale(self, c: Fraction) -> "Vec":
        return Vec(tuple(c * a for a in self.entries))

    def dot(self, other: "Vec") -> Fraction:
        if len(self) != len(other):
            raise AmbientMismatch(f"vector lengths {len(self)} != {len(other)}")
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def to_strings(self) -> list[str]:
        return [rat_str(a) for a in self.entries]


def vec(*xs: RatLike) -> Vec:
    """Build a Vec, coercing each entry through :func:`rat`."""
    if len(xs) == 1 and isinstance(xs[0], (list, tuple)):
        xs = tuple(xs[0])  # type: ignore[assignment]
    return Vec(tuple(rat(x) for x in xs))


def zero_vec(n: int) -> Vec:
    return Vec((Fraction(0),) * n)


def unit_vec(i: int, n: int) -> Vec:
    return Vec(tuple(Fraction(1 if j == i else 0) for j in range(n)))


@dataclass(frozen=True, slots=True)
class Mat:
    """Immutable rational matrix, entries flat in row-major order."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[RatLike]]) -> "Mat":
        r = len(rows)
        c = len(rows[0]) if r else 0
        flat: list[Fraction] = []
        for row in rows:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(rat(x) for x in row)
        return cls(r, c, tuple(flat))

    def entry(self, i: int, j: int) -> Fraction:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vec:
        return Vec(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j: int) -> Vec:
        return Vec(tuple(self.entries[i * self.cols + j] for i in range(self.rows)))

    def row_list(self) -> list[Vec]:
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "Mat":
        return Mat(
            self.cols,
            self.rows,
            tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)),
        )

    def matvec(self, x: Vec) -> Vec:
        if len(x) != self.cols:
            raise AmbientMismatch(f"matrix has {self.cols} columns, vector length {len(x)}")
        return Vec(tuple(self.row(i).dot(x) for i in range(self.rows)))

    def flatten(self) -> Vec:
        """Row-major flattening into a vector of length rows*cols."""
        return Vec(self.entries)

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AmbientMismatch("matrix shapes differ")
        return Mat(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AmbientMismatch("matrix shapes differ")
        return Mat(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Mat":
        return Mat(self.rows, self.cols, tuple(-a for a in self.entries))

    def scale(self, c: Fraction) -> "Mat":
        return Mat(self.rows, self.cols, tuple(c * a for a in self.entries))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.entries)

    def is_symmetric(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entry(i, j) == self.entry(j, i)
            for i in range(self.rows)
            for j in range(i + 1, self.cols)
        )

    def is_skew(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            self.entry(i, j) == -self.entry(j, i)
            for i in range(self.rows)
            for j in range(i, self.cols)
        )

    def inner(self, other: "Mat") -> Fraction:
        """Frobenius inner product <A;B> = sum_ij A_ij B_ij."""
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise AmbientMismatch("matrix shapes differ")
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def to_nested(self) -> list[list[str]]:
        return [[rat_str(self.entry(i, j)) for j in range(self.cols)] for i in range(self.rows)]


def mat(rows: Sequence[Sequence[RatLike]]) -> Mat:
    """Build a Mat from nested rows, coercing entries through :func:`rat`."""
    return Mat.from_rows(rows)


def mat_from_flat(rows: int, cols: int, flat: Sequence[RatLike]) -> Mat:
    if len(flat) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
    return Mat(rows, cols, tuple(rat(x) for x in flat))


def _rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns).

    Normalization happens after every elimination step: each pivot is
    scaled to 1 before clearing its column, so entries stay gcd-reduced
    throughout.
    """
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(m: Mat) -> int:
    """Row rank over the rationals, computed exactly."""
    reduced, _ = _rref([list(m.row(i).entries) for i in range(m.rows)])
    return len(reduced)


@dataclass(frozen=True, slots=True)
class Subspace:
    """Linear subspace of QQ^ambient with a canonical echelon basis."""

    ambient: int
    basis: tuple[Vec, ...]

    @classmethod
    def from_vectors(cls, vectors: Iterable[Vec], ambient: int | None = None) -> "Subspace":
        vs = list(vectors)
        if ambient is None:
            if not vs:
                raise ValueError("ambient dimension required for an empty spanning set")
            ambient = len(vs[0])
        for v in vs:
            if len(v) != ambient:
                raise AmbientMismatch(f"vector length {len(v)} in ambient {ambient}")
        reduced, _ = _rref([list(v.entries) for v in vs])
        return cls(ambient, tuple(Vec(tuple(r)) for r in reduced))

    @classmethod
    def zero(cls, ambient: int) -> "Subspace":
        return cls(ambient, ())

    @classmethod
    def full(cls, ambient: int) -> "Subspace":
        return cls.from_vectors([unit_vec(i, ambient) for i in range(ambient)], ambient)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains_vector(self, v: Vec) -> bool:
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector length {len(v)} in ambient {self.ambient}")
        # Reduce v against the echelon basis; membership iff the residue is 0.
        work = list(v.entries)
        for b in self.basis:
            pivot = next(i for i, x in enumerate(b.entries) if x != 0)
            if work[pivot] != 0:
                f = work[pivot]
                work = [a - f * c for a, c in zip(work, b.entries)]
        return all(x == 0 for x in work)

    def contains_subspace(self, other: "Subspace") -> bool:
        if self.ambient != other.ambient:
            raise AmbientMismatch("subspaces live in different ambient spaces")
        return all(self.contains_vector(b) for b in other.basis)

    def coordinates(self, v: Vec) -> Vec | None:
        """Coefficients of v in the canonical basis, or None if v is outside."""
        if len(v) != self.ambient:
            raise AmbientMismatch(f"vector length {len(v)} in ambient {self.ambient}")
        work = list(v.entries)
        coeffs = []
        for b in self.basis:
            pivot = next(i for i, x in enumerate(b.entries) if x != 0)
            c = work[pivot]
            coeffs.append(c)
            if c != 0:
                work = [a - c * e for a, e in zip(work, b.entries)]
        if any(x != 0 for x in work):
            return None
        return Vec(tuple(coeffs))


def span_of(vectors: Iterable[Vec], ambient: int | None = None) -> Subspace:
    return Subspace.from_vectors(vectors, ambient)


def kernel(m: Mat) -> Subspace:
    """Null space {x : Mx = 0}, canonical basis, exact.

    dim kernel + rank == cols, always.
    """
    reduced, pivots = _rref([list(m.row(i).entries) for i in range(m.rows)])
    n = m.cols
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        x = [Fraction(0)] * n
        x[j] = Fraction(1)
        for r, pc in zip(reduced, pivots):
            x[pc] = -r[j]
        basis.append(Vec(tuple(x)))
    return Subspace.from_vectors(basis, n) if basis else Subspace.zero(n)


def subspace_sum(s: Subspace, t: Subspace) -> Subspace:
    if s.ambient != t.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    return Subspace.from_vectors(list(s.basis) + list(t.basis), s.ambient)


def intersect(s: Subspace, t: Subspace) -> Subspace:
    """Intersection of two subspaces of the same ambient space.

    A point is in both spans iff it is S^T y = T^T z for coefficient
    vectors (y, z); those pairs form the kernel of [S^T | -T^T].
    """
    if s.ambient != t.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    p, q = s.dim, t.dim
    if p == 0 or q == 0:
        return Subspace.zero(s.ambient)
    # Columns: p coefficients for S's basis, then q for T's.
    rows = []
    for r in range(s.ambient):
        rows.append([s.basis[i][r] for i in range(p)] + [-t.basis[j][r] for j in range(q)])
    k = kernel(Mat.from_rows(rows))
    points = []
    for w in k.basis:
        x = zero_vec(s.ambient)
        for i in range(p):
            x = x + s.basis[i].scale(w[i])
        points.append(x)
    return Subspace.from_vectors(points, s.ambient)


def orthogonal_complement(s: Subspace, within: Subspace) -> Subspace:
    """Orthogonal complement of s inside ``within`` (Frobenius/dot pairing).

    Requires s <= within; the result t satisfies s + t = within,
    s ∩ t = 0, and dim t = dim within - dim s.
    """
    if s.ambient != within.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    if not within.contains_subspace(s):
        raise ContainmentViolation("first subspace is not contained in the second")
    k = within.dim
    if s.dim == 0:
        return within
    gram_rows = [[sb.dot(wb) for wb in within.basis] for sb in s.basis]
    coeff_kernel = kernel(Mat.from_rows(gram_rows))
    basis = []
    for c in coeff_kernel.basis:
        x = zero_vec(s.ambient)
        for j in range(k):
            x = x + within.basis[j].scale(c[j])
        basis.append(x)
    return Subspace.from_vectors(basis, s.ambient) if basis else Subspace.zero(s.ambient)


def subspace_equal(s: Subspace, t: Subspace) -> bool:
    """Equality via canonical bases; ambient spaces must match."""
    if s.ambient != t.ambient:
        raise AmbientMismatch("subspaces live in different ambient spaces")
    return s.basis == t.basis


def normalize_direction(v: Vec) -> Vec:
    """Scale a nonzero vector so its first nonzero coordinate is 1."""
    for x in v.entries:
        if x != 0:
            return v.scale(1 / x)
    raise ValueError("cannot normalize the zero vector")


def solve_square(a: list[list[Fraction]], b: list[Fraction]) -> list[Fraction] | None:
    """Solve a square linear system exactly; None if singular."""
    n = len(a)
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return None
        m[c], m[pivot_row] = m[pivot_row], m[c]
        pv = m[c][c]
        m[c] = [x / pv for x in m[c]]
        for i in range(n):
            if i != c and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]
