"""Decision procedures for first-order inclusions with finite matrix sets.

Given a finite set E of m×n matrices with 0 ∉ E, the gradient inclusion
Du ∈ E (u vanishing on the boundary of a bounded domain) is solvable in
the minimal-dimension regime dim span E = n exactly when

  * span E is a tensor slice b ⊗ QQⁿ for some direction b, and
  * 0 is a full-support convex combination of E.

The symmetrized inclusion Du + Duᵀ ∈ E with a nonzero average replaces
the first condition by span E = QQⁿ ∨ b, detected through the common
kernel of the orthogonal complement inside the symmetric matrices.

Verdicts are certificates either way: a feasible answer carries the
direction b, the factor set F with E = b⊗F (resp. b∨F), and the convex
weights; an infeasible answer carries the datum that refutes
solvability (the span dimension, the complement basis, or a separating
functional P with ⟨A; P⟩ ≥ 0 on E).  Spans strictly larger than n are
out of scope for the criterion and are reported as such, never guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .convexity import (
    CaratheodoryCertificate,
    PointSet,
    in_interior_of_hull,
    in_relative_interior_of_hull,
    separating_functional,
)
from .errors import InclusionKitError, InvalidInput, NotInSlice
from .geometry import Polytope, interior_point, is_bounded, unit_box
from .linalg import Mat, Subspace, Vec, span_of, vec
from .products import (
    ProductKind,
    detect_rank_one_span,
    detect_sym_slice,
    sym_product,
    symmetric_space,
    tensor,
)

GRADIENT = "gradient"
SYMMETRIZED = "symmetrized"

FEASIBLE = "feasible"
INFEASIBLE = "infeasible"
OUT_OF_SCOPE = "out_of_scope"

DIMENSION_TOO_SMALL = "DimensionTooSmall"
SPAN_NOT_RANK_ONE = "SpanNotRankOne"
COMMON_KERNEL_TRIVIAL = "CommonKernelTrivial"
NOT_RELATIVE_INTERIOR = "NotRelativeInterior"


@dataclass(frozen=True, slots=True)
class InclusionProblem:
    """A finite inclusion instance: operator, matrix set, domain.

    Matrices are deduplicated on load (first occurrence wins); the zero
    matrix is rejected, and symmetrized instances must consist of
    symmetric square matrices.
    """

    operator: str
    m: int
    n: int
    matrices: tuple[Mat, ...]
    domain: Polytope

    @classmethod
    def gradient(
        cls, matrices: Sequence[Mat], domain: Polytope | None = None
    ) -> "InclusionProblem":
        mats = _load_matrices(matrices)
        m, n = mats[0].rows, mats[0].cols
        for a in mats:
            if (a.rows, a.cols) != (m, n):
                raise InvalidInput("all matrices must share one shape")
        dom = _load_domain(domain, n)
        return cls(GRADIENT, m, n, mats, dom)

    @classmethod
    def symmetrized(
        cls, matrices: Sequence[Mat], domain: Polytope | None = None
    ) -> "InclusionProblem":
        mats = _load_matrices(matrices)
        n = mats[0].rows
        for a in mats:
            if (a.rows, a.cols) != (n, n):
                raise InvalidInput("symmetrized instances need square matrices")
            if not a.is_symmetric():
                raise InvalidInput("symmetrized instances need symmetric matrices")
        dom = _load_domain(domain, n)
        return cls(SYMMETRIZED, n, n, mats, dom)


def _load_matrices(matrices: Sequence[Mat]) -> tuple[Mat, ...]:
    if not matrices:
        raise InvalidInput("the matrix set must be nonempty")
    out: list[Mat] = []
    for a in matrices:
        if a.is_zero():
            raise InvalidInput("the zero matrix is not admitted (0 in E)")
        if a not in out:
            out.append(a)
    return tuple(out)


def _load_domain(domain: Polytope | None, n: int) -> Polytope:
    if domain is None:
        return unit_box(n)
    if domain.ambient != n:
        raise InvalidInput(f"domain ambient {domain.ambient} does not match n = {n}")
    if domain.kind == "box":
        for lo, hi in zip(domain.low, domain.high):
            if lo >= hi:
                raise InvalidInput("box domain needs low < high componentwise")
        return domain
    if not is_bounded(domain):
        raise InvalidInput("domain must be bounded")
    if interior_point(domain) is None:
        raise InvalidInput("domain must have nonempty interior")
    return domain


@dataclass(frozen=True, slots=True)
class Verdict:
    """Outcome of a decision, with checkable payloads.

    feasible: b, factors (F with E = b⊗F or b∨F), certificate.
    infeasible: reason plus its datum (span_dim, separator, or
        complement_basis).
    out_of_scope: span_dim > n; the minimal-dimension criterion does
        not apply and nothing is claimed either way.
    """

    status: str
    b: Vec | None = None
    factors: tuple[Vec, ...] | None = None
    certificate: CaratheodoryCertificate | None = None
    reason: str | None = None
    span_dim: int | None = None
    separator: Vec | None = None
    complement_basis: tuple[Vec, ...] | None = None


def factor_slice(matrices: Sequence[Mat], b: Vec, kind: ProductKind) -> tuple[Vec, ...]:
    """Factors f with A = b⊗f (tensor) or A = b∨f (symmetric), per matrix.

    The factor is solved for exactly and the product is re-formed and
    compared entrywise; any mismatch raises NotInSlice naming the
    offending matrix.
    """
    if b.is_zero():
        raise ValueError("slice direction must be nonzero")
    out: list[Vec] = []
    if kind is ProductKind.TENSOR:
        lead = next(i for i, x in enumerate(b) if x != 0)
        for idx, a in enumerate(matrices):
            f = a.row(lead).scale(1 / b[lead])
            if tensor(b, f) != a:
                raise NotInSlice(f"matrix {idx} does not factor through the tensor slice")
            out.append(f)
        return tuple(out)
    if kind is ProductKind.SYMMETRIC:
        bb = b.dot(b)
        for idx, a in enumerate(matrices):
            ab = a.matvec(b)
            fb = ab.dot(b) / (2 * bb)
            f = (ab - b.scale(fb)).scale(Fraction(1) / bb)
            if sym_product(b, f) != a:
                raise NotInSlice(f"matrix {idx} does not factor through the symmetric slice")
            out.append(f)
        return tuple(out)
    raise ValueError("factor_slice supports tensor and symmetric slices")


def _origin_position(
    matrices: Sequence[Mat], ambient: int
) -> tuple[CaratheodoryCertificate | None, Vec | None]:
    ps = PointSet.from_vecs([a.flatten() for a in matrices], ambient)
    cert = in_relative_interior_of_hull(ps)
    if cert is not None:
        return cert, None
    return None, separating_functional(ps)


def _check_factor_interior(factors: Sequence[Vec], n: int) -> None:
    if not in_interior_of_hull(PointSet.from_vecs(factors, n)):
        raise InclusionKitError(
            "internal inconsistency: factor set lost the interior property"
        )


def decide_gradient(problem: InclusionProblem) -> Verdict:
    """Decide Du ∈ E in the minimal-dimension regime dim span E = n."""
    if problem.operator != GRADIENT:
        raise InvalidInput("decide_gradient needs a gradient problem")
    m, n = problem.m, problem.n
    flat = [a.flatten() for a in problem.matrices]
    span = span_of(flat, m * n)
    if span.dim < n:
        return Verdict(INFEASIBLE, reason=DIMENSION_TOO_SMALL, span_dim=span.dim)
    if span.dim > n:
        return Verdict(OUT_OF_SCOPE, span_dim=span.dim)
    if m == 1:
        # The column space of 1×n matrices is trivially one line.
        b = vec(1)
    else:
        b = detect_rank_one_span(span, (m, n))
        if b is None:
            return Verdict(INFEASIBLE, reason=SPAN_NOT_RANK_ONE, span_dim=span.dim)
    cert, sep = _origin_position(problem.matrices, m * n)
    if cert is None:
        return Verdict(INFEASIBLE, reason=NOT_RELATIVE_INTERIOR, separator=sep)
    factors = factor_slice(problem.matrices, b, ProductKind.TENSOR)
    _check_factor_interior(factors, n)
    return Verdict(FEASIBLE, b=b, factors=factors, certificate=cert)


def decide_symmetrized(problem: InclusionProblem) -> Verdict:
    """Decide Du + Duᵀ ∈ E with nonzero average, dim span E = n regime."""
    if problem.operator != SYMMETRIZED:
        raise InvalidInput("decide_symmetrized needs a symmetrized problem")
    n = problem.n
    flat = [a.flatten() for a in problem.matrices]
    span = span_of(flat, n * n)
    if span.dim < n:
        return Verdict(INFEASIBLE, reason=DIMENSION_TOO_SMALL, span_dim=span.dim)
    if span.dim > n:
        return Verdict(OUT_OF_SCOPE, span_dim=span.dim)
    b = detect_sym_slice(span, n)
    if b is None:
        from .linalg import orthogonal_complement

        comp = orthogonal_complement(span, symmetric_space(n))
        return Verdict(
            INFEASIBLE,
            reason=COMMON_KERNEL_TRIVIAL,
            span_dim=span.dim,
            complement_basis=comp.basis,
        )
    cert, sep = _origin_position(problem.matrices, n * n)
    if cert is None:
        return Verdict(INFEASIBLE, reason=NOT_RELATIVE_INTERIOR, separator=sep)
    factors = factor_slice(problem.matrices, b, ProductKind.SYMMETRIC)
    _check_factor_interior(factors, n)
    return Verdict(FEASIBLE, b=b, factors=factors, certificate=cert)


def decide(problem: InclusionProblem) -> Verdict:
    """Dispatch on the problem's operator."""
    if problem.operator == GRADIENT:
        return decide_gradient(problem)
    return decide_symmetrized(problem)
