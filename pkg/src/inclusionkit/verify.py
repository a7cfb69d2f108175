"""Independent verification of piecewise-affine solutions.

The verifier trusts nothing the builder computed.  Cell vertices are
re-enumerated from the halfspace data, cell gradients are re-fitted
from vertex values of the serialized function and compared to the
stored fields, coverage is re-measured cell by cell, and membership is
re-checked against the problem's matrix set.  Every check is an exact
rational comparison; a report either passes outright or names the
failing check and the offending cell.

Checks, per solution:

  wellformed   cells are full-dimensional, inside Ω, with consistent
               shapes; stored gradients match the vertex-value fit.
  membership   the (recomputed) gradient of every cell, pushed through
               the operator, is an element of E.
  continuity   any vertex of one cell lying in another cell gets the
               same value from both affine maps.
  hadamard     gradient jumps across shared facets are rank-one along
               the facet normal.
  boundary     values vanish where a cell meets its covering copy's
               boundary, and on any cell facet not shared with another
               cell (the edge of the covered region).
  coverage     cells are pairwise interior-disjoint, their measures sum
               to the claimed coverage, covered + residual = |Ω|, and
               the uncovered part is at most δ·|Ω|.
  integral     ∫u is recomputed; symmetrized solutions with at least
               one cell must integrate to a nonzero vector.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .builder import PiecewiseAffine
from .errors import Unbounded
from .feasibility import SYMMETRIZED, InclusionProblem
from .geometry import (
    Polytope,
    affine_dim,
    integrate_affine,
    interiors_intersect,
    is_bounded,
    vertices,
    volume,
)
from .linalg import Mat, Vec, solve_square, span_of, zero_vec


def measure(p: Polytope) -> Fraction:
    """Exact Lebesgue measure; raises Unbounded on unbounded input."""
    if not is_bounded(p):
        raise Unbounded("polytope is unbounded")
    return volume(p)


@dataclass(frozen=True, slots=True)
class CheckResult:
    passed: bool
    failures: tuple[str, ...]


@dataclass(frozen=True, slots=True)
class Report:
    """Verification outcome; ``passed`` is the conjunction of all checks."""

    passed: bool
    wellformed: CheckResult
    membership: CheckResult
    continuity: CheckResult
    hadamard: CheckResult
    boundary: CheckResult
    coverage: CheckResult
    integral: CheckResult
    covered: Fraction
    omega_measure: Fraction
    integral_value: Vec


def _fit_affine(verts: list[Vec], values: list[Vec], n: int, d: int) -> tuple[Mat, Vec] | None:
    """Solve for (G, o) with G·x + o matching the given vertex values.

    Picks n+1 affinely independent vertices greedily; None when the
    vertex set is degenerate.
    """
    chosen: list[int] = []
    for i in range(len(verts)):
        trial = chosen + [i]
        if affine_dim([verts[j] for j in trial]) == len(trial) - 1:
            chosen.append(i)
        if len(chosen) == n + 1:
            break
    if len(chosen) != n + 1:
        return None
    a = [list(verts[i].entries) + [Fraction(1)] for i in chosen]
    grad_rows: list[tuple[Fraction, ...]] = []
    offset: list[Fraction] = []
    for r in range(d):
        rhs = [values[i][r] for i in chosen]
        sol = solve_square([list(row) for row in a], rhs)
        if sol is None:
            return None
        grad_rows.append(tuple(sol[:n]))
        offset.append(sol[n])
    flat = tuple(x for row in grad_rows for x in row)
    return Mat(d, n, flat), Vec(tuple(offset))


def _facet_normal(points: list[Vec], n: int) -> Vec | None:
    """A normal direction of an (n-1)-dimensional affine hull."""
    p0 = points[0]
    rows = [list((p - p0).entries) for p in points[1:]]
    if not rows:
        if n == 1:
            return Vec((Fraction(1),))
        return None
    from .linalg import kernel

    k = kernel(Mat.from_rows(rows))
    if k.dim != 1:
        return None
    return k.basis[0]


def verify_solution(
    problem: InclusionProblem,
    pw: PiecewiseAffine,
    delta: Fraction | None = None,
) -> Report:
    """Check a serialized solution against its problem, exactly."""
    if delta is None:
        delta = pw.delta
    n = pw.ambient
    d = pw.value_dim
    omega_measure = measure(pw.omega)
    e_set = set(problem.matrices)

    wf_fail: list[str] = []
    mem_fail: list[str] = []
    cont_fail: list[str] = []
    had_fail: list[str] = []
    bnd_fail: list[str] = []
    cov_fail: list[str] = []

    cells = list(pw.cells)
    cell_verts: list[list[Vec]] = []
    cell_vols: list[Fraction] = []
    usable: list[bool] = []
    for i, cell in enumerate(cells):
        ok = True
        if cell.gradient.rows != d or cell.gradient.cols != n or len(cell.offset) != d:
            wf_fail.append(f"cell {i}: affine data has wrong shape")
            cell_verts.append([])
            cell_vols.append(Fraction(0))
            usable.append(False)
            continue
        verts = vertices(cell.polytope)
        vol = volume(cell.polytope)
        cell_verts.append(verts)
        cell_vols.append(vol)
        if len(verts) < n + 1 or affine_dim(verts) < n or vol == 0:
            wf_fail.append(f"cell {i}: degenerate (lower-dimensional) cell")
            ok = False
        for v in verts:
            if not pw.omega.contains(v):
                wf_fail.append(f"cell {i}: vertex outside the domain")
                ok = False
                break
        usable.append(ok)

    def value_at(i: int, x: Vec) -> Vec:
        return cells[i].gradient.matvec(x) + cells[i].offset

    # Gradient recovery from vertex values; must equal the stored field.
    recovered: list[Mat | None] = []
    for i, cell in enumerate(cells):
        if not usable[i]:
            recovered.append(None)
            continue
        vals = [value_at(i, v) for v in cell_verts[i]]
        fit = _fit_affine(cell_verts[i], vals, n, d)
        if fit is None:
            wf_fail.append(f"cell {i}: no affinely independent vertex frame")
            recovered.append(None)
            continue
        g, o = fit
        if g != cell.gradient or o != cell.offset:
            wf_fail.append(f"cell {i}: stored affine data disagrees with vertex fit")
            recovered.append(None)
            continue
        recovered.append(g)

    # Membership of the recomputed gradient, through the operator.
    for i, g in enumerate(recovered):
        if g is None:
            continue
        if problem.operator == SYMMETRIZED:
            if g.rows != g.cols:
                mem_fail.append(f"cell {i}: gradient is not square under the symmetrized operator")
                continue
            image = g + g.transpose()
        else:
            image = g
        if image not in e_set:
            mem_fail.append(f"cell {i}: gradient image is not an element of E")

    # Pairwise value agreement and facet jump directions.
    shared_facet_with: list[set[int]] = [set() for _ in cells]
    for i in range(len(cells)):
        if not usable[i]:
            continue
        for j in range(i + 1, len(cells)):
            if not usable[j]:
                continue
            shared: list[Vec] = []
            touching = False
            for v in cell_verts[i]:
                if cells[j].polytope.contains(v):
                    touching = True
                    if value_at(i, v) != value_at(j, v):
                        cont_fail.append(f"cells {i}/{j}: value mismatch at a shared vertex")
                    if v not in shared:
                        shared.append(v)
            for v in cell_verts[j]:
                if cells[i].polytope.contains(v):
                    touching = True
                    if value_at(i, v) != value_at(j, v):
                        cont_fail.append(f"cells {i}/{j}: value mismatch at a shared vertex")
                    if v not in shared:
                        shared.append(v)
            if not touching or affine_dim(shared) != n - 1:
                continue
            shared_facet_with[i].add(j)
            shared_facet_with[j].add(i)
            nu = _facet_normal(shared, n)
            if nu is None:
                had_fail.append(f"cells {i}/{j}: shared facet has no unique normal")
                continue
            diff = cells[i].gradient - cells[j].gradient
            span_nu = span_of([nu], n)
            for r in range(d):
                row = diff.row(r)
                if not row.is_zero() and not span_nu.contains_vector(row):
                    had_fail.append(
                        f"cells {i}/{j}: gradient jump is not aligned with the facet normal"
                    )
                    break

    # Boundary: zero on the covering copy's boundary, and on any facet
    # that borders the uncovered region.
    copy_polys: list[Polytope] = [
        pw.base.scale_translate(c.scale, c.center) for c in pw.copies
    ]
    for i, cell in enumerate(cells):
        if not usable[i]:
            continue
        if not 0 <= cell.copy < len(copy_polys):
            bnd_fail.append(f"cell {i}: copy index out of range")
            continue
        qrows = copy_polys[cell.copy].rows()
        for v in cell_verts[i]:
            if not copy_polys[cell.copy].contains(v):
                bnd_fail.append(f"cell {i}: vertex outside its covering copy")
                break
            on_boundary = any(a.dot(v) == c for a, c in qrows)
            if on_boundary and not value_at(i, v).is_zero():
                bnd_fail.append(f"cell {i}: nonzero value on the copy boundary")
                break
        # Facets not shared with any other cell border the zero region.
        for a, c in cell.polytope.rows():
            tight = [v for v in cell_verts[i] if a.dot(v) == c]
            if affine_dim(tight) != n - 1:
                continue
            covered_by_other = any(
                all(cells[j].polytope.contains(v) for v in tight)
                for j in range(len(cells))
                if j != i and usable[j]
            )
            if covered_by_other:
                continue
            if any(not value_at(i, v).is_zero() for v in tight):
                bnd_fail.append(f"cell {i}: nonzero value on an unshared facet")
                break

    # Coverage accounting, re-measured from the cells themselves.
    covered = sum((cell_vols[i] for i in range(len(cells))), Fraction(0))
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if cell_vols[i] == 0 or cell_vols[j] == 0:
                continue
            if interiors_intersect(cells[i].polytope, cells[j].polytope):
                cov_fail.append(f"cells {i}/{j}: interiors overlap")
    if covered != pw.covered:
        cov_fail.append(
            f"claimed covered measure {pw.covered} disagrees with the re-measured {covered}"
        )
    if covered + pw.residual != omega_measure:
        cov_fail.append(
            f"measure books do not add up: {covered} + {pw.residual} != {omega_measure}"
        )
    if covered < (1 - delta) * omega_measure:
        cov_fail.append(
            f"covered measure {covered} is below the bound (1 - {delta})*{omega_measure}"
        )

    total = zero_vec(d)
    for i, cell in enumerate(cells):
        if cell_vols[i] == 0:
            continue
        total = total + integrate_affine(cell.polytope, cell.gradient, cell.offset)
    int_fail: list[str] = []
    if problem.operator == SYMMETRIZED and cells and total.is_zero():
        int_fail.append("symmetrized solution integrates to zero")

    results = {
        "wellformed": CheckResult(not wf_fail, tuple(wf_fail)),
        "membership": CheckResult(not mem_fail, tuple(mem_fail)),
        "continuity": CheckResult(not cont_fail, tuple(cont_fail)),
        "hadamard": CheckResult(not had_fail, tuple(had_fail)),
        "boundary": CheckResult(not bnd_fail, tuple(bnd_fail)),
        "coverage": CheckResult(not cov_fail, tuple(cov_fail)),
        "integral": CheckResult(not int_fail, tuple(int_fail)),
    }
    return Report(
        passed=all(r.passed for r in results.values()),
        covered=covered,
        omega_measure=omega_measure,
        integral_value=total,
        **results,
    )
