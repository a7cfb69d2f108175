"""Pyramid construction, covering, and solution assembly."""

from __future__ import annotations

import random
from fractions import Fraction as QQ

import pytest

from inclusionkit.builder import (
    build_pyramid,
    build_scalar_solution,
    assemble_solution,
    integrate,
    vitali_cover,
)
from inclusionkit.errors import BudgetExceeded, NotInterior
from inclusionkit.feasibility import (
    GRADIENT,
    SYMMETRIZED,
    InclusionProblem,
    decide_gradient,
    decide_symmetrized,
)
from inclusionkit.geometry import Polytope, unit_box, volume
from inclusionkit.linalg import mat, unit_vec, vec
from inclusionkit.products import sym_product, tensor


def pyramid_value(spec, pw, x):
    vals = [f.dot(x) + spec.apex_value for f in spec.factors]
    return min(vals)


# ----------------------------------------------------------------- pyramid


def test_hat_function_cells():
    spec, pw = build_pyramid([vec(1), vec(-1)])
    assert spec.apex_value == QQ(1)
    assert spec.redundant == ()
    assert volume(spec.base) == 2
    got = {(c.gradient.entry(0, 0), c.offset[0]) for c in pw.cells}
    assert got == {(QQ(1), QQ(1)), (QQ(-1), QQ(1))}
    by_grad = {c.gradient.entry(0, 0): c.polytope for c in pw.cells}
    assert by_grad[QQ(1)].contains(vec(QQ(-1, 2)))
    assert by_grad[QQ(-1)].contains(vec(QQ(1, 2)))
    assert integrate(pw) == QQ(1)


def test_asymmetric_hat_measure_and_cells():
    spec, pw = build_pyramid([vec(2), vec(-1)])
    assert volume(spec.base) == QQ(3, 2)
    by_grad = {c.gradient.entry(0, 0): c.polytope for c in pw.cells}
    assert by_grad[QQ(2)].contains(vec(QQ(-1, 4)))
    assert not by_grad[QQ(2)].contains(vec(QQ(1, 4)))
    assert by_grad[QQ(-1)].contains(vec(QQ(1, 2)))
    assert integrate(pw) == QQ(3, 4)


def test_square_pyramid_cells_and_integral():
    factors = [vec(1, 0), vec(-1, 0), vec(0, 1), vec(0, -1)]
    spec, pw = build_pyramid(factors)
    assert len(pw.cells) == 4
    assert volume(spec.base) == 4
    assert integrate(pw) == QQ(4, 3)
    assert sum(volume(c.polytope) for c in pw.cells) == 4


def test_redundant_factor_is_reported_and_dropped():
    spec, pw = build_pyramid([vec(2), vec(-2), vec(1)])
    assert spec.redundant == (2,)
    assert spec.factors[2] == vec(1)
    assert len(pw.cells) == 2


def test_pyramid_matches_min_formula_on_samples():
    rng = random.Random(19)
    factors = [vec(1, 1), vec(1, -1), vec(-1, 1), vec(-1, -1)]
    spec, pw = build_pyramid(factors)
    for _ in range(40):
        x = vec(QQ(rng.randint(-8, 8), 9), QQ(rng.randint(-8, 8), 9))
        want = pyramid_value(spec, pw, x)
        hits = [c for c in pw.cells if c.polytope.contains(x)]
        if want < 0:
            assert not hits
            continue
        assert hits
        for c in hits:
            assert c.gradient.matvec(x) + c.offset == vec(want)


def test_one_sided_factor_set_is_not_interior():
    with pytest.raises(NotInterior):
        build_pyramid([vec(1)])
    with pytest.raises(NotInterior):
        build_pyramid([vec(1, 0), vec(0, 1)])


def test_zero_factors_give_the_zero_function():
    pw = build_scalar_solution([vec(0, 0)], unit_box(2), QQ(1, 4))
    assert pw.cells == () and pw.copies == ()
    assert pw.covered == 0 and pw.residual == 1


# ------------------------------------------------------------------ cover


def test_interval_cover_single_copy():
    copies = vitali_cover(unit_box(1), unit_box(1), QQ(1, 4))
    assert len(copies) == 1
    assert copies[0].scale == 1


def test_trivial_tolerance_gives_empty_cover():
    assert vitali_cover(unit_box(1), unit_box(1), QQ(1)) == ()
    assert vitali_cover(unit_box(2), unit_box(2), QQ(3, 2)) == ()


def test_diamond_base_needs_many_disjoint_copies():
    diamond = Polytope.halfspaces(
        [vec(1, 1), vec(1, -1), vec(-1, 1), vec(-1, -1)], [QQ(1)] * 4
    )
    copies = vitali_cover(unit_box(2), diamond, QQ(1, 4))
    assert len(copies) > 1
    placed = [diamond.scale_translate(c.scale, c.center) for c in copies]
    covered = sum(volume(p) for p in placed)
    assert covered >= QQ(3, 4)
    # Pairwise disjoint interiors and containment in the domain.
    from inclusionkit.geometry import interiors_intersect, bounding_box

    for i in range(len(placed)):
        low, high = bounding_box(placed[i])
        assert all(x >= 0 for x in low) and all(x <= 1 for x in high)
        for j in range(i + 1, len(placed)):
            assert not interiors_intersect(placed[i], placed[j])


def test_copy_budget_is_enforced():
    diamond = Polytope.halfspaces(
        [vec(1, 1), vec(1, -1), vec(-1, 1), vec(-1, -1)], [QQ(1)] * 4
    )
    with pytest.raises(BudgetExceeded):
        vitali_cover(unit_box(2), diamond, QQ(1, 3), max_copies=1)


# --------------------------------------------------------------- assembly


def test_scalar_assembly_covers_and_integrates():
    pw = build_scalar_solution([vec(1), vec(-1)], unit_box(1), QQ(1, 4))
    assert pw.covered == 1 and pw.residual == 0
    assert len(pw.copies) == 1
    assert pw.copies[0].scale == QQ(1, 2)
    assert integrate(pw) == QQ(1, 2) ** 2 * QQ(1)


def test_vector_assembly_respects_the_matrix_set():
    b = vec(1, 2)
    e1, e2 = unit_vec(0, 2), unit_vec(1, 2)
    mats = [tensor(b, e1), tensor(b, e2), tensor(b, -(e1 + e2))]
    problem = InclusionProblem.gradient(mats)
    verdict = decide_gradient(problem)
    pw = assemble_solution(verdict, problem.domain, QQ(1, 4), GRADIENT)
    assert pw.cells
    allowed = set(mats)
    for c in pw.cells:
        assert c.gradient in allowed
    assert pw.covered >= QQ(3, 4)
    assert pw.covered + pw.residual == 1


def test_symmetrized_assembly_has_nonzero_mean():
    e1, e2 = unit_vec(0, 2), unit_vec(1, 2)
    mats = [
        sym_product(e1, e1), -sym_product(e1, e1),
        sym_product(e1, e2), -sym_product(e1, e2),
    ]
    problem = InclusionProblem.symmetrized(mats)
    verdict = decide_symmetrized(problem)
    pw = assemble_solution(verdict, problem.domain, QQ(1, 2), SYMMETRIZED)
    for c in pw.cells:
        assert c.gradient + c.gradient.transpose() in set(mats)
    total = integrate(pw)
    assert total == vec(QQ(1, 6), 0)


def test_assembly_rejects_non_feasible_verdicts():
    e11 = mat([[1, 0], [0, 0]])
    e22 = mat([[0, 0], [0, 1]])
    problem = InclusionProblem.gradient([e11, e22, -e11 - e22])
    verdict = decide_gradient(problem)
    with pytest.raises(ValueError):
        assemble_solution(verdict, problem.domain, QQ(1, 4), GRADIENT)


def test_copy_rescaling_preserves_gradients_and_zero_boundary():
    pw = build_scalar_solution([vec(1), vec(-1)], unit_box(1), QQ(1, 4))
    copy = pw.copies[0]
    for c in pw.cells:
        g = c.gradient.entry(0, 0)
        assert g in (QQ(1), QQ(-1))
        # The rescaled pyramid vanishes where the placed base's boundary is.
        lo = copy.center[0] - copy.scale
        hi = copy.center[0] + copy.scale
        for endpoint in (lo, hi):
            x = vec(endpoint)
            if c.polytope.contains(x):
                assert c.gradient.matvec(x) + c.offset == vec(0)


def test_integrate_of_empty_solution_is_zero():
    pw = build_scalar_solution([vec(1), vec(-1)], unit_box(1), QQ(1))
    assert pw.cells == ()
    assert integrate(pw) == 0
    assert pw.residual == 1
