"""Exact linear algebra: rationals, vectors, matrices, subspaces."""

from __future__ import annotations

import random
from fractions import Fraction as QQ

import pytest

from inclusionkit.errors import AmbientMismatch, ContainmentViolation
from inclusionkit.linalg import (
    Mat,
    Subspace,
    Vec,
    intersect,
    kernel,
    mat,
    mat_from_flat,
    normalize_direction,
    orthogonal_complement,
    rank,
    rat,
    rat_str,
    solve_square,
    span_of,
    subspace_equal,
    subspace_sum,
    unit_vec,
    vec,
    zero_vec,
)


def rand_vec(rng: random.Random, n: int, lo: int = -5, hi: int = 5) -> Vec:
    return Vec(tuple(QQ(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(n)))


def rand_mat(rng: random.Random, m: int, n: int) -> Mat:
    return Mat(m, n, tuple(QQ(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(m * n)))


# ------------------------------------------------------------- rationals


def test_rat_accepts_ints_strings_fractions():
    assert rat(3) == QQ(3)
    assert rat("-7") == QQ(-7)
    assert rat("3/4") == QQ(3, 4)
    assert rat("-10/4") == QQ(-5, 2)
    assert rat(QQ(2, 6)) == QQ(1, 3)


def test_rat_rejects_floats_bools_and_junk():
    with pytest.raises(TypeError):
        rat(0.5)
    with pytest.raises(TypeError):
        rat(True)
    with pytest.raises(TypeError):
        rat([1])
    for bad in ("1.5", "1e3", "a/b", "1/2/3", "", "+3", "1 / 2"):
        with pytest.raises(ValueError):
            rat(bad)
    with pytest.raises(ValueError):
        rat("1/0")


def test_rat_str_is_canonical():
    assert rat_str(QQ(1, 2)) == "1/2"
    assert rat_str(QQ(4, 2)) == "2"
    assert rat_str(QQ(-3, 9)) == "-1/3"
    assert rat_str(QQ(0)) == "0"


# ------------------------------------------------------ vectors, matrices


def test_vec_algebra():
    a = vec(1, 2, 3)
    b = vec("1/2", 0, -1)
    assert a + b == vec("3/2", 2, 2)
    assert a - b == vec("1/2", 2, 4)
    assert -b == vec("-1/2", 0, 1)
    assert a.scale(QQ(2)) == vec(2, 4, 6)
    assert a.dot(b) == QQ(1, 2) - 3
    assert zero_vec(3).is_zero()
    assert not a.is_zero()
    assert unit_vec(1, 3) == vec(0, 1, 0)
    assert list(a) == [QQ(1), QQ(2), QQ(3)]


def test_mat_algebra_and_predicates():
    a = mat([[1, 2], [3, 4]])
    assert a.entry(1, 0) == QQ(3)
    assert a.row(0) == vec(1, 2)
    assert a.col(1) == vec(2, 4)
    assert a.transpose() == mat([[1, 3], [2, 4]])
    assert a.matvec(vec(1, 1)) == vec(3, 7)
    assert a.flatten() == vec(1, 2, 3, 4)
    assert (a - a).is_zero()
    assert a + a == a.scale(QQ(2))
    assert a.inner(a) == QQ(1 + 4 + 9 + 16)
    assert mat([[1, 2], [2, 5]]).is_symmetric()
    assert not a.is_symmetric()
    assert mat([[0, 1], [-1, 0]]).is_skew()
    assert not a.is_skew()
    assert mat_from_flat(2, 2, [1, 2, 3, 4]) == a


def test_mat_shape_validation():
    with pytest.raises(Exception):
        Mat(2, 2, (QQ(1), QQ(2), QQ(3)))


# ------------------------------------------------------------------ rank


def test_rank_examples():
    assert rank(mat([[1, 0], [0, 1]])) == 2
    assert rank(mat([[1, 2], [2, 4]])) == 1
    assert rank(mat([[0, 0], [0, 0]])) == 0
    assert rank(mat([[1, 2, 3], [4, 5, 6], [7, 8, 9]])) == 2


def test_rank_nullity_on_random_matrices():
    rng = random.Random(7)
    for _ in range(60):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = rand_mat(rng, m, n)
        assert rank(a) + kernel(a).dim == n
        assert rank(a) == rank(a.transpose())


def test_kernel_vectors_annihilate():
    rng = random.Random(11)
    for _ in range(40):
        a = rand_mat(rng, rng.randint(1, 4), rng.randint(1, 4))
        for k in kernel(a).basis:
            assert a.matvec(k).is_zero()


# ------------------------------------------------------------- subspaces


def test_span_canonical_basis_is_representation_free():
    s = span_of([vec(1, 1, 0), vec(0, 1, 1)])
    t = span_of([vec(1, 2, 1), vec(2, 3, 1), vec(1, 0, -1)])
    assert subspace_equal(s, t)
    assert s.basis == t.basis


def test_subspace_equal_matches_double_containment():
    rng = random.Random(23)
    for _ in range(40):
        n = rng.randint(1, 4)
        s = span_of([rand_vec(rng, n) for _ in range(rng.randint(0, n + 1))] or [zero_vec(n)], n)
        t = span_of([rand_vec(rng, n) for _ in range(rng.randint(0, n + 1))] or [zero_vec(n)], n)
        both = s.contains_subspace(t) and t.contains_subspace(s)
        assert subspace_equal(s, t) == both


def test_contains_and_coordinates_round_trip():
    s = span_of([vec(1, 1, 0), vec(0, 0, 1)])
    v = vec(2, 2, -3)
    assert s.contains_vector(v)
    coords = s.coordinates(v)
    assert coords is not None
    rebuilt = zero_vec(3)
    for c, b in zip(coords, s.basis):
        rebuilt = rebuilt + b.scale(c)
    assert rebuilt == v
    assert not s.contains_vector(vec(1, 0, 0))
    assert s.coordinates(vec(1, 0, 0)) is None


def test_zero_and_full_subspaces():
    z = Subspace.zero(3)
    f = Subspace.full(3)
    assert z.dim == 0 and f.dim == 3
    assert f.contains_subspace(z)
    assert subspace_equal(span_of([vec(1, 0, 0), vec(0, 1, 0), vec(0, 0, 1)]), f)


def test_sum_and_intersection_dimension_formula():
    rng = random.Random(31)
    for _ in range(40):
        n = rng.randint(1, 4)
        s = span_of([rand_vec(rng, n) for _ in range(rng.randint(1, n))], n)
        t = span_of([rand_vec(rng, n) for _ in range(rng.randint(1, n))], n)
        u = subspace_sum(s, t)
        w = intersect(s, t)
        assert u.dim + w.dim == s.dim + t.dim
        assert s.contains_subspace(w) and t.contains_subspace(w)
        assert u.contains_subspace(s) and u.contains_subspace(t)


def test_intersection_example():
    s = span_of([vec(1, 0, 0), vec(0, 1, 0)])
    t = span_of([vec(0, 1, 0), vec(0, 0, 1)])
    w = intersect(s, t)
    assert w.dim == 1
    assert w.contains_vector(vec(0, 1, 0))


def test_orthogonal_complement_involution_and_dims():
    rng = random.Random(43)
    full = Subspace.full(4)
    for _ in range(25):
        s = span_of([rand_vec(rng, 4) for _ in range(rng.randint(1, 4))], 4)
        c = orthogonal_complement(s, full)
        assert s.dim + c.dim == 4
        for u in s.basis:
            for w in c.basis:
                assert u.dot(w) == 0
        assert subspace_equal(orthogonal_complement(c, full), s)


def test_orthogonal_complement_within_smaller_space():
    within = span_of([vec(1, 0, 0), vec(0, 1, 0)])
    s = span_of([vec(1, 1, 0)])
    c = orthogonal_complement(s, within)
    assert c.dim == 1
    assert c.basis[0].dot(vec(1, 1, 0)) == 0
    assert within.contains_subspace(c)


def test_orthogonal_complement_needs_containment():
    within = span_of([vec(1, 0, 0)])
    s = span_of([vec(0, 1, 0)])
    with pytest.raises(ContainmentViolation):
        orthogonal_complement(s, within)


def test_ambient_mismatch_is_rejected():
    with pytest.raises(AmbientMismatch):
        subspace_equal(span_of([vec(1, 0)]), span_of([vec(1, 0, 0)]))


def test_normalize_direction():
    assert normalize_direction(vec(0, -2, 4)) == vec(0, 1, -2)
    assert normalize_direction(vec("2/3", 2)) == vec(1, 3)


# ---------------------------------------------------------- linear solve


def test_solve_square_exact_and_singular():
    sol = solve_square([[QQ(2), QQ(1)], [QQ(1), QQ(3)]], [QQ(5), QQ(10)])
    assert sol == [QQ(1), QQ(3)]
    assert solve_square([[QQ(1), QQ(2)], [QQ(2), QQ(4)]], [QQ(1), QQ(2)]) is None


def test_solve_square_random_round_trip():
    rng = random.Random(59)
    done = 0
    while done < 30:
        n = rng.randint(1, 4)
        a = rand_mat(rng, n, n)
        if rank(a) < n:
            continue
        x = rand_vec(rng, n)
        rhs = a.matvec(x)
        sol = solve_square([list(a.row(i)) for i in range(n)], list(rhs))
        assert sol == list(x)
        done += 1
