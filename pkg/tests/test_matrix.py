from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

import oracles
from conftest import small_fractions
from mgl.matrix import (
    ALL,
    Mat2,
    MatrixSet,
    ScalarKindError,
    apply,
    det,
    eigenvalues,
    mat_mul,
    mat_pow,
    op_norm_2,
    real_eigenlines,
    spectral_radius,
    sum_norm,
    trace,
    upper_right_seminorm,
)
from mgl.scalars import QuadScalar

half = Fraction(1, 2)
J = Mat2(1, 1, 0, 1)
ROT90 = Mat2(0, -1, 1, 0)

mats = st.builds(Mat2, small_fractions(), small_fractions(), small_fractions(), small_fractions())
tri_unit = st.builds(
    lambda a, b, d: Mat2(a, b, 0, d),
    small_fractions(-1, 1),
    small_fractions(),
    small_fractions(-1, 1),
)


def as_rows(m):
    return tuple(tuple(r) for r in m.rows)


# mat_mul -------------------------------------------------------------------


def test_identity_product():
    assert mat_mul(Mat2.identity(), Mat2.identity()) == Mat2.identity()


def test_det_minus_one_pair_product():
    assert mat_mul(Mat2(1, 1, 0, -1), Mat2(1, 0, 0, -1)) == Mat2(1, -1, 0, 1)


@pytest.mark.parametrize("n", [0, 1, 2, 7, 100])
def test_jordan_power(n):
    assert mat_pow(J, n) == Mat2(1, n, 0, 1)


def test_float_and_exact_do_not_mix():
    with pytest.raises(ScalarKindError):
        mat_mul(J, Mat2(1.0, 1.0, 0.0, 1.0))


def test_mixed_entries_rejected():
    with pytest.raises(ScalarKindError):
        Mat2(half, 1.0, 0, 1)


def test_two_quadratic_fields_rejected():
    with pytest.raises(ScalarKindError):
        mat_mul(Mat2(QuadScalar(0, 1, 2), 0, 0, 1), Mat2(QuadScalar(0, 1, 3), 0, 0, 1))


@given(mats, mats)
def test_product_matches_oracle(a, b):
    assert as_rows(mat_mul(a, b)) == oracles.mul(as_rows(a), as_rows(b))


@given(mats, mats, mats)
def test_associative(a, b, c):
    assert (a @ b) @ c == a @ (b @ c)


# det / trace / spectral radius ------------------------------------------------


def test_det_examples():
    assert det(Mat2(1, 5, 0, -1)) == -1
    assert det(ROT90) == 1
    assert trace(Mat2(1, 1, 0, half)) == Fraction(3, 2)


@pytest.mark.parametrize(
    "m, rho",
    [(J, 1), (ROT90, 1), (Mat2(2, 0, 0, half), 2), (Mat2(0, 1, 1, 0), 1)],
)
def test_spectral_radius(m, rho):
    assert spectral_radius(m) == rho


def test_spectral_radius_quadratic():
    # eigenvalues of [[1,1],[1,0]] are (1 +- sqrt 5)/2
    assert spectral_radius(Mat2(1, 1, 1, 0)) == QuadScalar(half, half, 5)


def test_spectral_radius_float_complex_pair():
    c, s = math.cos(1.0), math.sin(1.0)
    assert math.isclose(spectral_radius(Mat2(2 * c, -2 * s, 2 * s, 2 * c)), 2.0)


# norms ------------------------------------------------------------------------


def test_sum_norm_examples():
    assert sum_norm(Mat2.identity()) == 2
    beta, m = Fraction(1, 3), Fraction(5, 2)
    assert sum_norm(Mat2(1, m, 0, beta)) == 1 + m + beta
    assert sum_norm(Mat2(0, 0, 0, 0)) == 0


@pytest.mark.parametrize("n", [1, 2, 10, 1000])
def test_op_norm_jordan_power(n):
    v = op_norm_2(Mat2(1, n, 0, 1))
    assert n <= v <= n + 2
    assert math.isclose(v, (n + math.sqrt(n * n + 4)) / 2)


def test_op_norm_orthogonal_and_diagonal():
    assert math.isclose(op_norm_2(Mat2(Fraction(3, 5), Fraction(-4, 5), Fraction(4, 5), Fraction(3, 5))), 1.0)
    assert op_norm_2(Mat2(-3, 0, 0, 2)) == 3.0


@given(mats)
def test_op_norm_matches_oracle(m):
    assert math.isclose(op_norm_2(m), oracles.spectral_norm(as_rows(m)), rel_tol=1e-12, abs_tol=1e-12)


@given(mats, st.floats(0, 2 * math.pi), st.floats(0, 2 * math.pi))
def test_op_norm_rotation_invariant(m, s, t):
    def rot(a):
        return Mat2(math.cos(a), -math.sin(a), math.sin(a), math.cos(a))

    mf = m.to_float()
    assert abs(op_norm_2(rot(s) @ mf @ rot(t)) - op_norm_2(mf)) <= 1e-12 * (1 + op_norm_2(mf))


@given(mats, mats)
def test_sum_norm_submultiplicative(a, b):
    assert sum_norm(a @ b) <= sum_norm(a) * sum_norm(b)


def test_seminorm_examples():
    assert upper_right_seminorm(J) == 1
    assert upper_right_seminorm(Mat2(1, 0, 0, -1)) == 0
    assert upper_right_seminorm(Mat2(1, Fraction(-3, 2), 0, half)) == Fraction(3, 2)


@given(tri_unit, tri_unit)
def test_seminorm_subadditive(a, b):
    assert upper_right_seminorm(a @ b) <= upper_right_seminorm(a) + upper_right_seminorm(b)


# eigenlines ---------------------------------------------------------------------


def test_eigenlines_examples():
    assert real_eigenlines(Mat2(2, 0, 0, 3)) == [(1, 0), (0, 1)]
    assert real_eigenlines(ROT90) is None
    assert real_eigenlines(Mat2(0, 1, 1, 0)) == [(1, 1), (1, -1)]
    assert real_eigenlines(Mat2(3, 0, 0, 3)) is ALL


def _check_eigenline(m, v):
    w = apply(m, v)
    # w parallel to v, exactly
    assert w[0] * v[1] - w[1] * v[0] == 0
    assert any(x != 0 for x in v)


@given(mats)
def test_eigenlines_are_exact(m):
    lines = real_eigenlines(m)
    if lines is None:
        assert trace(m) ** 2 - 4 * det(m) < 0
    elif lines is ALL:
        assert m.e12 == m.e21 == 0 and m.e11 == m.e22
    else:
        assert 1 <= len(lines) <= 2
        for v in lines:
            _check_eigenline(m, v)


@given(mats)
def test_eigenvalues_of_triangular_are_diagonal(m):
    t = Mat2(m.e11, m.e12, 0, m.e22)
    assert sorted(eigenvalues(t)) == sorted([m.e11, m.e22])


# MatrixSet ------------------------------------------------------------------------


def test_matrix_set_rules():
    with pytest.raises(ValueError):
        MatrixSet([])
    with pytest.raises(ValueError):
        MatrixSet([Mat2(1, 1, 1, 1)])
    with pytest.raises(ScalarKindError):
        MatrixSet([J, Mat2(1.0, 0.0, 0.0, 1.0)])


def test_word_product_order():
    a, b = Mat2(1, 1, 0, -1), Mat2(1, 0, 0, -1)
    s = MatrixSet([a, b])
    # first symbol acts first
    assert s.word_product((2, 1)) == a @ b
    assert as_rows(s.word_product((2, 1))) == oracles.word_product([as_rows(a), as_rows(b)], (2, 1))


def test_json_round_trip():
    s = MatrixSet([Mat2(half, 1, 0, QuadScalar(0, 1, 2) / 2), J])
    assert MatrixSet.from_json(s.to_json()) == s
    f = MatrixSet([Mat2(0.5, 1.0, 0.0, 1.0)])
    assert MatrixSet.from_json(f.to_json()) == f
