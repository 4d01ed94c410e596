from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from helpers import int_matrices, symmetric_matrices
from surgeq.errors import SingularMatrixError
from surgeq.linalg import (
    determinant,
    identity,
    invariant_factors,
    leading_minors,
    matmul,
    prefix_nonsingular_basis,
    rational_inverse,
    smith_normal_form,
    transpose,
    zeros,
)


def _is_diagonal(D):
    return all(D[i][j] == 0 for i in range(len(D)) for j in range(len(D[0])) if i != j)


@pytest.mark.parametrize("A, diag", [
    (identity(3), [1, 1, 1]),
    (zeros(2, 2), [0, 0]),
    ([[3, 1], [1, 2]], [1, 5]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 1], [1, 0]], [1, 1]),
])
def test_smith_examples(A, diag):
    assert smith_normal_form(A).diagonal == diag


def test_zero_matrix_transforms_may_be_identity():
    snf = smith_normal_form(zeros(3, 3))
    assert snf.D == zeros(3, 3)
    assert abs(determinant(snf.U)) == abs(determinant(snf.W)) == 1


@given(int_matrices(square=False))
def test_smith_decomposition_properties(A):
    snf = smith_normal_form(A)
    assert matmul(matmul(snf.U, A), snf.W) == snf.D
    assert abs(determinant(snf.U)) == 1 and abs(determinant(snf.W)) == 1
    assert _is_diagonal(snf.D)
    d = snf.diagonal
    assert all(x >= 0 for x in d)
    for a, b in zip(d, d[1:]):
        assert (b % a == 0) if a else b == 0


@given(int_matrices())
def test_smith_preserves_determinant(A):
    assert abs(determinant(A)) == math.prod(smith_normal_form(A).diagonal)


def test_invariant_factors():
    assert invariant_factors([[6, 0], [0, 4]]) == [2, 12]


@pytest.mark.parametrize("A, inv", [
    (identity(2), [[1, 0], [0, 1]]),
    ([[2]], [[Fraction(1, 2)]]),
    ([[3, 1], [1, 2]], [[Fraction(2, 5), Fraction(-1, 5)], [Fraction(-1, 5), Fraction(3, 5)]]),
])
def test_rational_inverse_examples(A, inv):
    assert rational_inverse(A) == inv


def test_rational_inverse_singular():
    with pytest.raises(SingularMatrixError):
        rational_inverse([[1, 2], [2, 4]])


@given(int_matrices(max_n=4))
def test_rational_inverse_roundtrip(A):
    if determinant(A) == 0:
        with pytest.raises(SingularMatrixError):
            rational_inverse(A)
        return
    assert matmul(A, rational_inverse(A)) == identity(len(A))


def _congruent(q, P):
    return matmul(matmul(transpose(P), q), P)


@pytest.mark.parametrize("q, P", [
    (identity(3), identity(3)),
    ([[0, 1], [1, 0]], [[1, 0], [1, 1]]),
    ([[Fraction(1, 2), 0], [0, 3]], identity(2)),
])
def test_prefix_nonsingular_examples(q, P):
    assert prefix_nonsingular_basis(q) == P


def test_hyperbolic_plane_minors():
    q2 = _congruent([[0, 1], [1, 0]], prefix_nonsingular_basis([[0, 1], [1, 0]]))
    assert q2 == [[2, 1], [1, 0]]
    assert leading_minors(q2) == [2, -1]


@given(symmetric_matrices(max_n=6), st.integers(1, 4))
def test_prefix_nonsingular_property(A, denom):
    q = [[Fraction(x, denom) for x in row] for row in A]
    if determinant(q) == 0:
        return
    P = prefix_nonsingular_basis(q)
    assert abs(determinant(P)) == 1
    assert all(x != 0 for x in leading_minors(_congruent(q, P)))
