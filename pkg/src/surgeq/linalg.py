"""Exact integer and rational matrix algebra.

Matrices are plain lists of rows. Integer matrices hold ``int``,
rational ones hold :class:`fractions.Fraction`; nothing here ever touches
floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.normalforms import smith_normal_decomp

from .errors import DimensionMismatchError, NotSymmetricError, SingularMatrixError

IntMatrix = list[list[int]]
RatMatrix = list[list[Fraction]]


def shape(A: Sequence[Sequence]) -> tuple[int, int]:
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for row in A:
        if len(row) != cols:
            raise DimensionMismatchError("ragged matrix")
    return rows, cols


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> IntMatrix:
    return [[0] * cols for _ in range(rows)]


def transpose(A):
    rows, cols = shape(A)
    return [[A[i][j] for i in range(rows)] for j in range(cols)]


def matmul(A, B):
    ra, ca = shape(A)
    rb, cb = shape(B)
    if ca != rb:
        raise DimensionMismatchError(f"cannot multiply {ra}x{ca} by {rb}x{cb}")
    Bt = transpose(B) if rb else [[] for _ in range(cb)]
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def is_symmetric(A) -> bool:
    rows, cols = shape(A)
    return rows == cols and all(A[i][j] == A[j][i] for i in range(rows) for j in range(i))


def to_fractions(A) -> RatMatrix:
    return [[Fraction(x) for x in row] for row in A]


def determinant(A) -> Fraction | int:
    """Determinant by fraction-exact Gaussian elimination.

    Returns an ``int`` when every entry is an integer.
    """
    n, cols = shape(A)
    if n != cols:
        raise DimensionMismatchError("determinant of a non-square matrix")
    integral = all(isinstance(x, int) for row in A for x in row)
    M = to_fractions(A)
    det = Fraction(1)
    for c in range(n):
        pivot = next((r for r in range(c, n) if M[r][c] != 0), None)
        if pivot is None:
            return 0
        if pivot != c:
            M[c], M[pivot] = M[pivot], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    if integral:
        return int(det)
    return det


def leading_minors(A) -> list:
    n, _ = shape(A)
    return [determinant([row[:k] for row in A[:k]]) for k in range(1, n + 1)]


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ W == D`` with ``U``, ``W`` unimodular and ``D`` diagonal."""

    U: IntMatrix
    D: IntMatrix
    W: IntMatrix

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i][i] for i in range(min(shape(self.D)))]


def smith_normal_form(A: IntMatrix) -> SmithDecomposition:
    """Smith normal form with transforms.

    The diagonal is nonnegative and each entry divides the next; zeros,
    if any, come last.
    """
    rows, cols = shape(A)
    if rows == 0 or cols == 0:
        return SmithDecomposition(identity(rows), zeros(rows, cols), identity(cols))
    dm = DomainMatrix([[ZZ(int(x)) for x in row] for row in A], (rows, cols), ZZ)
    D, U, W = smith_normal_decomp(dm)
    D, U, W = (
        [[int(x) for x in row] for row in M.to_Matrix().tolist()] for M in (D, U, W)
    )
    # normalise signs so the diagonal is nonnegative
    for i in range(min(rows, cols)):
        if D[i][i] < 0:
            D[i][i] = -D[i][i]
            U[i] = [-x for x in U[i]]
    return SmithDecomposition(U, D, W)


def invariant_factors(A: IntMatrix) -> list[int]:
    return smith_normal_form(A).diagonal


def rational_inverse(A) -> RatMatrix:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n, cols = shape(A)
    if n != cols:
        raise DimensionMismatchError("inverse of a non-square matrix")
    M = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(to_fractions(A))]
    for c in range(n):
        pivot = next((r for r in range(c, n) if M[r][c] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix has determinant zero")
        M[c], M[pivot] = M[pivot], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return [row[n:] for row in M]


def unimodular_inverse(P: IntMatrix) -> IntMatrix:
    inv = rational_inverse(P)
    if any(x.denominator != 1 for row in inv for x in row):
        raise SingularMatrixError("matrix is not invertible over the integers")
    return [[int(x) for x in row] for row in inv]


def _first_diagonal_move(D: RatMatrix) -> IntMatrix:
    """Unimodular ``P`` with ``(P^T D P)[0][0] != 0``.

    Lowest index wins: reorder to bring the first nonzero diagonal entry to
    the front; failing that, replace ``e_1`` by ``e_1 + e_j`` for the first
    ``j`` with ``D[0][j] != 0``.
    """
    n = len(D)
    P = identity(n)
    for j in range(n):
        if D[j][j] != 0:
            if j:
                P[0][0] = P[j][j] = 0
                P[0][j] = P[j][0] = 1
            return P
    for j in range(1, n):
        if D[0][j] != 0:
            P[j][0] = 1
            return P
    raise SingularMatrixError("form is degenerate")


def prefix_nonsingular_basis(q) -> IntMatrix:
    """Basis in which every leading block of a symmetric form is nonsingular.

    Given a nonsingular symmetric rational matrix ``q`` returns a unimodular
    ``P`` such that every leading principal minor of ``P^T q P`` is nonzero.
    At step ``i`` the trailing block is orthogonalised against the first
    ``i`` basis vectors over Q (``D = C - B^T A^{-1} B``), and an integral
    move putting a nonzero entry at the corner of ``D`` is applied to the
    trailing basis vectors.
    """
    n, cols = shape(q)
    if n != cols or not is_symmetric(q):
        raise NotSymmetricError("form matrix is not symmetric")
    q = to_fractions(q)
    if determinant(q) == 0:
        raise SingularMatrixError("form is singular")
    P = identity(n)
    for i in range(n):
        cur = matmul(matmul(transpose(P), q), P)
        C = [row[i:] for row in cur[i:]]
        if i:
            A = [row[:i] for row in cur[:i]]
            B = [row[i:] for row in cur[:i]]
            C_corr = matmul(matmul(transpose(B), rational_inverse(A)), B)
            D = [[c - x for c, x in zip(r1, r2)] for r1, r2 in zip(C, C_corr)]
        else:
            D = C
        step = _first_diagonal_move(D)
        block = identity(n)
        for r in range(n - i):
            for c in range(n - i):
                block[i + r][i + c] = step[r][c]
        P = matmul(P, block)
    return P
