"""First homology and the torsion linking form of a surgered manifold."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatchError, NotSymmetricError, SingularMatrixError
from .linalg import (
    IntMatrix,
    is_symmetric,
    rational_inverse,
    shape,
    smith_normal_form,
    transpose,
    unimodular_inverse,
)
from .presentation import FramedLink, presentation_matrix, rational_linking_matrix


@dataclass(frozen=True)
class FirstHomology:
    """``Z^betti + Z/d1 + Z/d2 + ...`` with ``d1 | d2 | ...`` and each ``d_i >= 2``."""

    betti: int
    factors: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))

    @property
    def torsion_order(self) -> int:
        return math.prod(self.factors)

    @property
    def is_torsion_free(self) -> bool:
        return not self.factors

    def __str__(self):
        parts = [f"Z^{self.betti}"] if self.betti else []
        parts += [f"Z/{d}" for d in self.factors]
        return " + ".join(parts) or "0"

    def to_json(self) -> dict:
        return {"betti": self.betti, "factors": list(self.factors)}


def frac_mod1(x: Fraction) -> Fraction:
    return x - math.floor(x)


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class LinkingForm:
    """Symmetric ``Q/Z``-valued pairing on ``Z/orders[0] + Z/orders[1] + ...``.

    ``values[i][j]`` is the pairing of generators ``i`` and ``j``, reduced
    into ``[0, 1)``.
    """

    orders: tuple[int, ...]
    values: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        orders = tuple(int(d) for d in self.orders)
        values = tuple(tuple(frac_mod1(Fraction(x)) for x in row) for row in self.values)
        if len(values) != len(orders) or any(len(r) != len(orders) for r in values):
            raise DimensionMismatchError("value matrix does not match the number of generators")
        for i, j in itertools.product(range(len(orders)), repeat=2):
            if values[i][j] != values[j][i]:
                raise NotSymmetricError("linking form values are not symmetric")
            if math.gcd(orders[i], orders[j]) % values[i][j].denominator:
                raise ValueError(f"value ({i},{j}) has a denominator not dividing the generator orders")
        object.__setattr__(self, "orders", orders)
        object.__setattr__(self, "values", values)

    @property
    def rank(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def pair(self, x, y) -> Fraction:
        """Pairing of two elements given by coordinates in the generators."""
        return frac_mod1(sum(
            x[i] * y[j] * self.values[i][j] for i in range(self.rank) for j in range(self.rank)
        ))

    def elements(self):
        return itertools.product(*(range(d) for d in self.orders))

    def is_nondegenerate(self) -> bool:
        """Brute-force check that no nonzero element pairs trivially with everything."""
        basis = [tuple(int(i == j) for j in range(self.rank)) for i in range(self.rank)]
        for x in self.elements():
            if any(x) and all(self.pair(x, e) == 0 for e in basis):
                return False
        return True

    def to_json(self) -> dict:
        return {
            "orders": list(self.orders),
            "values": [[format_fraction(x) for x in row] for row in self.values],
        }


def first_homology(A: IntMatrix) -> FirstHomology:
    """``coker`` of a square presentation matrix."""
    n, cols = shape(A)
    if n != cols:
        raise DimensionMismatchError("presentation matrix must be square")
    diag = smith_normal_form(A).diagonal
    return FirstHomology(betti=sum(1 for d in diag if d == 0), factors=tuple(d for d in diag if d > 1))


def link_homology(link: FramedLink) -> FirstHomology:
    return first_homology(presentation_matrix(link))


def _torsion_basis(V: IntMatrix):
    """Torsion generators (as lifts in ``Z^m``), their orders, and solution vectors.

    With ``U V W = D``, the class of ``U^-1 e_i`` has order ``d_i`` and
    ``z = W e_i`` solves ``V z = d_i U^-1 e_i``.
    """
    snf = smith_normal_form(V)
    Uinv = unimodular_inverse(snf.U)
    idx = [i for i, d in enumerate(snf.diagonal) if d > 1]
    lifts = [[Uinv[r][i] for r in range(len(V))] for i in idx]
    sols = [[snf.W[r][i] for r in range(len(V))] for i in idx]
    orders = [snf.diagonal[i] for i in idx]
    return lifts, orders, sols


def linking_form(V: IntMatrix) -> LinkingForm:
    """Linking form on the torsion of ``coker V`` for a symmetric integral ``V``.

    For torsion classes ``x, y`` with lifts ``x~, y~`` and ``V z = n x~``
    (``n`` the order of ``x``), ``lambda(x, y) = (z . y~) / n mod 1``.
    Generators follow the invariant-factor decomposition.
    """
    if not is_symmetric(V):
        raise NotSymmetricError("linking matrix must be symmetric")
    lifts, orders, sols = _torsion_basis(V)
    values = [
        [Fraction(sum(a * b for a, b in zip(sols[i], lifts[j])), orders[i]) for j in range(len(orders))]
        for i in range(len(orders))
    ]
    return LinkingForm(tuple(orders), tuple(map(tuple, values)))


def class_order(V: IntMatrix, x) -> int:
    """Order of the class of ``x`` in ``coker V`` (0 when infinite)."""
    snf = smith_normal_form(V)
    c = [sum(u * v for u, v in zip(row, x)) for row in snf.U]
    order = 1
    for ci, d in zip(c, snf.diagonal):
        if d == 0:
            if ci:
                return 0
        else:
            order = math.lcm(order, d // math.gcd(d, ci))
    return order


def linking_pairing(V: IntMatrix, x, y, z=None) -> Fraction:
    """``lambda(x, y)`` straight from the definition, for torsion lifts ``x, y``.

    ``z`` may be any solution of ``V z = n x``; when omitted, one is found
    over Q (``V`` nonsingular) and checked to be integral.
    """
    n = class_order(V, x)
    if n == 0:
        raise ValueError("x is not a torsion class")
    if z is None:
        Vinv = rational_inverse(V)
        z = [n * sum(a * b for a, b in zip(row, x)) for row in Vinv]
        if any(Fraction(t).denominator != 1 for t in z):
            raise SingularMatrixError("no integral solution found")
    Vz = [sum(a * b for a, b in zip(row, z)) for row in V]
    if Vz != [n * t for t in x]:
        raise ValueError("z does not solve V z = n x")
    return frac_mod1(Fraction(sum(a * b for a, b in zip(z, y)), n))


def rational_linking_form(link: FramedLink) -> LinkingForm:
    """Linking form read directly off a rational presentation.

    Meridians pair by the inverse of the rational linking matrix (framings
    ``p/q`` on the diagonal); generators come from the invariant-factor
    decomposition of the relation matrix. Independent of chain expansion.
    Requires a rationally nonsingular presentation.
    """
    Q = rational_linking_matrix(link)
    Qinv = rational_inverse(Q)
    R = transpose(presentation_matrix(link))
    lifts, orders, _ = _torsion_basis(R)
    values = [
        [sum(lifts[i][a] * Qinv[a][b] * lifts[j][b] for a in range(link.m) for b in range(link.m))
         for j in range(len(orders))]
        for i in range(len(orders))
    ]
    return LinkingForm(tuple(orders), tuple(map(tuple, values)))
