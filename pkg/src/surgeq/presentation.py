"""Framed-link surgery presentations in S^3.

A framing ``p/q`` is stored as a :class:`fractions.Fraction`, which already
enforces ``gcd(p, q) = 1`` and ``q >= 1``; ``q = 1`` is integral surgery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .errors import PresentationError
from .linalg import IntMatrix, determinant
from .words import BraidWord, FreeWord


def continued_fraction(r: Fraction) -> list[int]:
    """Chain coefficients ``a1 ... ak`` with ``r = a1 - 1/(a2 - 1/(... - 1/ak))``.

    For ``r > 0`` every ``a_i`` after the first is at least 2 (``a1`` is
    ``ceil(r)``); negative ``r`` expands ``-r`` and negates every term.
    """
    r = Fraction(r)
    if r < 0:
        return [-a for a in continued_fraction(-r)]
    terms = []
    while True:
        a = math.ceil(r)
        terms.append(a)
        if a == r:
            return terms
        r = 1 / (a - r)


def recombine(terms: Sequence[int]) -> Fraction:
    value = Fraction(terms[-1])
    for a in reversed(terms[:-1]):
        value = a - 1 / value
    return value


@dataclass(frozen=True)
class FramedLink:
    """Surgery presentation: framed components plus linking data.

    ``lk`` is the symmetric matrix of pairwise linking numbers in S^3 (zero
    diagonal). ``braid`` and ``longitudes`` are optional descriptions of
    the link itself, needed only for Milnor invariants; longitudes are
    Seifert-framed words in the meridians ``x1 ... xm``.
    """

    framings: tuple[Fraction, ...]
    lk: tuple[tuple[int, ...], ...]
    braid: Optional[BraidWord] = None
    longitudes: Optional[tuple[FreeWord, ...]] = None
    name: str = field(default="", compare=False)

    def __post_init__(self):
        framings = tuple(Fraction(f) for f in self.framings)
        lk = tuple(tuple(int(x) for x in row) for row in self.lk)
        object.__setattr__(self, "framings", framings)
        object.__setattr__(self, "lk", lk)
        if self.longitudes is not None:
            object.__setattr__(self, "longitudes", tuple(self.longitudes))
        self._validate()

    def _validate(self):
        m = self.m
        if len(self.lk) != m or any(len(row) != m for row in self.lk):
            raise PresentationError(f"lk must be {m}x{m}")
        for i in range(m):
            if self.lk[i][i] != 0:
                raise PresentationError(f"lk diagonal entry {i + 1} is nonzero")
            for j in range(i):
                if self.lk[i][j] != self.lk[j][i]:
                    raise PresentationError(f"lk not symmetric at ({i + 1},{j + 1})")
        if self.braid is not None:
            if self.braid.strands != m:
                raise PresentationError(f"braid has {self.braid.strands} strands for {m} components")
            if not self.braid.is_pure():
                raise PresentationError("braid is not pure")
            if self.braid.crossing_linking_numbers() != [list(r) for r in self.lk]:
                raise PresentationError("braid linking numbers disagree with lk")
        if self.longitudes is not None:
            if len(self.longitudes) != m:
                raise PresentationError(f"{len(self.longitudes)} longitudes for {m} components")
            for i, w in enumerate(self.longitudes):
                if w.max_generator() > m:
                    raise PresentationError(f"longitude {i + 1} uses a generator beyond x{m}")
                for j in range(m):
                    if w.exponent_sum(j + 1) != self.lk[i][j]:
                        raise PresentationError(
                            f"exponent sum of x{j + 1} in longitude {i + 1} is "
                            f"{w.exponent_sum(j + 1)}, expected lk = {self.lk[i][j]}"
                        )

    @property
    def m(self) -> int:
        return len(self.framings)

    @property
    def is_integral(self) -> bool:
        return all(f.denominator == 1 for f in self.framings)

    @property
    def has_link_data(self) -> bool:
        return self.braid is not None or self.longitudes is not None

    @classmethod
    def unlink(cls, framings: Sequence, name: str = "") -> FramedLink:
        m = len(framings)
        return cls(tuple(Fraction(f) for f in framings), tuple((0,) * m for _ in range(m)),
                   longitudes=tuple(FreeWord() for _ in range(m)), name=name)

    @classmethod
    def from_braid(cls, braid: BraidWord, framings=None, name: str = "") -> FramedLink:
        m = braid.strands
        if framings is None:
            framings = [0] * m
        lk = braid.crossing_linking_numbers()
        return cls(tuple(Fraction(f) for f in framings), tuple(map(tuple, lk)), braid=braid, name=name)

    @classmethod
    def from_longitudes(cls, longitudes: Sequence[FreeWord], framings=None, name: str = "") -> FramedLink:
        m = len(longitudes)
        if framings is None:
            framings = [0] * m
        lk = [[0 if i == j else longitudes[i].exponent_sum(j + 1) for j in range(m)] for i in range(m)]
        return cls(tuple(Fraction(f) for f in framings), tuple(map(tuple, lk)),
                   longitudes=tuple(longitudes), name=name)

    @classmethod
    def from_linking_matrix(cls, V: IntMatrix, name: str = "") -> FramedLink:
        """Integral presentation read off a symmetric linking matrix."""
        m = len(V)
        lk = [[0 if i == j else V[i][j] for j in range(m)] for i in range(m)]
        return cls(tuple(Fraction(V[i][i]) for i in range(m)), tuple(map(tuple, lk)), name=name)


def presentation_matrix(link: FramedLink) -> IntMatrix:
    """Matrix ``A`` with ``A_ii = p_i`` and ``A_ij = q_i lk(i,j)``.

    Row ``i`` is the relation ``p_i mu_i + q_i lambda_i = 0`` in the
    meridian basis, so ``coker`` of the relations is ``H_1``. For integral
    framings this is the (symmetric) linking matrix.
    """
    m = link.m
    A = []
    for i, f in enumerate(link.framings):
        p, q = f.numerator, f.denominator
        A.append([p if i == j else q * link.lk[i][j] for j in range(m)])
    return A


def rational_linking_matrix(link: FramedLink) -> list[list[Fraction]]:
    """Symmetric rational matrix: framings on the diagonal, lk off it."""
    m = link.m
    return [[link.framings[i] if i == j else Fraction(link.lk[i][j]) for j in range(m)] for i in range(m)]


def expand_to_integral(link: FramedLink) -> FramedLink:
    """Replace every ``p/q`` component by a chain of integrally framed circles.

    The first circle keeps the component's index and linking numbers; the
    remaining chain circles are appended after all original components,
    each linking its predecessor once. Braid and longitude data are
    dropped when anything is expanded.
    """
    if link.is_integral:
        return link
    m = link.m
    chains = [continued_fraction(f) for f in link.framings]
    total = m + sum(len(c) - 1 for c in chains)
    lk = [[0] * total for _ in range(total)]
    for i in range(m):
        for j in range(m):
            lk[i][j] = link.lk[i][j]
    framings = [Fraction(c[0]) for c in chains]
    nxt = m
    for i, chain in enumerate(chains):
        prev = i
        for a in chain[1:]:
            framings.append(Fraction(a))
            lk[prev][nxt] = lk[nxt][prev] = 1
            prev = nxt
            nxt += 1
    return FramedLink(tuple(framings), tuple(map(tuple, lk)), name=link.name)


def mirror(link: FramedLink) -> FramedLink:
    """Presentation of the orientation-reversed manifold."""
    return FramedLink(
        tuple(-f for f in link.framings),
        tuple(tuple(-x for x in row) for row in link.lk),
        braid=link.braid.mirror() if link.braid is not None else None,
        longitudes=tuple(w.mirror() for w in link.longitudes) if link.longitudes is not None else None,
        name=f"mirror({link.name})" if link.name else "",
    )


def is_admissible_2surgery(link: FramedLink) -> bool:
    """All framings +-1 integral and all linking numbers zero."""
    return all(f in (1, -1) for f in link.framings) and not any(any(row) for row in link.lk)


def is_admissible_rational_2surgery(link: FramedLink) -> bool:
    return determinant(presentation_matrix(link)) != 0
