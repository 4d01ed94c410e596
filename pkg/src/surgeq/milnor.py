"""Milnor mu-bar invariants via Magnus expansion, and free nilpotent ranks."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

from sympy import divisors, mobius

from .errors import IndexOutOfRangeError, NoLongitudeData, NotPureError
from .presentation import FramedLink
from .words import BraidWord, FreeWord

DEFAULT_MAX_LENGTH = 8

Monomial = tuple[int, ...]


def _artin_generator(i: int, sign: int, n: int) -> list[FreeWord]:
    """Images of ``x1 ... xn`` under the Artin automorphism of ``s_i^sign``."""
    x = [FreeWord.generator(k + 1) for k in range(n)]
    a, b = x[i - 1], x[i]
    images = list(x)
    if sign == 1:
        images[i - 1] = b.conjugate(a)  # x_i -> x_i x_{i+1} x_i^-1
        images[i] = a
    else:
        images[i - 1] = b
        images[i] = a.conjugate(b.inverse())  # x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}
    return images


def artin_images(braid: BraidWord) -> list[FreeWord]:
    """Images of the generators under the Artin action of the whole braid."""
    n = braid.strands
    images = [FreeWord.generator(k + 1) for k in range(n)]
    for i, sign in braid.letters:
        step = _artin_generator(i, sign, n)
        images = [w.substitute(images) for w in step]
    return images


def artin_longitudes(braid: BraidWord) -> list[FreeWord]:
    """Seifert-framed longitudes of the closure of a pure braid.

    A pure braid sends ``x_i`` to ``w_i x_i w_i^-1``; the longitude of
    component ``i`` is ``w_i x_i^-e`` with ``e`` the exponent of ``x_i`` in
    ``w_i``.
    """
    if not braid.is_pure():
        raise NotPureError("Artin longitudes need a pure braid")
    longitudes = []
    for i, img in enumerate(artin_images(braid), start=1):
        letters = img.letters
        half = len(letters) // 2
        w = FreeWord(letters[:half])
        if len(letters) % 2 != 1 or letters[half] != (i, 1) or FreeWord(letters[half + 1:]) != w.inverse():
            raise AssertionError(f"image of x{i} is not a conjugate of x{i}: {img}")
        e = w.exponent_sum(i)
        longitudes.append(w * FreeWord.generator(i, -e))
    return longitudes


@dataclass(frozen=True)
class MagnusSeries:
    """Truncated noncommutative power series in ``X1 ... Xm``.

    ``coeffs`` maps monomials (tuples of 1-based generator indices, length at
    most ``degree``) to nonzero integers; the empty tuple is the constant.
    """

    degree: int
    coeffs: dict

    def __getitem__(self, mono: Sequence[int]) -> int:
        return self.coeffs.get(tuple(mono), 0)

    def __mul__(self, other: MagnusSeries) -> MagnusSeries:
        L = min(self.degree, other.degree)
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                if len(m1) + len(m2) <= L:
                    k = m1 + m2
                    out[k] = out.get(k, 0) + c1 * c2
        return MagnusSeries(L, {k: v for k, v in out.items() if v})

    def truncate(self, L: int) -> MagnusSeries:
        return MagnusSeries(L, {k: v for k, v in self.coeffs.items() if len(k) <= L})

    def homogeneous(self, d: int) -> dict:
        return {k: v for k, v in self.coeffs.items() if len(k) == d}

    @classmethod
    def one(cls, L: int) -> MagnusSeries:
        return cls(L, {(): 1})


def magnus_expand(word: FreeWord, L: int) -> MagnusSeries:
    """Magnus expansion ``x_i -> 1 + X_i``, ``x_i^-1 -> 1 - X_i + X_i^2 - ...``, truncated at degree L."""
    if L < 1:
        raise ValueError("truncation degree must be at least 1")
    coeffs: dict = {(): 1}
    for g, e in word.letters:
        out = dict(coeffs)
        for mono, c in coeffs.items():
            tail: Monomial = mono
            sign = 1
            for _ in range(L - len(mono)):
                tail = tail + (g,)
                sign = sign if e == 1 else -sign
                out[tail] = out.get(tail, 0) + sign * c
                if e == 1:
                    break
        coeffs = {k: v for k, v in out.items() if v}
    return MagnusSeries(L, coeffs)


@dataclass(frozen=True)
class MuInvariant:
    """``mu-bar(I)`` reduced modulo its indeterminacy (0 means exact over Z)."""

    index: tuple[int, ...]
    value: int
    modulus: int

    def __str__(self):
        idx = "".join(map(str, self.index)) if max(self.index) < 10 else ",".join(map(str, self.index))
        suffix = f" mod {self.modulus}" if self.modulus else ""
        return f"mu({idx}) = {self.value}{suffix}"

    def to_json(self) -> dict:
        return {"index": list(self.index), "value": self.value, "modulus": self.modulus}


def link_longitudes(link: FramedLink) -> tuple[FreeWord, ...]:
    if link.longitudes is not None:
        return link.longitudes
    if link.braid is not None:
        return tuple(artin_longitudes(link.braid))
    raise NoLongitudeData("link has neither a braid nor longitude words")


class MilnorCalculator:
    """Caches Magnus expansions of a link's longitudes up to a fixed degree."""

    def __init__(self, link: FramedLink, max_length: int = DEFAULT_MAX_LENGTH):
        self.m = link.m
        self.longitudes = link_longitudes(link)
        self.max_length = max_length
        self.series = [magnus_expand(w, max(max_length - 1, 1)) for w in self.longitudes]
        self._delta: dict = {}

    def _check(self, index: Sequence[int]):
        if len(index) < 2:
            raise IndexOutOfRangeError("mu-bar needs an index of length at least 2")
        if len(index) > self.max_length:
            raise IndexOutOfRangeError(f"index length {len(index)} exceeds {self.max_length}")
        for i in index:
            if not 1 <= i <= self.m:
                raise IndexOutOfRangeError(f"component {i} out of range 1..{self.m}")

    def raw(self, index: Sequence[int]) -> int:
        """Magnus coefficient of ``X_{i1} ... X_{i(r-1)}`` in the longitude of ``i_r``."""
        self._check(index)
        return self.series[index[-1] - 1][tuple(index[:-1])]

    def indeterminacy(self, index: Sequence[int]) -> int:
        """gcd of ``mu(J)`` over cyclic permutations ``J`` of proper subsequences of ``I``."""
        index = tuple(index)
        if index in self._delta:
            return self._delta[index]
        r = len(index)
        g = 0
        seen = set()
        for size in range(2, r):
            for pos in itertools.combinations(range(r), size):
                sub = tuple(index[p] for p in pos)
                for s in range(size):
                    J = sub[s:] + sub[:s]
                    if J not in seen:
                        seen.add(J)
                        g = math.gcd(g, self.raw(J))
                        if g == 1:
                            self._delta[index] = 1
                            return 1
        self._delta[index] = g
        return g

    def mu_bar(self, index: Sequence[int]) -> MuInvariant:
        index = tuple(int(i) for i in index)
        value = self.raw(index)
        delta = self.indeterminacy(index)
        if delta:
            value %= delta
        return MuInvariant(index, value, delta)

    def first_nonvanishing(self, max_length: Optional[int] = None) -> Optional[MuInvariant]:
        """Lexicographically first nonzero mu-bar of the smallest length, if any.

        At that length every shorter invariant vanishes, so the indeterminacy
        is 0 and the check is exact.
        """
        top = self.max_length if max_length is None else min(max_length, self.max_length)
        for r in range(2, top + 1):
            hits = []
            for j, s in enumerate(self.series, start=1):
                for mono, c in s.homogeneous(r - 1).items():
                    hits.append((mono + (j,), c))
            if hits:
                index, value = min(hits)
                return MuInvariant(index, value, 0)
        return None

    def table(self, max_length: Optional[int] = None, nonzero_only: bool = True) -> list[MuInvariant]:
        top = self.max_length if max_length is None else min(max_length, self.max_length)
        out = []
        for r in range(2, top + 1):
            for index in itertools.product(range(1, self.m + 1), repeat=r):
                mu = self.mu_bar(index)
                if mu.value or not nonzero_only:
                    out.append(mu)
        return out


def mu_bar(link: FramedLink, index: Sequence[int]) -> MuInvariant:
    return MilnorCalculator(link, max(len(index), 2)).mu_bar(index)


def first_nonvanishing_length(link: FramedLink, max_length: int = DEFAULT_MAX_LENGTH) -> Optional[int]:
    found = MilnorCalculator(link, max_length).first_nonvanishing()
    return None if found is None else len(found.index)


@lru_cache(maxsize=None)
def witt_rank(m: int, i: int) -> int:
    """Rank of the degree-``i`` part of the free Lie ring on ``m`` generators."""
    total = sum(mobius(d) * m ** (i // d) for d in divisors(i))
    return total // i


def free_nilpotent_h3_rank(m: int, k: int) -> int:
    """Rank of ``H_3(F/F_k)`` for ``F`` free of rank ``m``.

    Sum over ``i = k .. 2k-2`` of ``m N_i - N_(i+1)`` with ``N_i`` the Witt
    number, i.e. the rank of ``H_2(F/F_i) = F_i/F_(i+1)``.
    """
    if m < 1 or k < 2:
        raise ValueError("need m >= 1 and k >= 2")
    return sum(m * witt_rank(m, i) - witt_rank(m, i + 1) for i in range(k, 2 * k - 1))
