"""Free-group words and braid words, with their text formats.

A free word is written ``"x1 x2^-1 x1^-1 x2"``; a braid word as
``"s1 s2^-1 s1"``. Exponents other than +-1 are expanded into repeated
letters on parsing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import NotPureError, ParseError

_TOKEN = re.compile(r"^([A-Za-z]+)(\d+)(?:\^(-?\d+))?$")


def _parse_letters(text: str, prefix: str) -> list[tuple[int, int]]:
    letters = []
    for tok in text.replace("*", " ").split():
        m = _TOKEN.match(tok)
        if not m or m.group(1) != prefix:
            raise ParseError(f"bad letter {tok!r} (expected {prefix}<n> or {prefix}<n>^<k>)")
        gen = int(m.group(2))
        power = int(m.group(3)) if m.group(3) is not None else 1
        if gen < 1:
            raise ParseError(f"generator index must be positive in {tok!r}")
        sign = 1 if power > 0 else -1
        letters.extend([(gen, sign)] * abs(power))
    return letters


def _format_letters(letters, prefix: str) -> str:
    return " ".join(f"{prefix}{g}" if e == 1 else f"{prefix}{g}^-1" for g, e in letters)


def _reduce(letters) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


@dataclass(frozen=True)
class FreeWord:
    """Freely reduced word in generators ``x1 ... xm``.

    Letters are ``(generator, +-1)`` pairs, generators 1-based.
    """

    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(tuple((int(g), int(e)) for g, e in self.letters)))

    @classmethod
    def parse(cls, text: str) -> FreeWord:
        return cls(tuple(_parse_letters(text, "x")))

    @classmethod
    def generator(cls, i: int, power: int = 1) -> FreeWord:
        sign = 1 if power > 0 else -1
        return cls(((i, sign),) * abs(power))

    def __str__(self):
        return _format_letters(self.letters, "x")

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return FreeWord(self.letters + other.letters)

    def inverse(self) -> FreeWord:
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, n: int) -> FreeWord:
        base = self if n >= 0 else self.inverse()
        return FreeWord(base.letters * abs(n))

    def conjugate(self, g: FreeWord) -> FreeWord:
        """``g * self * g^-1``."""
        return g * self * g.inverse()

    def exponent_sum(self, gen: int) -> int:
        return sum(e for g, e in self.letters if g == gen)

    def max_generator(self) -> int:
        return max((g for g, _ in self.letters), default=0)

    def substitute(self, images) -> FreeWord:
        """Image under the endomorphism ``x_i -> images[i-1]``."""
        out: list[tuple[int, int]] = []
        for g, e in self.letters:
            w = images[g - 1]
            out.extend(w.letters if e == 1 else w.inverse().letters)
        return FreeWord(tuple(out))

    def mirror(self) -> FreeWord:
        """Replace every generator by its inverse (orientation reversal of S^3)."""
        return FreeWord(tuple((g, -e) for g, e in self.letters))


def commutator(a: FreeWord, b: FreeWord) -> FreeWord:
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class BraidWord:
    """Word in the standard braid generators ``s1 ... s(n-1)``."""

    strands: int
    letters: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        for i, e in letters:
            if not 1 <= i < self.strands or e not in (1, -1):
                raise ParseError(f"braid letter s{i}^{e} invalid on {self.strands} strands")
        object.__setattr__(self, "letters", letters)

    @classmethod
    def parse(cls, strands: int, text: str) -> BraidWord:
        return cls(strands, tuple(_parse_letters(text, "s")))

    def __str__(self):
        return _format_letters(self.letters, "s")

    def __mul__(self, other: BraidWord) -> BraidWord:
        return BraidWord(max(self.strands, other.strands), self.letters + other.letters)

    def __pow__(self, n: int) -> BraidWord:
        base = self if n >= 0 else self.inverse()
        return BraidWord(self.strands, base.letters * abs(n))

    def inverse(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -e) for i, e in reversed(self.letters)))

    def mirror(self) -> BraidWord:
        return BraidWord(self.strands, tuple((i, -e) for i, e in self.letters))

    def permutation(self) -> list[int]:
        """``perm[p]`` is the strand (0-based start position) ending at position ``p``."""
        perm = list(range(self.strands))
        for i, _ in self.letters:
            perm[i - 1], perm[i] = perm[i], perm[i - 1]
        return perm

    def is_pure(self) -> bool:
        return self.permutation() == list(range(self.strands))

    def crossing_linking_numbers(self) -> list[list[int]]:
        """Pairwise linking numbers of the closure, counted from crossings.

        Valid for pure braids only: each crossing between strands ``a`` and
        ``b`` contributes half its sign to ``lk(a, b)``.
        """
        if not self.is_pure():
            raise NotPureError("linking numbers by strand need a pure braid")
        n = self.strands
        twice = [[0] * n for _ in range(n)]
        at = list(range(n))
        for i, e in self.letters:
            a, b = at[i - 1], at[i]
            twice[a][b] += e
            twice[b][a] += e
            at[i - 1], at[i] = b, a
        return [[x // 2 for x in row] for row in twice]
