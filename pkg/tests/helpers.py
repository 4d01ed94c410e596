"""Shared strategies and brute-force oracles for the test suite."""

from __future__ import annotations

import math
import random
from fractions import Fraction

from hypothesis import strategies as st

from surgeq.homology import LinkingForm
from surgeq.presentation import FramedLink
from surgeq.words import BraidWord

# acceptance lines collected for the terminal summary
ACCEPTANCE: list[str] = []


def int_matrices(max_n=5, lo=-6, hi=6, square=True):
    @st.composite
    def build(draw):
        n = draw(st.integers(1, max_n))
        c = n if square else draw(st.integers(1, max_n))
        return [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(n)]
    return build()


@st.composite
def symmetric_matrices(draw, max_n=4, lo=-5, hi=5):
    n = draw(st.integers(1, max_n))
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            A[i][j] = A[j][i] = draw(st.integers(lo, hi))
    return A


@st.composite
def rational_links(draw, max_m=3, bound=9):
    m = draw(st.integers(1, max_m))
    framings = []
    for _ in range(m):
        q = draw(st.integers(1, bound))
        p = draw(st.integers(-bound, bound))
        framings.append(Fraction(p, q))
    lk = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            lk[i][j] = lk[j][i] = draw(st.integers(-3, 3))
    return FramedLink(tuple(framings), tuple(map(tuple, lk)))


def random_rational_link(rng: random.Random, max_m=3, bound=9) -> FramedLink:
    m = rng.randint(1, max_m)
    framings = tuple(Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(m))
    lk = [[0] * m for _ in range(m)]
    for i in range(m):
        for j in range(i + 1, m):
            lk[i][j] = lk[j][i] = rng.randint(-3, 3)
    return FramedLink(framings, tuple(map(tuple, lk)))


def random_pure_braid(rng: random.Random, strands: int, pieces: int = 3) -> BraidWord:
    """Product of conjugates ``w s_i^{+-2} w^-1``; always pure."""
    out = BraidWord(strands, ())
    for _ in range(pieces):
        w = BraidWord(strands, tuple(
            (rng.randint(1, strands - 1), rng.choice((1, -1))) for _ in range(rng.randint(0, 4))
        ))
        s = BraidWord(strands, ((rng.randint(1, strands - 1), rng.choice((1, -1))),))
        out = out * w * s * s * w.inverse()
    return out


def cyclic_form(a: int, n: int) -> LinkingForm:
    return LinkingForm((n,), ((Fraction(a, n),),))


def brute_unit_square_orbit(a: int, n: int) -> set[int]:
    """All ``k^2 a mod n`` over units ``k``: the classes reachable by automorphisms."""
    return {(k * k * a) % n for k in range(n) if math.gcd(k, n) == 1}


def brute_isometric(f1: LinkingForm, f2: LinkingForm) -> bool:
    """Exhaustive search over all assignments of generator images (tiny groups only)."""
    import itertools

    if sorted(f1.orders) != sorted(f2.orders) and f1.order != f2.order:
        return False
    elems = list(f2.elements())
    for imgs in itertools.product(elems, repeat=f1.rank):
        ok = all(
            (f1.orders[i] * c) % d == 0 for i, y in enumerate(imgs) for c, d in zip(y, f2.orders)
        )
        if not ok:
            continue
        if any(f2.pair(imgs[i], imgs[j]) != f1.values[i][j]
               for i in range(f1.rank) for j in range(f1.rank)):
            continue
        seen = set()
        for x in f1.elements():
            seen.add(tuple(sum(x[i] * imgs[i][j] for i in range(f1.rank)) % d
                           for j, d in enumerate(f2.orders)))
        if len(seen) == f1.order == f2.order:
            return True
    return False
