"""Regenerate the bundled presentation corpus in src/surgeq/data/.

    python scripts/make_fixtures.py
"""

import math
from fractions import Fraction
from pathlib import Path

from surgeq.fileio import dumps
from surgeq.presentation import FramedLink
from surgeq.words import BraidWord, FreeWord, commutator

OUT = Path(__file__).resolve().parents[1] / "src" / "surgeq" / "data"

BORROMEAN = BraidWord.parse(3, "s1 s2^-1") ** 3


def corpus():
    yield FramedLink.from_braid(BORROMEAN, name="borromean")
    # 0-surgery on links with mu-bar(123) = n, n = 0..3 (n = 0 is the unlink)
    for n in range(4):
        yield FramedLink.from_braid(BORROMEAN ** n, name=f"borromean_power{n}")
    x = [FreeWord.generator(i) for i in range(1, 5)]
    yield FramedLink.from_longitudes(
        [commutator(x[1], x[1].conjugate(x[0])), commutator(x[0], x[0].conjugate(x[1]))],
        name="whitehead",
    )
    # 4-component link whose first nonvanishing mu-bar is mu(1234)
    yield FramedLink.from_longitudes(
        [commutator(commutator(x[(i + 1) % 4], x[(i + 2) % 4]), x[(i + 3) % 4]) for i in range(4)],
        name="mu1234_link",
    )
    for m in (1, 2, 3, 4):
        yield FramedLink.unlink([0] * m, name=f"unlink{m}")
    yield FramedLink.from_braid(BraidWord.parse(2, "s1 s1"), name="hopf0")
    # integral homology spheres
    yield FramedLink.unlink([1], name="unknot_plus1")
    yield FramedLink.unlink([-1], name="unknot_minus1")
    yield FramedLink.unlink([1, -1, 1], name="unlink_pm1")
    yield FramedLink((Fraction(1, 2),), ((0,),), name="unknot_1_2")
    yield FramedLink((Fraction(-1, 3),), ((0,),), name="unknot_minus1_3")
    yield FramedLink.from_linking_matrix([[1, 1], [1, 2]], name="hopf_1_2")
    e8 = [[0] * 8 for _ in range(8)]
    for i in range(8):
        e8[i][i] = -2
    for i, j in [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)]:
        e8[i][j] = e8[j][i] = 1
    yield FramedLink.from_linking_matrix(e8, name="poincare_e8")
    for n in range(2, 13):
        for q in range(1, n):
            if math.gcd(n, q) == 1:
                yield FramedLink((Fraction(n, q),), ((0,),), name=f"lens_{n}_{q}")
    yield FramedLink((Fraction(5, 2), Fraction(0)), ((0, 0), (0, 0)), name="lens_5_2_sum_s1xs2")


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    count = 0
    for link in corpus():
        (OUT / f"{link.name}.json").write_text(dumps(link) + "\n", encoding="utf-8")
        count += 1
    print(f"wrote {count} fixtures to {OUT}")


if __name__ == "__main__":
    main()
