"""Print the surgery-equivalence classes of lens spaces L(n, q).

    python scripts/lens_table.py --max-n 20
"""

from __future__ import annotations

import argparse
import math

from surgeq.linking_iso import same_square_class


def classes(n: int) -> list[list[int]]:
    out: list[list[int]] = []
    for q in range(1, n):
        if math.gcd(q, n) != 1:
            continue
        for cls in out:
            if same_square_class(cls[0], q, n):
                cls.append(q)
                break
        else:
            out.append([q])
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=20)
    args = ap.parse_args()
    for n in range(2, args.max_n + 1):
        parts = classes(n)
        shown = "  ".join("{" + ",".join(map(str, c)) + "}" for c in parts)
        print(f"n={n:<3} {len(parts)} class(es): {shown}")


if __name__ == "__main__":
    main()
