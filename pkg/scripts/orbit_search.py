"""Compare the content invariant with bounded GL_m(Z) search on random trilinear forms.

At rank 4 content is a complete invariant, so every pair with equal content
should be connected by the search. At rank 5 the script reports how often
search settles pairs whose computed invariants agree.

    python scripts/orbit_search.py --m 4 --pairs 200 --seed 1
"""

from __future__ import annotations

import argparse
import random
import time

from surgeq.linking_iso import Status
from surgeq.trilinear import (
    TrilinearForm,
    apply_matrix,
    bfs_equivalent,
    content,
    elementary_moves,
    equivalent,
    orbit_invariants,
    triples,
)


def random_form(rng: random.Random, m: int, spread: int) -> TrilinearForm:
    return TrilinearForm(m, tuple(rng.randint(-spread, spread) for _ in triples(m)))


def scramble(rng: random.Random, form: TrilinearForm, steps: int) -> TrilinearForm:
    moves = elementary_moves(form.m)
    for _ in range(steps):
        form = apply_matrix(form, [list(r) for r in rng.choice(moves).matrix])
    return form


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m", type=int, default=4)
    ap.add_argument("--pairs", type=int, default=100)
    ap.add_argument("--spread", type=int, default=2)
    ap.add_argument("--depth", type=int, default=12)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    rng = random.Random(args.seed)
    tally = {"agree": 0, "search-missed": 0, "unknown": 0}
    t0 = time.perf_counter()
    for _ in range(args.pairs):
        f1 = random_form(rng, args.m, args.spread)
        f2 = scramble(rng, f1, rng.randint(1, 6)) if rng.random() < 0.5 else random_form(rng, args.m, args.spread)
        if args.m == 4:
            found = bfs_equivalent(f1, f2, args.depth) is not None
            tally["agree" if found == (content(f1) == content(f2)) else "search-missed"] += 1
        else:
            ans = equivalent(f1, f2, args.depth)
            same = orbit_invariants(f1) == orbit_invariants(f2)
            if ans.status is Status.UNKNOWN:
                tally["unknown"] += 1
            else:
                tally["agree" if (ans.status is Status.YES) == same else "search-missed"] += 1
    print(f"m={args.m} pairs={args.pairs} depth={args.depth}: {tally} in {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
