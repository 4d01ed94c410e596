"""Isomorphism of linking forms on finite abelian groups.

Cyclic groups are decided by a quadratic-residue test on the unit ``a`` in
``lambda(g, g) = a/n``. Non-cyclic groups are split into p-primary blocks
(orthogonal under any linking form) and each non-cyclic block is searched
exhaustively, generator by generator, in lexicographic order of images.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

from sympy import factorint, sqrt_mod

from .errors import DegenerateFormError, NotCyclicError
from .homology import LinkingForm, frac_mod1

DEFAULT_BOUND = 10_000
# backtracking nodes before an enumeration gives up with Unknown
SEARCH_BUDGET = 2_000_000


class Status(str, enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class IsoAnswer:
    status: Status
    witness: Optional[tuple[tuple[int, ...], ...]] = None
    reason: str = ""

    def __bool__(self):
        return self.status is Status.YES


def cyclic_class(form: LinkingForm) -> int:
    """The unit ``a`` with ``lambda(g, g) = a/n`` on a cyclic group ``Z/n``."""
    if form.rank != 1:
        raise NotCyclicError(f"group has {form.rank} invariant factors")
    n = form.orders[0]
    a = form.values[0][0] * n
    if a.denominator != 1 or math.gcd(int(a), n) != 1:
        raise DegenerateFormError(f"self-pairing {form.values[0][0]} is not a unit over {n}")
    return int(a) % n


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(factorint(n).items()))


def is_unit_square(u: int, n: int) -> bool:
    """Whether the unit ``u`` is a square of a unit mod ``n``.

    Odd primes use Euler's criterion; powers of 2 need ``u = 1 mod 4``
    (for ``4``) or ``u = 1 mod 8`` (for ``8`` and up).
    """
    u %= n
    if math.gcd(u, n) != 1:
        raise ValueError(f"{u} is not a unit mod {n}")
    for p, e in _factor(n):
        if p == 2:
            if e == 2 and u % 4 != 1:
                return False
            if e >= 3 and u % 8 != 1:
                return False
        elif pow(u, (p - 1) // 2, p) != 1:
            return False
    return True


def same_square_class(a: int, b: int, n: int) -> bool:
    """``b = k^2 a`` for some unit ``k`` mod ``n``."""
    if n == 1:
        return True
    return is_unit_square(b * pow(a, -1, n), n)


def square_root_unit(u: int, n: int) -> int:
    """Smallest ``k`` with ``k^2 = u mod n``."""
    if n == 1:
        return 0
    return min(sqrt_mod(u % n, n, all_roots=True))


def _cyclic_answer(f1: LinkingForm, f2: LinkingForm) -> IsoAnswer:
    n = f1.orders[0]
    a, b = cyclic_class(f1), cyclic_class(f2)
    if not same_square_class(a, b, n):
        return IsoAnswer(Status.NO, reason=f"{b}/{a} is not a square of a unit mod {n}")
    k = square_root_unit(a * pow(b, -1, n), n)
    # g -> k g pulls b/n back to k^2 b/n = a/n
    return IsoAnswer(Status.YES, witness=((k,),))


def primary_parts(form: LinkingForm) -> dict[int, tuple[LinkingForm, list]]:
    """Split into p-primary blocks, each with generators sorted by order.

    Returns ``{p: (block, gens)}`` where ``gens[r] = (i, c)`` says the r-th
    block generator is ``c * g_i`` in the original generators.
    """
    primes = sorted({p for d in form.orders for p in factorint(d)})
    out = {}
    for p in primes:
        gens, orders = [], []
        for i, d in enumerate(form.orders):
            e = 0
            while d % p ** (e + 1) == 0:
                e += 1
            if e:
                gens.append((i, d // p ** e))
                orders.append(p ** e)
        perm = sorted(range(len(gens)), key=lambda r: orders[r])
        gens = [gens[r] for r in perm]
        orders = [orders[r] for r in perm]
        values = [[form.values[i][j] * ci * cj for (j, cj) in gens] for (i, ci) in gens]
        out[p] = (LinkingForm(tuple(orders), tuple(map(tuple, values))), gens)
    return out


def elementary_divisors(form: LinkingForm) -> dict[int, tuple[int, ...]]:
    return {p: block.orders for p, (block, _) in primary_parts(form).items()}


def _search_block(f1: LinkingForm, f2: LinkingForm, budget: int):
    """Lexicographically first form-preserving map of generators, or None.

    Returns ``"budget"`` when the node budget runs out.
    """
    t = f1.rank
    targets = list(f2.elements())

    def order_in(y):
        return math.lcm(*(d // math.gcd(d, c) for d, c in zip(f2.orders, y)))

    by_order: dict[int, list] = {}
    for y in targets:
        by_order.setdefault(order_in(y), []).append(y)

    images: list = []
    nodes = 0

    def extend(i):
        nonlocal nodes
        if i == t:
            return True
        for y in by_order.get(f1.orders[i], ()):
            nodes += 1
            if nodes > budget:
                raise _Budget
            if f2.pair(y, y) != f1.values[i][i]:
                continue
            if any(f2.pair(y, images[j]) != f1.values[i][j] for j in range(i)):
                continue
            images.append(y)
            if extend(i + 1):
                return True
            images.pop()
        return False

    try:
        found = extend(0)
    except _Budget:
        return "budget"
    return tuple(images) if found else None


class _Budget(Exception):
    pass


def check_witness(f1: LinkingForm, f2: LinkingForm, witness, enumerate_limit: int = 200_000) -> bool:
    """Whether ``g_i -> witness[i]`` is a group isomorphism carrying f1 to f2.

    Injectivity is checked by enumeration up to ``enumerate_limit`` elements;
    past that it follows from form preservation, given f1 nondegenerate.
    """
    if f1.order != f2.order or len(witness) != f1.rank:
        return False
    for i, y in enumerate(witness):
        if len(y) != f2.rank:
            return False
        if any((f1.orders[i] * c) % d for c, d in zip(y, f2.orders)):
            return False
    for i, j in itertools.product(range(f1.rank), repeat=2):
        if f2.pair(witness[i], witness[j]) != f1.values[i][j]:
            return False
    if f1.order > enumerate_limit:
        return True
    seen = set()
    for x in f1.elements():
        img = tuple(
            sum(x[i] * witness[i][j] for i in range(f1.rank)) % d for j, d in enumerate(f2.orders)
        )
        if img in seen:
            return False
        seen.add(img)
    return True


def _assemble(f1: LinkingForm, f2: LinkingForm, parts1, parts2, block_witnesses):
    """Glue per-prime witnesses into images of f1's generators in f2's generators."""
    images = [[0] * f2.rank for _ in range(f1.rank)]
    for p, bw in block_witnesses.items():
        (b1, gens1), (b2, gens2) = parts1[p], parts2[p]
        for r, (i, c) in enumerate(gens1):
            pe = b1.orders[r]
            # g_i = sum_p inv(c mod p^e) * (c g_i) over its primes
            coef = pow(c, -1, pe) if pe > 1 else 0
            for s, (j, c2) in enumerate(gens2):
                images[i][j] += coef * bw[r][s] * c2
    return tuple(tuple(v % d for v, d in zip(row, f2.orders)) for row in images)


def isomorphic(f1: LinkingForm, f2: LinkingForm, bound: int = DEFAULT_BOUND) -> IsoAnswer:
    """Decide whether two linking forms are isomorphic.

    Yes answers carry a witness: ``witness[i]`` is the image of f1's i-th
    generator in coordinates of f2's generators.
    """
    parts1, parts2 = primary_parts(f1), primary_parts(f2)
    if {p: b.orders for p, (b, _) in parts1.items()} != {p: b.orders for p, (b, _) in parts2.items()}:
        return IsoAnswer(Status.NO, reason=f"groups differ: {list(f1.orders)} vs {list(f2.orders)}")
    if f1.rank == 0:
        return IsoAnswer(Status.YES, witness=())
    if f1.rank == 1 and f2.rank == 1:
        return _cyclic_answer(f1, f2)
    block_witnesses = {}
    unknown = []
    for p in parts1:
        b1, b2 = parts1[p][0], parts2[p][0]
        if b1.rank == 1:
            ans = _cyclic_answer(b1, b2)
            if ans.status is Status.NO:
                return IsoAnswer(Status.NO, reason=f"{p}-primary parts differ: {ans.reason}")
            block_witnesses[p] = ans.witness
            continue
        if b1.order > bound:
            unknown.append(f"{p}-primary part of order {b1.order} exceeds bound {bound}")
            continue
        found = _search_block(b1, b2, SEARCH_BUDGET)
        if found == "budget":
            unknown.append(f"{p}-primary search exceeded {SEARCH_BUDGET} nodes")
        elif found is None:
            return IsoAnswer(Status.NO, reason=f"no isometry of the {p}-primary parts")
        else:
            block_witnesses[p] = found
    if unknown:
        return IsoAnswer(Status.UNKNOWN, reason="; ".join(unknown))
    witness = _assemble(f1, f2, parts1, parts2, block_witnesses)
    if not check_witness(f1, f2, witness):
        raise AssertionError("assembled witness failed verification")
    return IsoAnswer(Status.YES, witness=witness)


def brute_force_cyclic(a: int, b: int, n: int) -> Optional[int]:
    """Smallest automorphism ``g -> k g`` of ``Z/n`` carrying ``a/n`` to ``b/n``."""
    for k in range(n):
        if math.gcd(k, n) == 1 and (k * k * a - b) % n == 0:
            return k
    return None


def scale(form: LinkingForm, c: int) -> LinkingForm:
    return LinkingForm(form.orders, tuple(tuple(frac_mod1(Fraction(c) * x) for x in row) for row in form.values))


def orthogonal_sum(*forms: LinkingForm) -> LinkingForm:
    orders = [d for f in forms for d in f.orders]
    n = len(orders)
    values = [[Fraction(0)] * n for _ in range(n)]
    off = 0
    for f in forms:
        for i in range(f.rank):
            for j in range(f.rank):
                values[off + i][off + j] = f.values[i][j]
        off += f.rank
    return LinkingForm(tuple(orders), tuple(map(tuple, values)))
