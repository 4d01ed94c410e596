"""Alternating integral trilinear forms and their GL_m(Z) orbits.

A form ``sum a_ijk e_i ^ e_j ^ e_k`` is stored by its coefficients on
strictly increasing 0-based triples. Ranks up to 4 are classified
outright; from rank 5 on, equivalence is semi-decided: invariants certify
inequivalence, and a greedy reduction followed by a bidirectional
breadth-first search over elementary basis moves certifies equivalence
with a checked matrix witness.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Optional

from .errors import DimensionMismatchError, LinkingNonzero, NoLongitudeData, NotZeroFramed
from .linalg import IntMatrix, determinant, identity, invariant_factors, matmul, unimodular_inverse
from .linking_iso import IsoAnswer, Status
from .milnor import MilnorCalculator
from .presentation import FramedLink

DEFAULT_DEPTH = 12
DEFAULT_MAX_STATES = 400_000


def triples(m: int) -> list[tuple[int, int, int]]:
    return list(itertools.combinations(range(m), 3))


@dataclass(frozen=True)
class TrilinearForm:
    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != math.comb(self.m, 3):
            raise DimensionMismatchError(f"rank {self.m} needs {math.comb(self.m, 3)} coefficients")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_dict(cls, m: int, coeffs: dict) -> TrilinearForm:
        """From ``{(i, j, k): a}`` with 1-based indices in any order (sign adjusted)."""
        vec = dict.fromkeys(triples(m), 0)
        for key, a in coeffs.items():
            idx = tuple(int(i) - 1 for i in key)
            if len(idx) != 3 or len(set(idx)) != 3 or not all(0 <= i < m for i in idx):
                raise DimensionMismatchError(f"bad triple {key} for rank {m}")
            vec[tuple(sorted(idx))] += _sort_sign(idx) * int(a)
        return cls(m, tuple(vec[t] for t in triples(m)))

    @classmethod
    def zero(cls, m: int) -> TrilinearForm:
        return cls(m, (0,) * math.comb(m, 3))

    def as_dict(self) -> dict:
        return {t: a for t, a in zip(triples(self.m), self.coeffs) if a}

    def __neg__(self):
        return TrilinearForm(self.m, tuple(-a for a in self.coeffs))

    def __getitem__(self, triple) -> int:
        idx = tuple(int(i) - 1 for i in triple)
        if len(set(idx)) < 3:
            return 0
        return _sort_sign(idx) * self.coeffs[triples(self.m).index(tuple(sorted(idx)))]

    def to_json(self) -> dict:
        return {"m": self.m, "coeffs": {",".join(str(i + 1) for i in t): a for t, a in self.as_dict().items()}}

    @classmethod
    def from_json(cls, doc: dict) -> TrilinearForm:
        m = int(doc["m"])
        return cls.from_dict(m, {tuple(k.split(",")): v for k, v in doc.get("coeffs", {}).items()})


def _sort_sign(idx) -> int:
    """Sign of the permutation sorting ``idx`` (distinct entries)."""
    sign = 1
    idx = list(idx)
    for i in range(len(idx)):
        for j in range(i + 1, len(idx)):
            if idx[i] > idx[j]:
                sign = -sign
    return sign


def evaluate(form: TrilinearForm, u, v, w) -> int:
    if not len(u) == len(v) == len(w) == form.m:
        raise DimensionMismatchError(f"vectors must have length {form.m}")
    total = 0
    for (i, j, k), a in zip(triples(form.m), form.coeffs):
        if a:
            total += a * determinant([[u[i], u[j], u[k]], [v[i], v[j], v[k]], [w[i], w[j], w[k]]])
    return total


def apply_matrix(form: TrilinearForm, P: IntMatrix) -> TrilinearForm:
    """Push the form forward along ``e_i -> P e_i`` (column ``i`` of ``P``)."""
    m = form.m
    out = []
    for S in triples(m):
        total = 0
        for T, a in zip(triples(m), form.coeffs):
            if a:
                total += a * determinant([[P[r][c] for c in T] for r in S])
        out.append(total)
    return TrilinearForm(m, tuple(out))


def content(form: TrilinearForm) -> int:
    return math.gcd(*form.coeffs) if form.coeffs else 0


def contraction_matrix(form: TrilinearForm) -> IntMatrix:
    """Row ``i`` is the 2-form ``iota(e_i) form`` in the basis ``e_j ^ e_k``, ``j < k``."""
    m = form.m
    pairs = list(itertools.combinations(range(m), 2))
    rows = []
    for i in range(m):
        row = []
        for j, k in pairs:
            row.append(form[(i + 1, j + 1, k + 1)] if i not in (j, k) else 0)
        rows.append(row)
    return rows


def orbit_invariants(form: TrilinearForm) -> dict:
    factors = invariant_factors(contraction_matrix(form)) if form.m >= 2 else []
    return {
        "m": form.m,
        "content": content(form),
        "contraction_factors": [d for d in factors if d != 1],
    }


# elementary moves ---------------------------------------------------------

@dataclass(frozen=True)
class Move:
    """Elementary basis change with its action table on coefficient vectors."""

    name: str
    matrix: tuple[tuple[int, ...], ...]
    # new[dst] += sign * old[src] for each entry, starting from a zero vector
    table: tuple[tuple[int, int, int], ...]

    def apply(self, vec):
        out = [0] * len(vec)
        for src, dst, sign in self.table:
            out[dst] += sign * vec[src]
        return tuple(out)


def _table_for(m: int, P) -> tuple:
    ts = triples(m)
    pos = {t: n for n, t in enumerate(ts)}
    table = []
    for n, T in enumerate(ts):
        for S in ts:
            d = determinant([[P[r][c] for c in T] for r in S])
            if d:
                table.append((n, pos[S], d))
    return tuple(table)


def elementary_moves(m: int) -> list[Move]:
    """Transvections ``e_i -> e_i +- e_j``, adjacent swaps and sign flips."""
    moves = []
    for i, j in itertools.permutations(range(m), 2):
        for s in (1, -1):
            P = identity(m)
            P[j][i] = s
            moves.append(Move(f"e{i + 1}{'+' if s > 0 else '-'}e{j + 1}", tuple(map(tuple, P)), _table_for(m, P)))
    for i in range(m - 1):
        P = identity(m)
        P[i][i] = P[i + 1][i + 1] = 0
        P[i][i + 1] = P[i + 1][i] = 1
        moves.append(Move(f"swap{i + 1}{i + 2}", tuple(map(tuple, P)), _table_for(m, P)))
    for i in range(m):
        P = identity(m)
        P[i][i] = -1
        moves.append(Move(f"neg{i + 1}", tuple(map(tuple, P)), _table_for(m, P)))
    return moves


_MOVES: dict = {}


def _moves(m: int) -> list[Move]:
    if m not in _MOVES:
        _MOVES[m] = elementary_moves(m)
    return _MOVES[m]


def _compose(moves: list[Move], m: int) -> IntMatrix:
    P = identity(m)
    for mv in moves:
        P = matmul([list(r) for r in mv.matrix], P)
    return P


def greedy_reduce(form: TrilinearForm) -> tuple[TrilinearForm, IntMatrix]:
    """Descend on the sum of absolute coefficients, then normalise signs and order.

    Returns the reduced form and ``P`` with ``apply_matrix(form, P)`` equal
    to it. At rank 4 this always reaches ``content * e1^e2^e3``.
    """
    m = form.m
    vec = form.coeffs
    path: list[Move] = []
    moves = _moves(m)
    transvections = [mv for mv in moves if mv.name.startswith("e")]
    while True:
        best, best_cost = None, sum(map(abs, vec))
        for mv in transvections:
            new = mv.apply(vec)
            cost = sum(map(abs, new))
            if cost < best_cost:
                best, best_cost = (mv, new), cost
        if best is None:
            break
        path.append(best[0])
        vec = best[1]
    # bubble nonzero coefficients toward the front with adjacent swaps
    changed = True
    swaps = [mv for mv in moves if mv.name.startswith("swap")]
    while changed:
        changed = False
        for mv in swaps:
            new = mv.apply(vec)
            if tuple(abs(a) for a in new) > tuple(abs(a) for a in vec):
                path.append(mv)
                vec = new
                changed = True
    flips = [mv for mv in moves if mv.name.startswith("neg")]
    if vec and next((a for a in vec if a), 0) < 0:
        # a flip of a basis vector lying in the first nonzero triple
        first = triples(m)[next(n for n, a in enumerate(vec) if a)]
        mv = flips[first[0]]
        path.append(mv)
        vec = mv.apply(vec)
    return TrilinearForm(m, vec), _compose(path, m)


def bfs_equivalent(f1: TrilinearForm, f2: TrilinearForm, depth: int = DEFAULT_DEPTH,
                   coeff_bound: Optional[int] = None,
                   max_states: int = DEFAULT_MAX_STATES) -> Optional[IntMatrix]:
    """Bidirectional breadth-first search for ``P`` with ``apply_matrix(f1, P) == f2``.

    Paths have total length at most ``depth``; states whose coefficients
    exceed ``coeff_bound`` in absolute value (default: the larger maximum of
    the two inputs) are pruned. The search gives up (returns ``None``) once
    ``max_states`` states have been visited.
    """
    if f1.m != f2.m:
        return None
    m = f1.m
    if f1 == f2:
        return identity(m)
    if coeff_bound is None:
        coeff_bound = max(max(map(abs, f1.coeffs), default=0), max(map(abs, f2.coeffs), default=0))
    moves = _moves(m)
    # state -> (parent state, move) for each side
    seen = [{f1.coeffs: None}, {f2.coeffs: None}]
    frontier = [[f1.coeffs], [f2.coeffs]]
    used = [0, 0]
    meet = None
    while used[0] + used[1] < depth and meet is None:
        side = 0 if len(frontier[0]) <= len(frontier[1]) else 1
        if not frontier[side]:
            side = 1 - side
            if not frontier[side]:
                break
        nxt = []
        for state in frontier[side]:
            for mv in moves:
                new = mv.apply(state)
                if new in seen[side] or max(map(abs, new), default=0) > coeff_bound:
                    continue
                seen[side][new] = (state, mv)
                if new in seen[1 - side]:
                    meet = new
                    break
                if len(seen[0]) + len(seen[1]) > max_states:
                    return None
                nxt.append(new)
            if meet is not None:
                break
        frontier[side] = nxt
        used[side] += 1
    if meet is None:
        return None

    def path_to(side):
        moves_rev = []
        state = meet
        while seen[side][state] is not None:
            state, mv = seen[side][state]
            moves_rev.append(mv)
        return list(reversed(moves_rev))

    P1 = _compose(path_to(0), m)
    P2 = _compose(path_to(1), m)
    W = matmul(unimodular_inverse(P2), P1)
    if apply_matrix(f1, W) != f2:
        raise AssertionError("search witness failed verification")
    return W


def _witness_answer(f1, f2, P) -> IsoAnswer:
    if apply_matrix(f1, P) != f2:
        raise AssertionError("witness failed verification")
    return IsoAnswer(Status.YES, witness=tuple(map(tuple, P)))


def equivalent(f1: TrilinearForm, f2: TrilinearForm, depth: int = DEFAULT_DEPTH) -> IsoAnswer:
    """Decide whether two forms lie in one ``GL_m(Z)`` orbit.

    Rank <= 2: always (the third exterior power vanishes). Rank 3: iff
    ``|a_123|`` agree. Rank 4: iff contents agree. Rank >= 5: No when orbit
    invariants differ, Yes when reduction or search connects the forms,
    otherwise Unknown.
    """
    m = f1.m
    if f2.m != m:
        return IsoAnswer(Status.NO, reason=f"ranks differ: {m} vs {f2.m}")
    if m <= 2:
        return IsoAnswer(Status.YES, witness=tuple(map(tuple, identity(m))), reason="rank < 3")
    if m == 3:
        a, b = f1.coeffs[0], f2.coeffs[0]
        if abs(a) != abs(b):
            return IsoAnswer(Status.NO, reason=f"|a123| differ: {abs(a)} vs {abs(b)}")
        P = identity(3)
        if a != b:
            P[0][0] = -1
        return _witness_answer(f1, f2, P)
    inv1, inv2 = orbit_invariants(f1), orbit_invariants(f2)
    if m == 4:
        if inv1["content"] != inv2["content"]:
            return IsoAnswer(Status.NO, reason=f"contents differ: {inv1['content']} vs {inv2['content']}")
    elif inv1 != inv2:
        return IsoAnswer(Status.NO, reason=f"orbit invariants differ: {inv1} vs {inv2}")
    r1, P1 = greedy_reduce(f1)
    r2, P2 = greedy_reduce(f2)
    if r1 == r2:
        return _witness_answer(f1, f2, matmul(unimodular_inverse(P2), P1))
    if m == 4:
        raise AssertionError(f"rank-4 reduction did not reach a normal form: {r1} vs {r2}")
    P = bfs_equivalent(r1, r2, depth)
    if P is not None:
        return _witness_answer(f1, f2, matmul(matmul(unimodular_inverse(P2), P), P1))
    return IsoAnswer(Status.UNKNOWN,
                     reason=f"no connecting move sequence within depth {depth} and {DEFAULT_MAX_STATES} states")


def from_mu_triple(link: FramedLink) -> TrilinearForm:
    """Triple cup product form of 0-surgery on a link with vanishing linking numbers.

    ``a_ijk = mu-bar(ijk)`` in the basis dual to the meridians.
    """
    if any(f != 0 for f in link.framings):
        raise NotZeroFramed("every component must be 0-framed")
    if any(any(row) for row in link.lk):
        raise LinkingNonzero("pairwise linking numbers must vanish")
    if not link.has_link_data:
        raise NoLongitudeData("need a braid or longitude words to compute mu-bar(ijk)")
    m = link.m
    if m < 3:
        return TrilinearForm.zero(m)
    calc = MilnorCalculator(link, 3)
    return TrilinearForm(m, tuple(calc.raw((i + 1, j + 1, k + 1)) for i, j, k in triples(m)))
