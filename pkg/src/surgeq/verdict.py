"""Surgery-equivalence verdicts with certificates.

``Equivalent`` is only returned in cases where matching invariants are
known to be sufficient: torsion-free ``H_1`` with a decidable trilinear
orbit, cyclic ``H_1``, ``H_1 = Z + Z/n``, and first Betti number below 3
for the rational relation. Anything else caps at ``Unknown`` unless some
computed invariant differs.
"""

from __future__ import annotations

import dataclasses
import enum
import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from fractions import Fraction
from typing import Optional

from .errors import InvalidLensParameters, LinkingNonzero, NoLongitudeData, NotZeroFramed
from .homology import FirstHomology, LinkingForm, first_homology, linking_form
from .linking_iso import DEFAULT_BOUND, Status, cyclic_class, isomorphic, same_square_class, square_root_unit
from .milnor import MilnorCalculator
from .presentation import FramedLink, expand_to_integral, presentation_matrix
from .trilinear import DEFAULT_DEPTH, TrilinearForm, equivalent, from_mu_triple, orbit_invariants


class VerdictStatus(str, enum.Enum):
    EQUIVALENT = "Equivalent"
    NOT_EQUIVALENT = "NotEquivalent"
    UNKNOWN = "Unknown"


EQUIVALENT = VerdictStatus.EQUIVALENT
NOT_EQUIVALENT = VerdictStatus.NOT_EQUIVALENT
UNKNOWN = VerdictStatus.UNKNOWN


@dataclass(frozen=True)
class Verdict:
    status: VerdictStatus
    relation: str
    certificate: dict = field(default_factory=dict)
    notes: str = ""

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "relation": self.relation,
            "certificate": self.certificate,
            "notes": self.notes,
        }

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)


@dataclass(frozen=True)
class Invariants:
    """Everything the engine computes about one presentation."""

    link: FramedLink
    h1: FirstHomology
    form: Optional[LinkingForm]
    trilinear: Optional[TrilinearForm]

    def summary(self) -> dict:
        out: dict = {"h1": self.h1.to_json()}
        if self.form is not None:
            out["linking_form"] = self.form.to_json()
            if self.form.rank == 1:
                out["linking_class"] = cyclic_class(self.form)
        if self.trilinear is not None:
            out["trilinear"] = self.trilinear.to_json()
            out["trilinear_invariants"] = orbit_invariants(self.trilinear)
        return out


def triple_cup_form(link: FramedLink) -> Optional[TrilinearForm]:
    """The integral triple cup product form, when this library can compute it.

    Available for 0-framed links with vanishing linking numbers and known
    longitudes; ``None`` otherwise.
    """
    try:
        return from_mu_triple(link)
    except (NotZeroFramed, LinkingNonzero, NoLongitudeData):
        return None


@lru_cache(maxsize=1024)
def compute_invariants(link: FramedLink) -> Invariants:
    integral = expand_to_integral(link)
    V = presentation_matrix(integral)
    h1 = first_homology(V)
    form = linking_form(V)
    tri = triple_cup_form(link) if h1.is_torsion_free and h1.betti >= 3 else None
    return Invariants(link, h1, form, tri)


def _cert(tag: str, a: Invariants, b: Invariants, **extra) -> dict:
    cert = {"case": tag, "a": a.summary(), "b": b.summary()}
    cert.update(extra)
    return cert


def _trilinear_verdict(relation, tag, a, b, depth) -> Verdict:
    if a.trilinear is None or b.trilinear is None:
        missing = [n for n, x in (("a", a), ("b", b)) if x.trilinear is None]
        return Verdict(UNKNOWN, relation, _cert(tag, a, b),
                       f"triple cup product form not computable for {', '.join(missing)} "
                       "(needs a 0-framed link with zero linking numbers and braid/longitude data)")
    ans = equivalent(a.trilinear, b.trilinear, depth)
    extra = {"orbit_answer": ans.status.value}
    if ans.witness is not None:
        extra["witness"] = [list(r) for r in ans.witness]
    status = {Status.YES: EQUIVALENT, Status.NO: NOT_EQUIVALENT, Status.UNKNOWN: UNKNOWN}[ans.status]
    return Verdict(status, relation, _cert(tag, a, b, **extra), ans.reason)


def _linking_verdict(relation, tag, a, b, bound) -> Verdict:
    ans = isomorphic(a.form, b.form, bound)
    extra = {"form_answer": ans.status.value}
    if ans.witness is not None:
        extra["witness"] = [list(r) for r in ans.witness]
    status = {Status.YES: EQUIVALENT, Status.NO: NOT_EQUIVALENT, Status.UNKNOWN: UNKNOWN}[ans.status]
    return Verdict(status, relation, _cert(tag, a, b, **extra), ans.reason)


def compare_integral_2(a: FramedLink, b: FramedLink, depth: int = DEFAULT_DEPTH,
                       bound: int = DEFAULT_BOUND) -> Verdict:
    """Integral 2-surgery equivalence of the manifolds presented by ``a`` and ``b``."""
    relation = "integral2"
    ia, ib = compute_invariants(a), compute_invariants(b)
    if ia.h1 != ib.h1:
        return Verdict(NOT_EQUIVALENT, relation, _cert("h1-mismatch", ia, ib),
                       f"H1 differ: {ia.h1} vs {ib.h1}")
    h1 = ia.h1
    if h1.is_torsion_free:
        if h1.betti < 3:
            return Verdict(EQUIVALENT, relation, _cert("m<3", ia, ib),
                           "torsion-free H1 of rank < 3: third exterior power vanishes")
        return _trilinear_verdict(relation, "torsion-free-trilinear-orbit", ia, ib, depth)
    if len(h1.factors) == 1 and h1.betti == 0:
        return _linking_verdict(relation, "cyclic-linking-form", ia, ib, bound)
    if len(h1.factors) == 1 and h1.betti == 1:
        return _linking_verdict(relation, "Z+cyclic-linking-form", ia, ib, bound)
    ans = isomorphic(ia.form, ib.form, bound)
    if ans.status is Status.NO:
        return Verdict(NOT_EQUIVALENT, relation, _cert("linking-form-differs", ia, ib, form_answer="No"),
                       ans.reason)
    notes = "H1 outside the classified cases; torsion-coefficient cup products are not computed"
    if ans.status is Status.UNKNOWN:
        notes += f"; linking forms undecided: {ans.reason}"
    return Verdict(UNKNOWN, relation, _cert("unclassified-h1", ia, ib, form_answer=ans.status.value), notes)


def compare_rational_2(a: FramedLink, b: FramedLink, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Rational 2-surgery equivalence: first Betti number, then the integral cup form."""
    relation = "rational2"
    ia, ib = compute_invariants(a), compute_invariants(b)
    if ia.h1.betti != ib.h1.betti:
        return Verdict(NOT_EQUIVALENT, relation, _cert("betti-mismatch", ia, ib),
                       f"first Betti numbers differ: {ia.h1.betti} vs {ib.h1.betti}")
    if ia.h1.betti < 3:
        return Verdict(EQUIVALENT, relation, _cert("m<3", ia, ib), "first Betti number below 3")
    # with torsion present the form on H1/torsion is still wanted; try the link data
    if ia.trilinear is None:
        ia = dataclasses.replace(ia, trilinear=triple_cup_form(a))
    if ib.trilinear is None:
        ib = dataclasses.replace(ib, trilinear=triple_cup_form(b))
    return _trilinear_verdict(relation, "rational-trilinear-orbit", ia, ib, depth)


def k_equiv_to_standard(link: FramedLink, k: int, max_length: Optional[int] = None) -> Verdict:
    """k-surgery equivalence of 0-surgery on ``link`` to a connected sum of ``S^1 x S^2``.

    Decided by the vanishing of all mu-bar invariants of length below ``2k``.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if any(f != 0 for f in link.framings):
        raise NotZeroFramed("every component must be 0-framed")
    if any(any(row) for row in link.lk):
        raise LinkingNonzero("pairwise linking numbers must vanish")
    if not link.has_link_data:
        raise NoLongitudeData("need a braid or longitude words")
    top = 2 * k - 1
    calc = MilnorCalculator(link, top if max_length is None else min(top, max_length))
    hit = calc.first_nonvanishing()
    relation = f"k={k}"
    cert = {"case": "mu-bar-vanishing", "checked_lengths": [2, calc.max_length], "m": link.m}
    if hit is None:
        notes = f"all mu-bar of length < {2 * k} vanish"
        if calc.max_length < top:
            return Verdict(UNKNOWN, relation, cert, f"only lengths up to {calc.max_length} checked")
        return Verdict(EQUIVALENT, relation, cert, notes)
    cert["mu_bar"] = hit.to_json()
    return Verdict(NOT_EQUIVALENT, relation, cert, f"{hit} is nonzero and shorter than {2 * k}")


def lens_compare(n: int, q: int, n2: int, q2: int) -> Verdict:
    """``L(n, q)`` vs ``L(n2, q2)``: same ``n`` and ``q q2`` a square of a unit mod ``n``."""
    for a, b in ((n, q), (n2, q2)):
        if a < 2 or math.gcd(a, b) != 1:
            raise InvalidLensParameters(f"L({a},{b}) needs n >= 2 and gcd(n, q) = 1")
    relation = "integral2"
    cert = {"case": "lens", "a": {"n": n, "q": q % n}, "b": {"n": n2, "q": q2 % n2}}
    if n != n2:
        return Verdict(NOT_EQUIVALENT, relation, cert, f"H1 differ: Z/{n} vs Z/{n2}")
    if same_square_class(q, q2, n):
        k = square_root_unit(q * q2, n)
        cert["k"] = k
        return Verdict(EQUIVALENT, relation, cert, f"q q' = {k}^2 mod {n}")
    return Verdict(NOT_EQUIVALENT, relation, cert, f"q q' = {(q * q2) % n} is not a unit square mod {n}")


def lens_space(n: int, q: int) -> FramedLink:
    """``n/q`` surgery on the unknot."""
    return FramedLink((Fraction(n, q),), ((0,),), name=f"L({n},{q})")
