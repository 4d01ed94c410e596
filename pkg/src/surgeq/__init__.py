"""Surgery-equivalence invariants of closed oriented 3-manifolds.

Manifolds are given as surgery on framed links in S^3
(:class:`~surgeq.presentation.FramedLink`). The library computes first
homology, torsion linking forms, triple cup product forms and Milnor
invariants, and combines them into certified equivalence verdicts
(:mod:`surgeq.verdict`).
"""

from .fileio import fixture, load
from .homology import FirstHomology, LinkingForm, first_homology, linking_form
from .presentation import FramedLink, expand_to_integral, mirror, presentation_matrix
from .trilinear import TrilinearForm
from .verdict import (
    Verdict,
    VerdictStatus,
    compare_integral_2,
    compare_rational_2,
    k_equiv_to_standard,
    lens_compare,
)

__version__ = "0.1.0"
