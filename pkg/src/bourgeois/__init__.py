"""Fillability obstructions for Bourgeois contact manifolds.

The package decides, from combinatorial open-book data (a surface with
boundary and a word of Dehn twists), the homological obstructions to
strong symplectic fillability of the associated Bourgeois contact
manifold, and numerically verifies the explicit contact and symplectic
forms of the construction on coordinate models.
"""

from .algebra import AbelianGroup, IntMatrix, cokernel, rational_rank, smith_normal_form
from .mcg import (
    TwistWord,
    homology_action,
    in_commutator_kernel,
    is_homologically_trivial,
    planar_abelianization,
    positive_stabilization,
    word,
)
from .openbook import (
    BrieskornPoint,
    OpenBookPresentation,
    SeifertPantsData,
    b1_open_book,
    bofill_verdict,
    brieskorn_homology,
    chi_orb,
    chi_orb_cone_points,
    h1_open_book,
    page_injects_rationally,
    pants_factorization,
    presentation,
    relative_delta,
)
from .surface import CurveClass, Surface, new_surface, pair, planar_curve
from .verdict import Criterion, Status, Summary, Verdict, analyze, check_stabilization

__version__ = "0.1.0"

__all__ = [
    "AbelianGroup",
    "BrieskornPoint",
    "Criterion",
    "CurveClass",
    "IntMatrix",
    "OpenBookPresentation",
    "SeifertPantsData",
    "Status",
    "Summary",
    "Surface",
    "TwistWord",
    "Verdict",
    "analyze",
    "b1_open_book",
    "bofill_verdict",
    "brieskorn_homology",
    "check_stabilization",
    "chi_orb",
    "chi_orb_cone_points",
    "cokernel",
    "h1_open_book",
    "homology_action",
    "in_commutator_kernel",
    "is_homologically_trivial",
    "new_surface",
    "page_injects_rationally",
    "pair",
    "pants_factorization",
    "planar_abelianization",
    "planar_curve",
    "positive_stabilization",
    "presentation",
    "rational_rank",
    "relative_delta",
    "smith_normal_form",
    "word",
]
