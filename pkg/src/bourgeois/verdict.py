"""The obstruction engine for strong fillability of Bourgeois manifolds.

Every criterion implemented here is a necessary condition for the
existence of a strong symplectic filling of BO(Sigma, phi); the engine
therefore only ever certifies obstructions.  A report with no obstruction
is rendered as "no obstruction found", never as "fillable", except for the
identity-monodromy clause, where Stein fillability is known.  Criteria run
independently and every witness is retained, because the report is a
research artifact rather than a short-circuit decision.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .algebra import in_row_span, rational_rank
from .mcg import (
    TwistWord,
    homology_action,
    planar_abelianization,
    boundary_pairs,
    positive_stabilization,
)
from .openbook import presentation
from .surface import Surface


class Status(Enum):
    OBSTRUCTED = "Obstructed"
    PASSED = "Passed"
    NOT_APPLICABLE = "NotApplicable"
    UNKNOWN = "Unknown"


class Summary(Enum):
    NOT_STRONGLY_FILLABLE = "NotStronglyFillable"
    STEIN_FILLABLE = "SteinFillable"
    WEAKLY_FILLABLE_ONLY = "WeaklyFillableOnly"
    NO_OBSTRUCTION_FOUND = "NoObstructionFound"


# Citation anchors attached to criteria.  "LMN" is the prior work on weak
# fillings of Bourgeois manifolds that the fillability statements lean on.
CITE = {
    "monodromy": (
        "Rmk 1.2: strong fillability forces the monodromy to act as the "
        "identity on rational page homology"
    ),
    "thm_b": (
        "Thm B: the page of a strongly filled Bourgeois manifold injects "
        "rationally into the filling, hence into the open book"
    ),
    "cor_c": (
        "Cor C: over a rational homology 3-sphere, strong fillability "
        "forces the page to be a disc (and then the manifold is Stein "
        "fillable)"
    ),
    "cor_d": (
        "Cor D: planar strong fillability forces the monodromy into the "
        "commutator subgroup of the mapping class group rel boundary"
    ),
    "thm_e": (
        "Thm E: planar monodromies that are nontrivial products of "
        "same-sign twists are weakly but not strongly fillable"
    ),
    "weak": (
        "LMN Thm A.(a) and B (cited via the Thm E proof): these Bourgeois "
        "manifolds admit weak fillings"
    ),
    "cor_1_6": (
        "Cor 1.6: one positive stabilization kills strong fillability; the "
        "new page class is nonzero on the page and null-homologous in the "
        "open book"
    ),
    "thm_f": (
        "Thm F: the strongly fillable twist powers on D*S^n form a "
        "subgroup of Z, trivial for odd n and of even generator for even n"
    ),
    "thm_f_even": (
        "Thm F: inconclusive for sphere dimension and twist power both "
        "even; the rational middle homology survives"
    ),
    "tight": (
        "Thm A: in dimension 5 every Bourgeois contact structure is "
        "(universally) tight"
    ),
}

TIGHTNESS_NOTE = (
    "dimension 5: the Bourgeois contact structure is universally tight "
    "regardless of fillability (" + CITE["tight"] + ")"
)


@dataclass(frozen=True)
class Criterion:
    name: str
    status: Status
    citation: str
    witness: dict | None = None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "status": self.status.value,
            "citation": self.citation,
            "witness": self.witness,
        }


@dataclass(frozen=True)
class Verdict:
    criteria: tuple[Criterion, ...]
    summary: Summary
    tightness_note: str

    def __post_init__(self):
        obstructed = [c for c in self.criteria if c.status is Status.OBSTRUCTED]
        if bool(obstructed) != (self.summary is Summary.NOT_STRONGLY_FILLABLE):
            raise ValueError(
                "summary must be NotStronglyFillable exactly when a criterion is obstructed"
            )
        for c in obstructed:
            if not c.witness:
                raise ValueError(f"obstructed criterion {c.name!r} lacks a witness")

    @property
    def obstructed(self) -> bool:
        return self.summary is Summary.NOT_STRONGLY_FILLABLE

    @property
    def weakly_fillable_known(self) -> bool:
        return any(
            c.name == "weak-fillability" and c.status is Status.PASSED
            for c in self.criteria
        )

    def to_json(self) -> dict:
        return {
            "summary": self.summary.value,
            "criteria": [c.to_json() for c in self.criteria],
            "tightness_note": self.tightness_note,
        }

    def headline(self) -> str:
        if self.obstructed and self.weakly_fillable_known:
            return "weakly but not strongly fillable"
        return {
            Summary.NOT_STRONGLY_FILLABLE: "not strongly fillable",
            Summary.STEIN_FILLABLE: "Stein fillable",
            Summary.WEAKLY_FILLABLE_ONLY: "weakly but not strongly fillable",
            Summary.NO_OBSTRUCTION_FOUND: "no obstruction found",
        }[self.summary]


def _finish(criteria: list[Criterion], identity_monodromy: bool) -> Verdict:
    if any(c.status is Status.OBSTRUCTED for c in criteria):
        summary = Summary.NOT_STRONGLY_FILLABLE
    elif identity_monodromy:
        summary = Summary.STEIN_FILLABLE
    else:
        summary = Summary.NO_OBSTRUCTION_FOUND
    return Verdict(tuple(criteria), summary, TIGHTNESS_NOTE)


def analyze(surface: Surface, w: TwistWord) -> Verdict:
    """Run every homological obstruction on an open book and report.

    Order: monodromy triviality, rational page injection, the rational
    homology sphere test, the planar commutator test, and the weak
    fillability note for sign-coherent planar words.  Criteria that need
    structure the input lacks are marked NotApplicable.
    """
    if w.surface != surface:
        raise ValueError("word does not live on the given surface")
    criteria: list[Criterion] = []

    action = homology_action(w)
    trivial = action.is_identity()
    criteria.append(
        Criterion(
            name="monodromy-homology-trivial",
            status=Status.PASSED if trivial else Status.OBSTRUCTED,
            citation=CITE["monodromy"],
            witness=None if trivial else {"action": action.to_lists()},
        )
    )

    pres = presentation(surface, w)
    rank = rational_rank(pres.relations)
    criteria.append(
        Criterion(
            name="page-rational-injection",
            status=Status.PASSED if rank == 0 else Status.OBSTRUCTED,
            citation=CITE["thm_b"],
            witness=None
            if rank == 0
            else {"relations": pres.relations.to_lists(), "rational_rank": rank},
        )
    )

    group = pres.homology()
    if group.free_rank == 0 and not surface.is_disc:
        criteria.append(
            Criterion(
                name="rational-homology-sphere",
                status=Status.OBSTRUCTED,
                citation=CITE["cor_c"],
                witness={"H1": str(group), "page": str(surface)},
            )
        )
    elif surface.is_disc:
        criteria.append(
            Criterion(
                name="rational-homology-sphere",
                status=Status.PASSED,
                citation=CITE["cor_c"],
                witness={"H1": str(group)},
            )
        )
    else:
        criteria.append(
            Criterion(
                name="rational-homology-sphere",
                status=Status.NOT_APPLICABLE,
                citation=CITE["cor_c"],
                witness={"b1": group.free_rank},
            )
        )

    subset_encoded = surface.is_planar and all(
        c.planar_subset is not None for c, _ in w.letters
    )
    if subset_encoded:
        ab = planar_abelianization(w)
        nonzero = any(x != 0 for x in ab)
        criteria.append(
            Criterion(
                name="planar-commutator",
                status=Status.OBSTRUCTED if nonzero else Status.PASSED,
                citation=CITE["cor_d"],
                witness={
                    "abelianization": list(ab),
                    "pairs": [list(p) for p in boundary_pairs(surface.boundary_count)],
                }
                if nonzero
                else None,
            )
        )
    else:
        criteria.append(
            Criterion(
                name="planar-commutator",
                status=Status.NOT_APPLICABLE,
                citation=CITE["cor_d"],
                witness=None,
            )
        )

    exps = [e for _, e in w.letters]
    sign_coherent = bool(exps) and (all(e > 0 for e in exps) or all(e < 0 for e in exps))
    if surface.is_planar and sign_coherent:
        criteria.append(
            Criterion(
                name="weak-fillability",
                status=Status.PASSED,
                citation=CITE["weak"] + "; " + CITE["thm_e"],
                witness=None,
            )
        )

    return _finish(criteria, identity_monodromy=w.is_empty)


def check_stabilization(surface: Surface, w: TwistWord, i: int, j: int) -> Verdict:
    """Stabilize positively along boundaries (i, j), analyze, and verify the
    stabilization mechanism itself: the new curve class must be nonzero on
    the stabilized page and must die in the first homology of the new open
    book."""
    stab_surface, stab_word = positive_stabilization(surface, w, i, j)
    base = analyze(stab_surface, stab_word)

    new_curve = stab_word.letters[-1][0]
    pres = presentation(stab_surface, stab_word)
    nonzero_on_page = not new_curve.is_zero
    dies_in_open_book = in_row_span(pres.relations, new_curve.coeffs)
    if not (nonzero_on_page and dies_in_open_book):
        raise RuntimeError(
            "stabilization mechanism violated: the new curve class should be "
            "nonzero on the page and null-homologous in the open book"
        )
    mechanism = Criterion(
        name="stabilization-mechanism",
        status=Status.OBSTRUCTED,
        citation=CITE["cor_1_6"],
        witness={
            "new_curve": list(new_curve.coeffs),
            "nonzero_on_page": nonzero_on_page,
            "dies_in_open_book": dies_in_open_book,
            "H1": str(pres.homology()),
            "stabilized_page": str(stab_surface),
        },
    )
    return Verdict(
        base.criteria + (mechanism,),
        Summary.NOT_STRONGLY_FILLABLE,
        base.tightness_note,
    )
