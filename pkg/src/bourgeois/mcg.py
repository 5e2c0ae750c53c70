"""Mapping classes as Dehn-twist words and their homology actions.

A twist word is an ordered product of powers of Dehn twists about curve
classes; letters act left to right.  On homology a right-handed twist
about a class c acts by the transvection x -> x + <x, c> c (the
Picard-Lefschetz rule), where <,> is the fixed intersection form of the
surface module.  On planar surfaces the module also computes the image of
a word in the abelianization of the boundary-fixing mapping class group,
via the homomorphism that caps all but two boundary components to an
annulus, recorded as one integer per unordered pair of boundary
components.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import IntMatrix
from .surface import CurveClass, Surface, new_surface, planar_curve


@dataclass(frozen=True)
class TwistWord:
    """An ordered word of (curve, exponent) twist letters on one surface.

    Letters apply left to right: the word [(c1, e1), (c2, e2)] is the
    mapping class tau_{c2}^{e2} o tau_{c1}^{e1}.
    """

    surface: Surface
    letters: tuple[tuple[CurveClass, int], ...]

    def __post_init__(self):
        for curve, exp in self.letters:
            if curve.surface is not self.surface and curve.surface != self.surface:
                raise ValueError("letter curve lives on a different surface")
            if len(curve.coeffs) != self.surface.rank:
                raise ValueError("letter curve has the wrong length")
            if exp == 0:
                raise ValueError("twist exponents must be nonzero")

    def __len__(self):
        return len(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    def inverse(self) -> "TwistWord":
        return TwistWord(
            self.surface, tuple((c, -e) for c, e in reversed(self.letters))
        )

    def concat(self, other: "TwistWord") -> "TwistWord":
        """This word followed by ``other`` (``other`` acts last)."""
        if other.surface != self.surface:
            raise ValueError("cannot concatenate words on different surfaces")
        return TwistWord(self.surface, self.letters + other.letters)

    def conjugated_by(self, psi: "TwistWord") -> "TwistWord":
        """psi o self o psi^{-1} as a word."""
        return psi.inverse().concat(self).concat(psi)


def word(surface: Surface, letters) -> TwistWord:
    """Convenience constructor accepting (curve, exp) pairs or subset pairs."""
    out = []
    for curve, exp in letters:
        if isinstance(curve, CurveClass):
            out.append((curve, int(exp)))
        elif isinstance(curve, (set, frozenset)):
            out.append((planar_curve(surface, curve), int(exp)))
        else:
            out.append((surface.curve(curve), int(exp)))
    return TwistWord(surface, tuple(out))


def transvection(surface: Surface, curve: CurveClass, exp: int) -> IntMatrix:
    """Matrix of tau_curve^exp on absolute first homology."""
    m = surface.rank
    qc = surface.intersection.apply(curve.coeffs)
    ident = IntMatrix.identity(m)
    data = list(ident.data)
    for i in range(m):
        ci = curve.coeffs[i]
        if ci == 0:
            continue
        for j in range(m):
            data[i * m + j] += exp * ci * qc[j]
    return IntMatrix(m, m, tuple(data))


def homology_action(w: TwistWord) -> IntMatrix:
    """Matrix of the word on H_1 of the page (columns are images of basis vectors)."""
    m = w.surface.rank
    out = IntMatrix.identity(m)
    for curve, exp in w.letters:
        out = transvection(w.surface, curve, exp) * out
    return out


def is_homologically_trivial(w: TwistWord) -> bool:
    """Whether the word acts as the identity on H_1.

    The action matrix is integral, so triviality over the rationals and
    over the integers coincide.
    """
    return homology_action(w).is_identity()


def boundary_pairs(boundary_count: int) -> list[tuple[int, int]]:
    """Unordered pairs of boundary components in lexicographic order.

    Components are 1..b-1 plus the distinguished last component b;
    a pair (i, b) is the coordinate obtained by capping everything
    except components i and b.
    """
    b = boundary_count
    return [(i, j) for i in range(1, b + 1) for j in range(i + 1, b + 1)]


def planar_abelianization(w: TwistWord) -> tuple[int, ...]:
    """Image of a planar word in the abelianized mapping class group.

    Each coordinate is the winding in the annulus mapping class group
    obtained by capping off all boundary components except the given pair:
    a subset-curve tau_S caps to the core twist exactly when the curve
    still separates the two remaining components, i.e. when S contains
    exactly one of an inner pair, or contains i for a pair (i, b).
    """
    s = w.surface
    if s.genus != 0:
        raise ValueError("abelianization coordinates require a planar surface")
    b = s.boundary_count
    pairs = boundary_pairs(b)
    out = [0] * len(pairs)
    for curve, exp in w.letters:
        if curve.planar_subset is None:
            raise ValueError("every letter needs a boundary-subset encoding")
        sub = curve.planar_subset
        for k, (i, j) in enumerate(pairs):
            if j == b:
                hit = i in sub
            else:
                hit = len(sub & {i, j}) == 1
            if hit:
                out[k] += exp
    return tuple(out)


def in_commutator_kernel(w: TwistWord) -> bool:
    """True when the abelianization vanishes; False certifies the word is
    not a product of commutators.  (A zero vector is only an absence of
    this obstruction, not a membership certificate.)"""
    return all(c == 0 for c in planar_abelianization(w))


def capping_image_matrix(boundary_count: int) -> IntMatrix:
    """Abelianization images of the subset-curve twist generators.

    One row per nonempty subset of {1..b-1}, in binary-counter order; used
    to measure the index of the image lattice inside Z^{b(b-1)/2}.
    """
    b = boundary_count
    s = new_surface(0, b)
    rows = []
    subsets = []
    for mask in range(1, 1 << (b - 1)):
        sub = {j + 1 for j in range(b - 1) if mask >> j & 1}
        subsets.append(sub)
        rows.append(list(planar_abelianization(word(s, [(sub, 1)]))))
    return IntMatrix.from_rows(rows, len(boundary_pairs(b)))


def _pad_letters(letters, embed: IntMatrix, target: Surface):
    out = []
    for curve, exp in letters:
        out.append((target.curve(embed.apply(curve.coeffs)), exp))
    return out


def positive_stabilization(
    surface: Surface, w: TwistWord, i: int, j: int
) -> tuple[Surface, TwistWord]:
    """Plumb a positive Hopf band onto the page along boundaries i and j.

    For i != j the handle joins two distinct boundary circles and the page
    becomes Sigma_{g+1, b-1}; for i == j the handle has both feet on one
    circle, which splits, giving Sigma_{g, b+1}.  The old word is carried
    over by the induced map on homology and one positive twist about the
    new curve is appended.  The basis-extension rule below is fixed once
    and validated through the open-book homology oracles (the stabilized
    open book of the disc must be the 3-sphere); no geometric faithfulness
    beyond homology is claimed.
    """
    if w.surface != surface:
        raise ValueError("word does not live on the given surface")
    b = surface.boundary_count
    g = surface.genus
    if not (1 <= i <= b and 1 <= j <= b):
        raise ValueError(f"boundary indices must lie in 1..{b}")
    m = surface.rank

    if i == j:
        # Boundary component i splits into components i and b+1 of the new
        # surface.  Old classes d_k keep their slots; old d_i picks up the
        # class of the extra component.  The new curve is parallel to the
        # piece keeping label i.
        target = new_surface(g, b + 1)
        mm = target.rank  # m + 1
        embed_rows = [[0] * m for _ in range(mm)]
        for k in range(2 * g):
            embed_rows[k][k] = 1
        for k in range(1, b):  # old d_k -> slot of new d_k
            embed_rows[2 * g + (k - 1)][2 * g + (k - 1)] = 1
        if i <= b - 1:
            # [old C_i] = [new C_i] + [new C_{b+1}] and the last component
            # class is minus the sum of the basis ones, so the d'_i slot
            # cancels and every other boundary slot picks up -1.
            col = 2 * g + (i - 1)
            for k in range(b):
                embed_rows[2 * g + k][col] += -1
        embed = IntMatrix.from_rows(embed_rows, m)
        new_vec = [0] * mm
        new_vec[2 * g + (i - 1)] = 1
        new_curve = target.curve(
            new_vec, planar_subset={i} if g == 0 else None
        )
    else:
        # Distinct boundaries merge; the handle contributes a fresh genus
        # pair.  Old [C_i] is identified with the new b-generator, the
        # merged component takes the last boundary slot, and the new curve
        # is the new a-generator (it crosses the handle once and meets the
        # old surface only along [C_i]).
        target = new_surface(g + 1, b - 1)
        mm = target.rank  # m + 1
        survivors = [k for k in range(1, b + 1) if k not in (i, j)]
        slot = {k: idx for idx, k in enumerate(survivors)}  # 0-based new d index

        def component_image(k: int) -> list[int]:
            vec = [0] * mm
            if k == i:
                vec[2 * g + 1] = 1  # new b_{g+1}
            elif k == j:
                vec[2 * g + 1] = -1
                for idx in range(b - 2):
                    vec[2 * (g + 1) + idx] -= 1
            else:
                vec[2 * (g + 1) + slot[k]] = 1
            return vec

        embed_rows_t = []
        for k in range(2 * g):
            vec = [0] * mm
            vec[k] = 1
            embed_rows_t.append(vec)
        for k in range(1, b):
            embed_rows_t.append(component_image(k))
        # embed has columns indexed by the old basis
        embed = IntMatrix.from_rows(embed_rows_t, mm).transpose()
        new_vec = [0] * mm
        new_vec[2 * g] = 1  # new a_{g+1}
        new_curve = target.curve(new_vec)

    new_letters = _pad_letters(w.letters, embed, target)
    new_letters.append((new_curve, 1))
    return target, TwistWord(target, tuple(new_letters))
