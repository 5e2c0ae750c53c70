"""Compact oriented surfaces with boundary and their first homology.

A surface of genus g with b >= 1 boundary components carries fixed bases
for absolute homology (a_1, b_1, ..., a_g, b_g, d_1, ..., d_{b-1}; the d_j
are boundary circles, the last boundary class being minus their sum) and
for homology relative to the boundary (alpha_1, beta_1, ..., alpha_g,
beta_g, A_2, ..., A_b; the A_i are arcs from boundary 1 to boundary i).
The Poincare-Lefschetz pairing between the two is stored as an explicit
unimodular matrix, and all intersection-theoretic computations downstream
reduce to it.

Sign conventions are fixed here once and never re-chosen; every sign
freedom further down is absorbed by the lens-space calibration of the
open-book homology.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import gcd

from .algebra import IntMatrix


@dataclass(frozen=True)
class Surface:
    genus: int
    boundary_count: int
    pairing: IntMatrix      # rows: relative basis, cols: absolute basis
    rho: IntMatrix          # absolute -> relative comparison map
    intersection: IntMatrix  # rho^T * pairing, the skew form on absolute classes

    @property
    def rank(self) -> int:
        """Rank m = 2g + b - 1 of the first homology."""
        return 2 * self.genus + self.boundary_count - 1

    @property
    def is_disc(self) -> bool:
        return self.genus == 0 and self.boundary_count == 1

    @property
    def is_planar(self) -> bool:
        return self.genus == 0

    def abs_labels(self) -> list[str]:
        g, b = self.genus, self.boundary_count
        out = []
        for i in range(1, g + 1):
            out += [f"a{i}", f"b{i}"]
        out += [f"d{j}" for j in range(1, b)]
        return out

    def rel_labels(self) -> list[str]:
        g, b = self.genus, self.boundary_count
        out = []
        for i in range(1, g + 1):
            out += [f"alpha{i}", f"beta{i}"]
        out += [f"A{i}" for i in range(2, b + 1)]
        return out

    def rel_arc(self, i: int) -> tuple[int, ...]:
        """Coordinates of the arc class A_i, for 2 <= i <= boundary_count."""
        if not 2 <= i <= self.boundary_count:
            raise ValueError(f"arc index {i} out of range 2..{self.boundary_count}")
        m = self.rank
        pos = 2 * self.genus + (i - 2)
        return tuple(int(k == pos) for k in range(m))

    def curve(self, coeffs, planar_subset=None) -> "CurveClass":
        return CurveClass(self, tuple(int(c) for c in coeffs), planar_subset)

    def __str__(self):
        return f"Sigma_{{{self.genus},{self.boundary_count}}}"


@dataclass(frozen=True)
class CurveClass:
    """An absolute homology class of a curve on a fixed surface.

    ``planar_subset`` is set when the class is the boundary-subset curve
    sum_{j in S} d_j on a planar surface; that encoding is what feeds the
    abelianization homomorphism.
    """

    surface: Surface
    coeffs: tuple[int, ...]
    planar_subset: frozenset[int] | None = None

    def __post_init__(self):
        if len(self.coeffs) != self.surface.rank:
            raise ValueError("curve vector length must equal the homology rank")
        if self.planar_subset is not None:
            object.__setattr__(self, "planar_subset", frozenset(self.planar_subset))
            expected = _subset_vector(self.surface, self.planar_subset)
            if self.coeffs != expected:
                raise ValueError("planar subset does not match the coefficient vector")
        nonzero = [c for c in self.coeffs if c]
        if nonzero:
            g = 0
            for c in nonzero:
                g = gcd(g, abs(c))
            if g > 1:
                warnings.warn(
                    f"curve class {self.coeffs} is a non-primitive multiple; "
                    "interpreting it at the homology level only",
                    stacklevel=2,
                )

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _subset_vector(surface: Surface, subset) -> tuple[int, ...]:
    g, b = surface.genus, surface.boundary_count
    m = surface.rank
    vec = [0] * m
    for j in subset:
        vec[2 * g + (j - 1)] = 1
    return tuple(vec)


def new_surface(genus: int, boundary_count: int) -> Surface:
    """Build Sigma_{g,b} with the fixed pairing conventions.

    The pairing is <alpha_i, b_j> = delta_ij, <beta_i, a_j> = -delta_ij,
    <A_i, d_j> = delta_ij - delta_1j, all other blocks zero; this matrix is
    unimodular for every b (Poincare-Lefschetz duality).  rho sends a_i,
    b_i to alpha_i, beta_i and kills the boundary classes.
    """
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    if boundary_count < 1:
        raise ValueError("closed surfaces are out of scope; need at least one boundary component")
    g, b = genus, boundary_count
    m = 2 * g + b - 1

    p = [[0] * m for _ in range(m)]
    for i in range(g):
        # row 2i is alpha_{i+1}, row 2i+1 is beta_{i+1}
        p[2 * i][2 * i + 1] = 1
        p[2 * i + 1][2 * i] = -1
    for i in range(2, b + 1):        # arc A_i
        row = 2 * g + (i - 2)
        for j in range(1, b):        # boundary d_j
            col = 2 * g + (j - 1)
            p[row][col] = int(i == j) - int(j == 1)

    rho = [[0] * m for _ in range(m)]
    for k in range(2 * g):
        rho[k][k] = 1

    pm = IntMatrix.from_rows(p, m)
    rm = IntMatrix.from_rows(rho, m)
    return Surface(g, b, pm, rm, rm.transpose() * pm)


def planar_curve(surface: Surface, subset) -> CurveClass:
    """The curve on a planar surface enclosing the boundary components in S.

    S must be a nonempty subset of {1, ..., b-1}; S = {1, ..., b-1} is the
    boundary-parallel curve around the last component and is allowed.
    """
    if surface.genus != 0:
        raise ValueError("subset-encoded curves require a planar surface")
    subset = frozenset(int(j) for j in subset)
    if not subset:
        raise ValueError("empty subset bounds a disc; the twist would be trivial")
    if not subset <= set(range(1, surface.boundary_count)):
        raise ValueError(
            f"subset {sorted(subset)} not contained in 1..{surface.boundary_count - 1}"
        )
    return CurveClass(surface, _subset_vector(surface, subset), subset)


def pair(surface: Surface, rel, curve: CurveClass) -> int:
    """Pairing of a relative class (in the relative basis) with a curve class."""
    m = surface.rank
    if len(rel) != m:
        raise ValueError("relative vector length must equal the homology rank")
    pc = surface.pairing.apply(curve.coeffs)
    return sum(int(r) * v for r, v in zip(rel, pc))
