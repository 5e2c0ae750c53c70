"""Grid scans of form densities, and the pointwise Reeb field solver.

A scan certifies the sign of a top density only at its sample points;
reports always say so.  Periodic axes are sampled with the endpoint
excluded, interval axes inclusively.  The argmin is deterministic: ties
break toward the lexicographically first grid index.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .expr import Expr
from .fields import Chart, FormField, d, top_density, wedge, wedge_power

__all__ = [
    "DEFAULT_PERIODIC_POINTS",
    "DEFAULT_INTERVAL_POINTS",
    "ScanReport",
    "MinimalKReport",
    "ReebReport",
    "grid_axes",
    "scan_density",
    "contact_density",
    "verify_contact_form",
    "minimal_positive_parameter",
    "reeb_solve",
]

DEFAULT_PERIODIC_POINTS = 32
DEFAULT_INTERVAL_POINTS = 17


@dataclass(frozen=True)
class ScanReport:
    resolution: tuple[int, ...]
    min_density: float
    max_density: float
    argmin: tuple[float, ...]
    verdict: str  # "Positive" | "NonPositive"
    samples: int
    note: str

    def __post_init__(self):
        if self.min_density > self.max_density:
            raise ValueError("min_density must not exceed max_density")
        expected = "Positive" if self.min_density > 0.0 else "NonPositive"
        if self.verdict != expected:
            raise ValueError("verdict must reflect the sign of the minimum")

    @property
    def sign_definite(self) -> bool:
        """Nonvanishing with one sign at every sample; the pass criterion
        for contact checks, where global orientation is a convention."""
        return self.min_density > 0.0 or self.max_density < 0.0

    def to_json(self) -> dict:
        return {
            "resolution": list(self.resolution),
            "min_density": self.min_density,
            "max_density": self.max_density,
            "argmin": list(self.argmin),
            "verdict": self.verdict,
            "sign_definite": self.sign_definite,
            "samples": self.samples,
            "note": self.note,
        }


def _axis_points(axis, count: int) -> np.ndarray:
    if count < 2:
        raise ValueError("need at least two sample points per axis")
    if axis.periodic:
        return np.linspace(axis.lo, axis.hi, count, endpoint=False)
    return np.linspace(axis.lo, axis.hi, count)


def resolve_resolution(chart: Chart, resolution) -> tuple[int, ...]:
    """Per-axis sample counts from an int, a name-keyed dict, or None."""
    if resolution is None:
        return tuple(
            DEFAULT_PERIODIC_POINTS if a.periodic else DEFAULT_INTERVAL_POINTS
            for a in chart.axes
        )
    if isinstance(resolution, int):
        return (resolution,) * chart.dim
    if isinstance(resolution, dict):
        return tuple(
            int(
                resolution.get(
                    a.name,
                    DEFAULT_PERIODIC_POINTS if a.periodic else DEFAULT_INTERVAL_POINTS,
                )
            )
            for a in chart.axes
        )
    out = tuple(int(r) for r in resolution)
    if len(out) != chart.dim:
        raise ValueError("resolution length must match the chart dimension")
    return out


def grid_axes(chart: Chart, resolution) -> tuple[tuple[int, ...], list[np.ndarray]]:
    counts = resolve_resolution(chart, resolution)
    return counts, [_axis_points(a, c) for a, c in zip(chart.axes, counts)]


def scan_density(density: Expr, chart: Chart, resolution=None) -> ScanReport:
    """Evaluate a scalar density on the product grid and report extrema."""
    counts, points = grid_axes(chart, resolution)
    mesh = np.meshgrid(*points, indexing="ij")
    env = {a.name: m for a, m in zip(chart.axes, mesh)}
    values = np.broadcast_to(
        np.asarray(density.evaluate(env), dtype=float), tuple(counts)
    )
    if not np.all(np.isfinite(values)):
        raise FloatingPointError("density evaluated to a non-finite value")
    flat = values.reshape(-1)
    kmin = int(np.argmin(flat))  # first occurrence = lexicographic grid index
    kmax = int(np.argmax(flat))
    idx = np.unravel_index(kmin, tuple(counts))
    argmin = tuple(float(points[a][i]) for a, i in enumerate(idx))
    vmin = float(flat[kmin])
    vmax = float(flat[kmax])
    samples = int(flat.size)
    return ScanReport(
        resolution=counts,
        min_density=vmin,
        max_density=vmax,
        argmin=argmin,
        verdict="Positive" if vmin > 0.0 else "NonPositive",
        samples=samples,
        note=f"density sampled at {samples} grid points; no claim off the grid",
    )


def contact_density(beta: FormField) -> Expr:
    """Top density of beta wedge (d beta)^n on a (2n+1)-chart."""
    if beta.degree != 1:
        raise ValueError("a contact check needs a 1-form")
    dim = beta.chart.dim
    if dim % 2 == 0:
        raise ValueError("a contact check needs an odd-dimensional chart")
    n = (dim - 1) // 2
    return top_density(wedge(beta, wedge_power(d(beta), n)))


def verify_contact_form(beta: FormField, resolution=None) -> ScanReport:
    return scan_density(contact_density(beta), beta.chart, resolution)


@dataclass(frozen=True)
class MinimalKReport:
    k_min: float
    tested: tuple[tuple[float, str], ...]
    report_at_k_min: ScanReport
    monotone: bool

    def to_json(self) -> dict:
        return {
            "k_min": self.k_min,
            "tested": [[k, v] for k, v in self.tested],
            "monotone": self.monotone,
            "report_at_k_min": self.report_at_k_min.to_json(),
        }


def minimal_positive_parameter(
    density_at, chart: Chart, k_range, resolution=None, bisection_steps: int = 40
) -> MinimalKReport:
    """Smallest tested parameter K with a Positive grid verdict.

    ``density_at(K)`` must produce the scalar density expression; the
    density is assumed (and verified on the tested values) to turn
    Positive monotonically in K.  Raises ValueError when no K in range
    passes.
    """
    k_lo, k_hi = float(k_range[0]), float(k_range[1])
    if not k_lo < k_hi:
        raise ValueError("empty K range")
    tested: list[tuple[float, ScanReport]] = []

    def probe(k: float) -> ScanReport:
        rep = scan_density(density_at(k), chart, resolution)
        tested.append((k, rep))
        return rep

    top = probe(k_hi)
    if top.verdict != "Positive":
        raise ValueError(f"no Positive K in range [{k_lo}, {k_hi}]")
    bottom = probe(k_lo)
    if bottom.verdict == "Positive":
        best_k, best_rep = k_lo, bottom
    else:
        lo, hi = k_lo, k_hi
        best_k, best_rep = k_hi, top
        for _ in range(bisection_steps):
            mid = 0.5 * (lo + hi)
            rep = probe(mid)
            if rep.verdict == "Positive":
                best_k, best_rep = mid, rep
                hi = mid
            else:
                lo = mid
    ordered = sorted(tested, key=lambda kv: kv[0])
    monotone = True
    seen_positive = False
    for _, rep in ordered:
        if rep.verdict == "Positive":
            seen_positive = True
        elif seen_positive:
            monotone = False
    if not monotone:
        raise ValueError("positivity is not monotone in K on the tested values")
    return MinimalKReport(
        k_min=best_k,
        tested=tuple((k, rep.verdict) for k, rep in ordered),
        report_at_k_min=best_rep,
        monotone=monotone,
    )


@dataclass(frozen=True)
class ReebReport:
    point: tuple[float, ...]
    vector: tuple[float, ...]
    residual_pairing: float   # |beta(R) - 1|
    residual_contraction: float  # sup norm of iota_R d(beta)
    density: float

    def to_json(self) -> dict:
        return {
            "point": list(self.point),
            "vector": list(self.vector),
            "residual_pairing": self.residual_pairing,
            "residual_contraction": self.residual_contraction,
            "density": self.density,
        }


def reeb_solve(beta: FormField, point: dict) -> ReebReport:
    """Solve beta(R) = 1, iota_R d(beta) = 0 at one chart point.

    The two conditions combine into the square system
    (A^T + b b^T) R = b, where b collects the coefficients of beta and A
    the antisymmetric coefficient matrix of d(beta); at a contact point
    the system is invertible and the unique solution is the Reeb vector.
    """
    chart = beta.chart
    if beta.degree != 1:
        raise ValueError("the Reeb equations need a 1-form")
    names = chart.names()
    missing = [n for n in names if n not in point]
    if missing:
        raise ValueError(f"point is missing coordinates {missing}")
    env = {n: float(point[n]) for n in names}
    dim = chart.dim

    b = np.zeros(dim)
    for (i,), coeff in beta.terms:
        b[i] = float(coeff.evaluate(env))
    a = np.zeros((dim, dim))
    for (i, j), coeff in d(beta).terms:
        val = float(coeff.evaluate(env))
        a[i, j] = val
        a[j, i] = -val

    density = float(contact_density(beta).evaluate(env))
    system = a.T + np.outer(b, b)
    try:
        solution = np.linalg.solve(system, b)
    except np.linalg.LinAlgError as err:
        raise ValueError(f"degenerate point: {err}") from None
    if not np.all(np.isfinite(solution)):
        raise ValueError("degenerate point: system solved to non-finite values")

    residual_pairing = abs(float(b @ solution) - 1.0)
    residual_contraction = float(np.max(np.abs(solution @ a))) if dim else 0.0
    return ReebReport(
        point=tuple(env[n] for n in names),
        vector=tuple(float(x) for x in solution),
        residual_pairing=residual_pairing,
        residual_contraction=residual_contraction,
        density=density,
    )
