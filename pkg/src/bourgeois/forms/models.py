"""Built-in coordinate models and the model file format.

Three verification targets ship with the package:

* PAPER-PAGE: the mapping-torus region of the product decomposition, a
  5-chart (s, x, th, q1, q2) carrying s dx + cos(th) dq1 + sin(th) dq2;
  its contact density is identically -2 in this chart orientation.
* PAPER-SPINE: the binding region, a 5-chart (z, p1, q1, p2, q2) carrying
  dz + p1 dq1 + p2 dq2; density identically +2.
* The annulus-page cobordism slab, a 6-chart (t, s, th, x, u, v) carrying
  d[e^t (s dth + dx + chi(t) rho(u) dH)] + omega_S with H compactly
  supported in the annulus; its cubed density must stay positive.

User models load from JSON: chart axes (range or period), term list with
coefficient strings in the expression grammar, optional resolution.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .expr import Const, Expr, add, cos, cut, exp, mul, parse_expr, sin, var
from .fields import Axis, Chart, FormField

__all__ = [
    "TWO_PI",
    "Model",
    "paper_page_model",
    "paper_spine_model",
    "cobordism_density",
    "large_k_model",
    "builtin_model",
    "load_model",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class Model:
    name: str
    beta: FormField
    resolution: tuple[int, ...] | None = None


def paper_page_model() -> Model:
    chart = Chart(
        (
            Axis.interval("s", 1.0, 2.0),
            Axis.circle("x", TWO_PI),
            Axis.circle("th", TWO_PI),
            Axis.circle("q1", TWO_PI),
            Axis.circle("q2", TWO_PI),
        )
    )
    beta = FormField.one_form(
        chart,
        {"x": var("s"), "q1": cos(var("th")), "q2": sin(var("th"))},
    )
    return Model("PAPER-PAGE", beta)


def paper_spine_model() -> Model:
    chart = Chart(
        (
            Axis.circle("z", TWO_PI),
            Axis.interval("p1", -1.0, 1.0),
            Axis.circle("q1", TWO_PI),
            Axis.interval("p2", -1.0, 1.0),
            Axis.circle("q2", TWO_PI),
        )
    )
    beta = FormField.one_form(
        chart,
        {"z": Const(1.0), "q1": var("p1"), "q2": var("p2")},
    )
    return Model("PAPER-SPINE", beta)


def _bump(coord: Expr, lo: float, rise: float, fall: float, hi: float) -> Expr:
    """Smooth compactly supported bump: 0 outside [lo, hi], 1 on [rise, fall]."""
    if not lo < rise < fall < hi:
        raise ValueError("bump knots must be increasing")
    return mul(cut(coord, lo, rise), add(1.0, mul(-1.0, cut(coord, fall, hi))))


def cobordism_chart(cap: float = 0.2) -> Chart:
    if not 0.0 < cap < math.pi / 2:
        raise ValueError("sphere cap exclusion must lie in (0, pi/2)")
    return Chart(
        (
            Axis.interval("t", 0.0, 1.0),
            Axis.interval("s", -1.0, 1.0),
            Axis.circle("th", TWO_PI),
            Axis.circle("x", TWO_PI),
            Axis.interval("u", cap, math.pi - cap),
            Axis.circle("v", TWO_PI),
        )
    )


def cobordism_forms(
    amplitude: float = 0.1,
    sphere_area: float = 1.0,
    chi_knots: tuple[float, float] = (0.2, 0.8),
    rho_knots: tuple[float, float] = (1.2, 1.9),
    h_support: tuple[float, float, float, float] = (-0.8, -0.4, 0.4, 0.8),
    cap: float = 0.2,
) -> tuple[FormField, FormField]:
    """The slab primitive e^t (alpha + chi rho dH) and the sphere area form.

    alpha = s dth + dx on the annulus-times-circle factor; chi is
    non-increasing from 1 to 0 along t, rho non-increasing from 1 to 0
    along the sphere polar angle, H compactly supported in the annulus
    interior with the given amplitude.
    """
    if sphere_area <= 0.0:
        raise ValueError("sphere area must be positive")
    if not (0.0 <= chi_knots[0] < chi_knots[1] <= 1.0):
        raise ValueError("chi knots must satisfy 0 <= a < b <= 1")
    if not (cap <= rho_knots[0] < rho_knots[1] <= math.pi - cap):
        raise ValueError("rho knots must lie inside the sampled polar range")
    chart = cobordism_chart(cap)
    t, s, th, u = var("t"), var("s"), var("th"), var("u")

    chi = add(1.0, mul(-1.0, cut(t, *chi_knots)))          # 1 near t=0, 0 near t=1
    rho = add(1.0, mul(-1.0, cut(u, *rho_knots)))          # 1 near the north cap
    h = mul(Const(float(amplitude)), _bump(s, *h_support), cos(th))
    h_s = h.diff("s")
    h_th = h.diff("th")

    et = exp(t)
    beta_hat = FormField.one_form(
        chart,
        {
            "th": mul(et, add(s, mul(chi, rho, h_th))),
            "x": et,
            "s": mul(et, chi, rho, h_s),
        },
    )
    omega_s = FormField.build(
        chart, 2, {("u", "v"): mul(Const(float(sphere_area)), sin(u))}
    )
    return beta_hat, omega_s


def cobordism_density(**kwargs) -> tuple[Expr, Chart]:
    """Top density of (d beta_hat + omega_S)^3 on the cobordism slab."""
    from .fields import d, top_density, wedge_power

    beta_hat, omega_s = cobordism_forms(**kwargs)
    omega = d(beta_hat) + omega_s
    return top_density(wedge_power(omega, 3)), beta_hat.chart


def large_k_chart() -> Chart:
    return Chart(
        (
            Axis.circle("th", TWO_PI),
            Axis.interval("s", -1.0, 1.0),
            Axis.circle("y", TWO_PI),
        )
    )


def large_k_model(amplitude: float = 1.0):
    """The mapping-torus contact family K dth + lambda, lambda the fiberwise
    Liouville form with the gluing interpolation of the given amplitude.

    Returns (chart, beta_of_k): the monodromy correction -d(rho(th) h)
    switches on across the fiber direction th, so the 1-form is the glued
    mapping-torus form written on the cut-open chart.  The density of
    beta wedge d(beta) is affine in K at every point, so positivity is
    monotone and a bisection in K is sound.
    """
    chart = large_k_chart()
    th, s, y = var("th"), var("s"), var("y")
    rho = cut(th, 0.5, 5.5)
    h = mul(Const(float(amplitude)), _bump(s, -0.8, -0.4, 0.4, 0.8), cos(y))
    correction = mul(rho, h)
    c_th = correction.diff("th")
    c_s = correction.diff("s")
    c_y = correction.diff("y")

    def beta_of_k(k: float) -> FormField:
        return FormField.one_form(
            chart,
            {
                "th": add(Const(float(k)), mul(-1.0, c_th)),
                "s": mul(-1.0, c_s),
                "y": add(s, mul(-1.0, c_y)),
            },
        )

    return chart, beta_of_k


_BUILTINS = {
    "PAPER-PAGE": paper_page_model,
    "PAPER-SPINE": paper_spine_model,
}


def builtin_model(name: str) -> Model:
    key = name.upper()
    if key not in _BUILTINS:
        raise KeyError(
            f"unknown model {name!r}; built-ins: {sorted(_BUILTINS)} or a JSON file path"
        )
    return _BUILTINS[key]()


def _parse_bound(x) -> float:
    if isinstance(x, str):
        val = parse_expr(x)
        if not isinstance(val, Const):
            raise ValueError(f"axis bound {x!r} must be a constant expression")
        return val.value
    return float(x)


def load_model(path: str) -> Model:
    """Load a chart-plus-form model from a JSON file."""
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    axes = []
    for spec in doc["chart"]:
        name = spec["name"]
        if "period" in spec:
            axes.append(Axis.circle(name, _parse_bound(spec["period"])))
        elif "range" in spec:
            lo, hi = spec["range"]
            axes.append(Axis.interval(name, _parse_bound(lo), _parse_bound(hi)))
        else:
            raise ValueError(f"axis {name!r} needs a range or a period")
    chart = Chart(tuple(axes))
    degree = int(doc.get("degree", 1))
    terms = {}
    for term in doc["terms"]:
        key = tuple(term["axes"])
        coeff = parse_expr(term["coeff"])
        if key in terms:
            terms[key] = add(terms[key], coeff)
        else:
            terms[key] = coeff
    beta = FormField.build(chart, degree, terms)
    resolution = doc.get("resolution")
    if resolution is not None:
        from .scan import resolve_resolution

        resolution = resolve_resolution(chart, resolution)
    return Model(str(doc.get("name", path)), beta, resolution)
