"""Differential forms with expression coefficients on coordinate charts.

A chart is an ordered list of named axes, each an interval or a circle of
given period.  A p-form is a list of (strictly increasing multi-index,
coefficient expression) terms; wedge products and exterior derivatives
are computed with exact permutation signs and exact symbolic partials.
"""

from __future__ import annotations

from dataclasses import dataclass

from .expr import Const, Expr, add, mul

__all__ = ["Axis", "Chart", "FormField", "wedge", "d", "top_density"]


@dataclass(frozen=True)
class Axis:
    name: str
    lo: float
    hi: float
    periodic: bool = False

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"axis {self.name!r} needs lo < hi")

    @classmethod
    def interval(cls, name: str, lo: float, hi: float) -> "Axis":
        return cls(name, float(lo), float(hi), False)

    @classmethod
    def circle(cls, name: str, period: float) -> "Axis":
        return cls(name, 0.0, float(period), True)


@dataclass(frozen=True)
class Chart:
    axes: tuple[Axis, ...]

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ValueError("duplicate axis names")

    @property
    def dim(self) -> int:
        return len(self.axes)

    def names(self) -> tuple[str, ...]:
        return tuple(a.name for a in self.axes)

    def index(self, name: str) -> int:
        for k, a in enumerate(self.axes):
            if a.name == name:
                return k
        raise KeyError(name)


def _merge_sign(left: tuple[int, ...], right: tuple[int, ...]):
    """Sign of sorting the concatenation of two increasing multi-indices,
    or None when they overlap."""
    if set(left) & set(right):
        return None, ()
    merged = list(left + right)
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(merged)):
        j = i
        while j > 0 and merged[j - 1] > merged[j]:
            merged[j - 1], merged[j] = merged[j], merged[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(merged)


@dataclass(frozen=True)
class FormField:
    chart: Chart
    degree: int
    terms: tuple[tuple[tuple[int, ...], Expr], ...]

    def __post_init__(self):
        n = self.chart.dim
        if not 0 <= self.degree <= n:
            raise ValueError("degree out of range for the chart")
        seen = set()
        for idx, _ in self.terms:
            if len(idx) != self.degree:
                raise ValueError("multi-index length must equal the degree")
            if list(idx) != sorted(set(idx)):
                raise ValueError("multi-indices must be strictly increasing")
            if idx in seen:
                raise ValueError("duplicate multi-index")
            if any(not 0 <= k < n for k in idx):
                raise ValueError("multi-index out of chart range")
            seen.add(idx)

    @classmethod
    def build(cls, chart: Chart, degree: int, terms: dict) -> "FormField":
        """Terms keyed by axis-name tuples (or index tuples); zero
        coefficients are dropped and indices are renormalised."""
        collected: dict[tuple[int, ...], Expr] = {}
        for key, coeff in terms.items():
            idx = tuple(
                chart.index(k) if isinstance(k, str) else int(k) for k in key
            )
            sign, idx = _sort_index(idx)
            if sign == 0:
                continue
            coeff = mul(Const(float(sign)), coeff)
            collected[idx] = add(collected[idx], coeff) if idx in collected else coeff
        out = tuple(
            (idx, c) for idx, c in sorted(collected.items()) if not c.is_zero
        )
        return cls(chart, degree, out)

    @classmethod
    def zero(cls, chart: Chart, degree: int) -> "FormField":
        return cls(chart, degree, ())

    @classmethod
    def function(cls, chart: Chart, coeff: Expr) -> "FormField":
        if coeff.is_zero:
            return cls(chart, 0, ())
        return cls(chart, 0, (((), coeff),))

    @classmethod
    def one_form(cls, chart: Chart, coeffs: dict) -> "FormField":
        return cls.build(chart, 1, {(k,): v for k, v in coeffs.items()})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, idx) -> Expr:
        idx = tuple(
            self.chart.index(k) if isinstance(k, str) else int(k) for k in idx
        )
        for i, c in self.terms:
            if i == idx:
                return c
        return Const(0.0)

    def __add__(self, other: "FormField") -> "FormField":
        if other.chart != self.chart or other.degree != self.degree:
            raise ValueError("can only add forms of one degree on one chart")
        collected = dict(self.terms)
        for idx, c in other.terms:
            collected[idx] = add(collected[idx], c) if idx in collected else c
        return FormField(
            self.chart,
            self.degree,
            tuple((i, c) for i, c in sorted(collected.items()) if not c.is_zero),
        )

    def __neg__(self) -> "FormField":
        return self.scaled(Const(-1.0))

    def __sub__(self, other: "FormField") -> "FormField":
        return self + (-other)

    def scaled(self, factor) -> "FormField":
        out = []
        for idx, c in self.terms:
            c2 = mul(factor, c)
            if not c2.is_zero:
                out.append((idx, c2))
        return FormField(self.chart, self.degree, tuple(out))


def _sort_index(idx: tuple[int, ...]):
    if len(set(idx)) != len(idx):
        return 0, ()
    sign, merged = 1, list(idx)
    for i in range(1, len(merged)):
        j = i
        while j > 0 and merged[j - 1] > merged[j]:
            merged[j - 1], merged[j] = merged[j], merged[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(merged)


def wedge(a: FormField, b: FormField) -> FormField:
    """Graded-commutative wedge product with exact permutation signs."""
    if a.chart != b.chart:
        raise ValueError("wedge requires both forms on the same chart")
    degree = a.degree + b.degree
    if degree > a.chart.dim:
        return FormField.zero(a.chart, a.chart.dim)
    collected: dict[tuple[int, ...], Expr] = {}
    for ia, ca in a.terms:
        for ib, cb in b.terms:
            sign, idx = _merge_sign(ia, ib)
            if sign is None:
                continue
            coeff = mul(Const(float(sign)), ca, cb)
            collected[idx] = add(collected[idx], coeff) if idx in collected else coeff
    return FormField(
        a.chart,
        degree,
        tuple((i, c) for i, c in sorted(collected.items()) if not c.is_zero),
    )


def wedge_power(a: FormField, n: int) -> FormField:
    out = FormField.function(a.chart, Const(1.0))
    for _ in range(n):
        out = wedge(out, a)
    return out


def d(a: FormField) -> FormField:
    """Exterior derivative via exact symbolic partials.

    The derivative of a top-degree form is the zero form, represented at
    top degree (there are no higher multi-indices on the chart).
    """
    if a.degree == a.chart.dim:
        return FormField.zero(a.chart, a.chart.dim)
    names = a.chart.names()
    collected: dict[tuple[int, ...], Expr] = {}
    for idx, coeff in a.terms:
        for k in range(a.chart.dim):
            if k in idx:
                continue
            partial = coeff.diff(names[k])
            if partial.is_zero:
                continue
            sign, merged = _merge_sign((k,), idx)
            term = mul(Const(float(sign)), partial)
            collected[merged] = (
                add(collected[merged], term) if merged in collected else term
            )
    return FormField(
        a.chart,
        a.degree + 1,
        tuple((i, c) for i, c in sorted(collected.items()) if not c.is_zero),
    )


def top_density(a: FormField) -> Expr:
    """Coefficient of the full volume multi-index of a top-degree form."""
    if a.degree != a.chart.dim:
        raise ValueError("top density needs a top-degree form")
    return a.coefficient(tuple(range(a.chart.dim)))
