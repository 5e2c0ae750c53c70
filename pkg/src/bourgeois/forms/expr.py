"""A tiny closed-form scalar expression grammar with exact derivatives.

Coefficients of the differential forms checked by this package are built
from constants, chart coordinates, sums, products, integer powers, sin,
cos, exp and a smooth monotone cutoff primitive.  The grammar is closed
under partial differentiation, which is what lets the scanners certify
densities at machine precision instead of leaning on finite differences.

The cutoff cut(x; x0, x1) is the quintic smoothstep ramp: identically 0
below x0, identically 1 above x1, monotone, and twice continuously
differentiable.  Its derivatives of every order stay in the grammar as
piecewise-polynomial primitives.

Evaluation accepts either floats or numpy arrays in the environment and
is deterministic double precision either way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Expr",
    "Const",
    "Var",
    "Sum",
    "Product",
    "Power",
    "Sin",
    "Cos",
    "Exp",
    "SmoothStep",
    "const",
    "var",
    "add",
    "mul",
    "power",
    "sin",
    "cos",
    "exp",
    "cut",
    "parse_expr",
]


class Expr:
    """Base class; concrete nodes are frozen dataclasses below."""

    def diff(self, name: str) -> "Expr":
        raise NotImplementedError

    def evaluate(self, env):
        raise NotImplementedError

    def variables(self) -> frozenset[str]:
        raise NotImplementedError

    @property
    def is_zero(self) -> bool:
        return isinstance(self, Const) and self.value == 0.0

    @property
    def is_one(self) -> bool:
        return isinstance(self, Const) and self.value == 1.0

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return add(self, mul(Const(-1.0), _coerce(other)))

    def __rsub__(self, other):
        return add(_coerce(other), mul(Const(-1.0), self))

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __neg__(self):
        return mul(Const(-1.0), self)

    def __pow__(self, n: int):
        return power(self, n)


def _coerce(x) -> Expr:
    if isinstance(x, Expr):
        return x
    return Const(float(x))


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def diff(self, name):
        return Const(0.0)

    def evaluate(self, env):
        return self.value

    def variables(self):
        return frozenset()

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def diff(self, name):
        return Const(1.0 if name == self.name else 0.0)

    def evaluate(self, env):
        return env[self.name]

    def variables(self):
        return frozenset((self.name,))

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def diff(self, name):
        return add(*(t.diff(name) for t in self.terms))

    def evaluate(self, env):
        out = self.terms[0].evaluate(env)
        for t in self.terms[1:]:
            out = out + t.evaluate(env)
        return out

    def variables(self):
        out = frozenset()
        for t in self.terms:
            out |= t.variables()
        return out

    def __str__(self):
        return "(" + " + ".join(str(t) for t in self.terms) + ")"


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple[Expr, ...]

    def diff(self, name):
        pieces = []
        for i, f in enumerate(self.factors):
            df = f.diff(name)
            if df.is_zero:
                continue
            rest = self.factors[:i] + self.factors[i + 1 :]
            pieces.append(mul(df, *rest))
        return add(*pieces)

    def evaluate(self, env):
        out = self.factors[0].evaluate(env)
        for f in self.factors[1:]:
            out = out * f.evaluate(env)
        return out

    def variables(self):
        out = frozenset()
        for f in self.factors:
            out |= f.variables()
        return out

    def __str__(self):
        return "(" + " * ".join(str(f) for f in self.factors) + ")"


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int

    def diff(self, name):
        db = self.base.diff(name)
        if db.is_zero:
            return Const(0.0)
        return mul(Const(float(self.exponent)), power(self.base, self.exponent - 1), db)

    def evaluate(self, env):
        b = self.base.evaluate(env)
        if self.exponent < 0:
            return np.asarray(b, dtype=float) ** self.exponent
        return b ** self.exponent

    def variables(self):
        return self.base.variables()

    def __str__(self):
        return f"{self.base}^{self.exponent}"


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr

    def diff(self, name):
        da = self.arg.diff(name)
        if da.is_zero:
            return Const(0.0)
        return mul(Cos(self.arg), da)

    def evaluate(self, env):
        return np.sin(self.arg.evaluate(env))

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        return f"sin({self.arg})"


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr

    def diff(self, name):
        da = self.arg.diff(name)
        if da.is_zero:
            return Const(0.0)
        return mul(Const(-1.0), Sin(self.arg), da)

    def evaluate(self, env):
        return np.cos(self.arg.evaluate(env))

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        return f"cos({self.arg})"


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr

    def diff(self, name):
        da = self.arg.diff(name)
        if da.is_zero:
            return Const(0.0)
        return mul(self, da)

    def evaluate(self, env):
        return np.exp(self.arg.evaluate(env))

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        return f"exp({self.arg})"


# Derivatives of the quintic ramp 10 t^3 - 15 t^4 + 6 t^5 on [0, 1],
# highest order first coefficient last; order 0 is the ramp itself.
_RAMP_POLYS = {
    0: (0.0, 0.0, 0.0, 10.0, -15.0, 6.0),
    1: (0.0, 0.0, 30.0, -60.0, 30.0),
    2: (0.0, 60.0, -180.0, 120.0),
    3: (60.0, -360.0, 360.0),
    4: (-360.0, 720.0),
    5: (720.0,),
}


@dataclass(frozen=True)
class SmoothStep(Expr):
    """order 0: the monotone ramp cut(arg; lo, hi); order k: its k-th derivative."""

    arg: Expr
    lo: float
    hi: float
    order: int = 0

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError("cutoff needs lo < hi")
        if self.order < 0:
            raise ValueError("derivative order must be nonnegative")

    def diff(self, name):
        da = self.arg.diff(name)
        if da.is_zero:
            return Const(0.0)
        return mul(SmoothStep(self.arg, self.lo, self.hi, self.order + 1), da)

    def evaluate(self, env):
        v = np.asarray(self.arg.evaluate(env), dtype=float)
        t = (v - self.lo) / (self.hi - self.lo)
        if self.order >= 6:
            return np.zeros_like(t)
        coeffs = _RAMP_POLYS[self.order]
        poly = np.zeros_like(t)
        for c in reversed(coeffs):
            poly = poly * t + c
        scale = (self.hi - self.lo) ** (-self.order)
        inside = (t > 0.0) & (t < 1.0)
        if self.order == 0:
            return np.where(t <= 0.0, 0.0, np.where(t >= 1.0, 1.0, poly))
        return np.where(inside, poly * scale, 0.0)

    def variables(self):
        return self.arg.variables()

    def __str__(self):
        base = f"cut({self.arg}, {self.lo!r}, {self.hi!r})"
        return base if self.order == 0 else f"{base}'{{{self.order}}}"


# ---------------------------------------------------------------------------
# Simplifying constructors.  Sums collect structurally equal terms, products
# fold constants and sort commuting factors, so that symbolic cancellations
# (second mixed partials in particular) produce a literal zero.


def _sort_key(e: Expr):
    return (type(e).__name__, str(e))


def const(v) -> Const:
    return Const(float(v))


def var(name: str) -> Var:
    return Var(name)


def _split_coeff(e: Expr) -> tuple[float, tuple[Expr, ...]]:
    if isinstance(e, Const):
        return e.value, ()
    if isinstance(e, Product):
        coeff = 1.0
        rest = []
        for f in e.factors:
            if isinstance(f, Const):
                coeff *= f.value
            else:
                rest.append(f)
        return coeff, tuple(rest)
    return 1.0, (e,)


def add(*terms) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        t = _coerce(t)
        if isinstance(t, Sum):
            flat.extend(t.terms)
        elif not t.is_zero:
            flat.append(t)
    collected: dict[tuple, tuple[float, tuple[Expr, ...]]] = {}
    constant = 0.0
    order: list[tuple] = []
    for t in flat:
        coeff, factors = _split_coeff(t)
        if not factors:
            constant += coeff
            continue
        key = tuple(_sort_key(f) for f in factors)
        if key in collected:
            collected[key] = (collected[key][0] + coeff, factors)
        else:
            collected[key] = (coeff, factors)
            order.append(key)
    out: list[Expr] = []
    if constant != 0.0:
        out.append(Const(constant))
    for key in order:
        coeff, factors = collected[key]
        if coeff == 0.0:
            continue
        out.append(mul(Const(coeff), *factors))
    if not out:
        return Const(0.0)
    if len(out) == 1:
        return out[0]
    return Sum(tuple(out))


def mul(*factors) -> Expr:
    flat: list[Expr] = []
    coeff = 1.0
    for f in factors:
        f = _coerce(f)
        if isinstance(f, Product):
            inner = f.factors
        else:
            inner = (f,)
        for g in inner:
            if isinstance(g, Const):
                coeff *= g.value
            else:
                flat.append(g)
    if coeff == 0.0:
        return Const(0.0)
    flat.sort(key=_sort_key)
    if not flat:
        return Const(coeff)
    if coeff != 1.0:
        flat.insert(0, Const(coeff))
    if len(flat) == 1:
        return flat[0]
    return Product(tuple(flat))


def power(base, n: int) -> Expr:
    base = _coerce(base)
    n = int(n)
    if n == 0:
        return Const(1.0)
    if n == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value ** n)
    return Power(base, n)


def sin(a) -> Expr:
    a = _coerce(a)
    if isinstance(a, Const):
        return Const(math.sin(a.value))
    return Sin(a)


def cos(a) -> Expr:
    a = _coerce(a)
    if isinstance(a, Const):
        return Const(math.cos(a.value))
    return Cos(a)


def exp(a) -> Expr:
    a = _coerce(a)
    if isinstance(a, Const):
        return Const(math.exp(a.value))
    return Exp(a)


def cut(a, lo: float, hi: float) -> Expr:
    return SmoothStep(_coerce(a), float(lo), float(hi), 0)


# ---------------------------------------------------------------------------
# Parser for the expression strings used in model files and on the CLI.
# expr   := term (('+'|'-') term)*
# term   := unary ('*' unary)*
# unary  := '-' unary | factor
# factor := atom (('^'|'**') signed-int)?
# atom   := number | 'pi' | name | func '(' expr ')' |
#           'cut' '(' expr ',' expr ',' expr ')' | '(' expr ')'


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def peek(self) -> str:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, expected: str):
        if not self.text.startswith(expected, self.pos):
            raise ValueError(
                f"expected {expected!r} at position {self.pos} in {self.text!r}"
            )
        self.pos += len(expected)


def parse_expr(text: str) -> Expr:
    toks = _Tokens(text)
    out = _parse_sum(toks)
    if toks.peek():
        raise ValueError(f"trailing input at position {toks.pos} in {text!r}")
    return out


def _parse_sum(toks: _Tokens) -> Expr:
    terms = [_parse_term(toks)]
    while True:
        c = toks.peek()
        if c == "+":
            toks.take("+")
            terms.append(_parse_term(toks))
        elif c == "-":
            toks.take("-")
            terms.append(mul(Const(-1.0), _parse_term(toks)))
        else:
            return add(*terms)


def _parse_term(toks: _Tokens) -> Expr:
    factors = [_parse_unary(toks)]
    while toks.peek() == "*":
        if toks.text.startswith("**", toks.pos):
            break
        toks.take("*")
        factors.append(_parse_unary(toks))
    return mul(*factors)


def _parse_unary(toks: _Tokens) -> Expr:
    if toks.peek() == "-":
        toks.take("-")
        return mul(Const(-1.0), _parse_unary(toks))
    return _parse_factor(toks)


def _parse_factor(toks: _Tokens) -> Expr:
    atom = _parse_atom(toks)
    c = toks.peek()
    if c == "^" or toks.text.startswith("**", toks.pos):
        toks.take("**" if toks.text.startswith("**", toks.pos) else "^")
        sign = 1
        if toks.peek() == "-":
            toks.take("-")
            sign = -1
        n = _parse_int(toks)
        return power(atom, sign * n)
    return atom


def _parse_int(toks: _Tokens) -> int:
    toks.peek()
    start = toks.pos
    while toks.pos < len(toks.text) and toks.text[toks.pos].isdigit():
        toks.pos += 1
    if toks.pos == start:
        raise ValueError(f"expected an integer exponent at position {start}")
    return int(toks.text[start : toks.pos])


def _parse_atom(toks: _Tokens) -> Expr:
    c = toks.peek()
    if c == "(":
        toks.take("(")
        inner = _parse_sum(toks)
        toks.peek()
        toks.take(")")
        return inner
    if c.isdigit() or c == ".":
        start = toks.pos
        seen_e = False
        while toks.pos < len(toks.text):
            ch = toks.text[toks.pos]
            if ch.isdigit() or ch == ".":
                toks.pos += 1
            elif ch in "eE" and not seen_e:
                nxt = toks.text[toks.pos + 1 : toks.pos + 2]
                if nxt.isdigit() or nxt in "+-":
                    seen_e = True
                    toks.pos += 2
                else:
                    break
            else:
                break
        return Const(float(toks.text[start : toks.pos]))
    if c.isalpha() or c == "_":
        start = toks.pos
        while toks.pos < len(toks.text) and (
            toks.text[toks.pos].isalnum() or toks.text[toks.pos] == "_"
        ):
            toks.pos += 1
        name = toks.text[start : toks.pos]
        if toks.peek() == "(":
            toks.take("(")
            first = _parse_sum(toks)
            if name in ("sin", "cos", "exp"):
                toks.peek()
                toks.take(")")
                return {"sin": sin, "cos": cos, "exp": exp}[name](first)
            if name == "cut":
                args = [first]
                for _ in range(2):
                    toks.peek()
                    toks.take(",")
                    args.append(_parse_sum(toks))
                toks.peek()
                toks.take(")")
                lo, hi = args[1], args[2]
                if not isinstance(lo, Const) or not isinstance(hi, Const):
                    raise ValueError("cut thresholds must be constants")
                return cut(args[0], lo.value, hi.value)
            raise ValueError(f"unknown function {name!r}")
        if name == "pi":
            return Const(math.pi)
        return Var(name)
    raise ValueError(f"unexpected character {c!r} at position {toks.pos}")
