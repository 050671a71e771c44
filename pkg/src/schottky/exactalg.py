"""Exact arithmetic over Q, Q[t] and Q(t).

The rational function field carries the discrete valuation at infinity,
``val(p/q) = deg q - deg p``, whose uniformizer is ``1/t`` and whose residue
field is Q.  Everything here is immutable and exact; no floats.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, Sequence, Union

__all__ = [
    "INFINITY",
    "Infinity",
    "Poly",
    "RatFn",
    "T",
    "PI",
    "val_inf",
    "residue_inf",
    "substitute",
    "negate_t",
    "evaluate",
    "rf",
    "uniformizer_power",
]

Rational = Union[int, Fraction]


@total_ordering
class Infinity:
    """The valuation of zero.  Absorbs addition, exceeds every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("INFINITY")

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        if isinstance(other, (int, Infinity)):
            return self
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        raise ArithmeticError("cannot negate INFINITY")


INFINITY = Infinity()


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


class Poly:
    """Univariate polynomial over Q in ``t``.

    ``coeffs[i]`` is the coefficient of ``t**i``; the tuple carries no
    trailing zeros, so the zero polynomial is ``()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Poly":
        p = object.__new__(cls)
        p.coeffs = coeffs
        return p

    @classmethod
    def constant(cls, c: Rational) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, deg: int, c: Rational = 1) -> "Poly":
        return cls([0] * deg + [c])

    @property
    def degree(self):
        """Degree, with ``-INFINITY`` modelled as ``None`` for zero."""
        return len(self.coeffs) - 1 if self.coeffs else None

    def deg(self) -> int:
        if not self.coeffs:
            raise ArithmeticError("degree of the zero polynomial")
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.constant(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __repr__(self):
        return f"Poly({render_poly(self)!r})"

    def __neg__(self):
        return Poly._raw(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_poly(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly._raw(())
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        result, base = Poly.constant(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c: Rational) -> "Poly":
        c = _frac(c)
        if c == 0:
            return Poly._raw(())
        return Poly._raw(tuple(x * c for x in self.coeffs))

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if not other.coeffs:
            raise ZeroDivisionError("division by zero")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        inv_lc = 1 / other.coeffs[-1]
        if len(rem) - 1 < db:
            return Poly._raw(()), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv_lc
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return Poly(quo), Poly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self.scale(1 / self.coeffs[-1])

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compose_neg(self) -> "Poly":
        return Poly._raw(tuple(c if i % 2 == 0 else -c for i, c in enumerate(self.coeffs)))


def _as_poly(x):
    if isinstance(x, Poly):
        return x
    if isinstance(x, (int, Fraction)):
        return Poly.constant(x)
    return None


def _primitive_int(coeffs) -> list[int]:
    """Integer primitive part with positive leading coefficient."""
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    return _primitive(ints)


def _primitive(ints: list[int]) -> list[int]:
    g = 0
    for c in ints:
        g = gcd(g, c)
        if g == 1:
            break
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints] if g not in (0, 1) else ints


def _prem(a: list[int], b: list[int]) -> list[int]:
    """Pseudo-remainder of integer polynomials (low to high)."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(a) - 1 >= db and a:
        la = a[-1]
        shift = len(a) - 1 - db
        a = [x * lb for x in a]
        for j, y in enumerate(b):
            a[shift + j] -= la * y
        while a and a[-1] == 0:
            a.pop()
    return a


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; ``gcd(0, 0) = 0``.  Primitive PRS over Z to avoid
    rational coefficient blowup."""
    if not a.coeffs:
        return b.monic()
    if not b.coeffs:
        return a.monic()
    if len(a.coeffs) == 1 or len(b.coeffs) == 1:
        return Poly._raw((Fraction(1),))
    x, y = _primitive_int(a.coeffs), _primitive_int(b.coeffs)
    if len(x) < len(y):
        x, y = y, x
    while y:
        r = _prem(x, y)
        x, y = y, (_primitive(r) if r else r)
        if len(y) == 1:
            return Poly._raw((Fraction(1),))
    return Poly(x).monic()


class RatFn:
    """Element of Q(t) in canonical form: reduced, monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_poly(num) if not isinstance(num, Poly) else num
        if num is None:
            raise TypeError("numerator must be a Poly or rational")
        if den is None:
            self.num, self.den = num, Poly._raw((Fraction(1),))
            return
        den = _as_poly(den) if not isinstance(den, Poly) else den
        if den is None:
            raise TypeError("denominator must be a Poly or rational")
        self.num, self.den = _normalize(num, den)

    @classmethod
    def _raw(cls, num: Poly, den: Poly) -> "RatFn":
        r = object.__new__(cls)
        r.num, r.den = num, den
        return r

    @classmethod
    def coerce(cls, x) -> "RatFn":
        if isinstance(x, RatFn):
            return x
        if isinstance(x, (int, Fraction, Poly)):
            return cls(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFn")

    def is_zero(self) -> bool:
        return not self.num.coeffs

    def __bool__(self):
        return bool(self.num.coeffs)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.lc

    def __eq__(self, other):
        if isinstance(other, RatFn):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)):
            return self == RatFn.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(("RatFn", self.num.coeffs, self.den.coeffs))

    def __repr__(self):
        return f"RatFn({render(self)!r})"

    def __str__(self):
        return render(self)

    def __neg__(self):
        return RatFn._raw(-self.num, self.den)

    def __add__(self, other):
        try:
            other = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFn(self.num + other.num, self.den)
        return RatFn(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other):
        try:
            other = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return RatFn.coerce(other) - self

    def __mul__(self, other):
        try:
            other = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not other.num:
            return RatFn(0)
        # cross-cancel before multiplying keeps the gcds small
        g1 = poly_gcd(self.num, other.den)
        g2 = poly_gcd(other.num, self.den)
        num = self.num.exact_div(g1) * other.num.exact_div(g2)
        den = self.den.exact_div(g2) * other.den.exact_div(g1)
        return RatFn._raw(num.scale(1 / den.lc), den.monic())

    __rmul__ = __mul__

    def inv(self) -> "RatFn":
        if not self.num:
            raise ZeroDivisionError("division by zero")
        return RatFn._raw(self.den.scale(1 / self.num.lc), self.num.monic())

    def __truediv__(self, other):
        try:
            other = RatFn.coerce(other)
        except TypeError:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        return RatFn.coerce(other) * self.inv()

    def __pow__(self, k: int):
        if k < 0:
            return self.inv() ** (-k)
        return RatFn._raw(self.num ** k, self.den ** k)


def _normalize(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den.coeffs:
        raise ZeroDivisionError("division by zero")
    if not num.coeffs:
        return num, Poly._raw((Fraction(1),))
    g = poly_gcd(num, den)
    if g.coeffs != (1,):
        num, den = num.exact_div(g), den.exact_div(g)
    lc = den.coeffs[-1]
    if lc != 1:
        num, den = num.scale(1 / lc), den.scale(1 / lc)
    return num, den


def rf_normalize(num: Poly, den: Poly) -> RatFn:
    return RatFn(num, den)


def rf(x) -> RatFn:
    """Coerce ints, Fractions, Polys, or ``"p/q"`` strings to RatFn."""
    if isinstance(x, str):
        return RatFn(Fraction(x))
    return RatFn.coerce(x)


T = RatFn(Poly((0, 1)))
PI = T.inv()


def uniformizer_power(k: int) -> RatFn:
    """``pi**k = t**(-k)``."""
    if k >= 0:
        return RatFn._raw(Poly.constant(1), Poly.monomial(k))
    return RatFn._raw(Poly.monomial(-k), Poly.constant(1))


def val_inf(x: RatFn):
    """Valuation at infinity, ``deg den - deg num``; INFINITY at zero."""
    x = RatFn.coerce(x)
    if not x.num:
        return INFINITY
    return x.den.deg() - x.num.deg()


def residue_inf(x: RatFn) -> Fraction:
    x = RatFn.coerce(x)
    v = val_inf(x)
    if v is INFINITY or v > 0:
        return Fraction(0)
    if v < 0:
        raise ValueError("not integral at infinity")
    return x.num.lc / x.den.lc


def negate_t(x: RatFn) -> RatFn:
    x = RatFn.coerce(x)
    return RatFn(x.num.compose_neg(), x.den.compose_neg())


def evaluate(x: RatFn, c: Rational) -> Fraction:
    x = RatFn.coerce(x)
    c = _frac(c)
    d = x.den(c)
    if d == 0:
        raise ZeroDivisionError("pole at evaluation point")
    return Fraction(x.num(c)) / d


def substitute(x: RatFn, target):
    """``target == "negate_t"`` composes with t -> -t; a rational evaluates."""
    if target == "negate_t":
        return negate_t(x)
    if isinstance(target, (int, Fraction)):
        return evaluate(x, target)
    raise ValueError(f"unknown substitution target {target!r}")


def _render_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def render_poly(p: Poly) -> str:
    if not p.coeffs:
        return "0"
    parts = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if not c:
            continue
        neg = c < 0
        a = -c if neg else c
        if i == 0:
            body = _render_rational(a)
        else:
            mono = "t" if i == 1 else f"t^{i}"
            body = mono if a == 1 else f"{_render_rational(a)}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def render(x: RatFn) -> str:
    """Canonical text, e.g. ``(t^2 + 1)/(t - 1)``."""
    if x.den.coeffs == (1,):
        return render_poly(x.num)
    return f"({render_poly(x.num)})/({render_poly(x.den)})"


def poly_from_seq(coeffs: Sequence[Rational]) -> Poly:
    return Poly(coeffs)
