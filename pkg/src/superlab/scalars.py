"""Exact scalars: rationals, Gaussian rationals and first-order dual numbers.

Rationals are plain :class:`fractions.Fraction` values.  Gaussian rationals
(``a + b i`` with rational ``a``, ``b``) cover the complex ground field, and
:class:`DualNumber` (``a + b δ`` with ``δ² = 0``) is used for exact
forward-mode differentiation of polynomial maps.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = [
    "DualNumber",
    "GaussianRational",
    "Scalar",
    "ScalarFormatError",
    "exact_sqrt",
    "format_scalar",
    "is_real",
    "parse_scalar",
    "to_scalar",
]


class ScalarFormatError(ValueError):
    """Raised when a scalar string is not in canonical form."""


class GaussianRational:
    """An element ``re + im·i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re: object = 0, im: object = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    def __copy__(self):
        return self

    def __deepcopy__(self, memo):
        return self

    def __reduce__(self):
        return (GaussianRational, (self.re, self.im))

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def conjugate(self) -> GaussianRational:
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("GaussianRational division by zero")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self) -> GaussianRational:
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> GaussianRational:
        return self

    def __pow__(self, k: int) -> GaussianRational:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else 1 / self
        out = GaussianRational(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({format_scalar(self)!r})"

    def __str__(self) -> str:
        return format_scalar(self)


class DualNumber:
    """``a + b·δ`` with ``δ² = 0``; coefficients are any exact scalars."""

    __slots__ = ("a", "b")

    def __init__(self, a: object = 0, b: object = 0) -> None:
        self.a = a if isinstance(a, (Fraction, GaussianRational)) else Fraction(a)
        self.b = b if isinstance(b, (Fraction, GaussianRational)) else Fraction(b)

    @staticmethod
    def _coerce(other):
        if isinstance(other, DualNumber):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return DualNumber(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return DualNumber(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return DualNumber(self.a - o.a, self.b - o.b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return DualNumber(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.a == 0:
            raise ZeroDivisionError("dual number with zero real part is not invertible")
        return DualNumber(self.a / o.a, (self.b * o.a - self.a * o.b) / (o.a * o.a))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self) -> DualNumber:
        return DualNumber(-self.a, -self.b)

    def __pow__(self, k: int) -> DualNumber:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else 1 / self
        out = DualNumber(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __eq__(self, other) -> bool:
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self) -> int:
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    def __repr__(self) -> str:
        return f"DualNumber({format_scalar(self.a)}, {format_scalar(self.b)})"


Scalar = Union[Fraction, GaussianRational]


def to_scalar(x: object) -> Scalar:
    """Coerce ints, Fractions, Gaussian rationals or canonical strings."""
    if isinstance(x, GaussianRational):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Rational):
        return Fraction(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_scalar(x, strict=False)
    raise TypeError(f"cannot interpret {x!r} as an exact scalar")


def is_real(x: object) -> bool:
    if isinstance(x, GaussianRational):
        return x.im == 0
    return isinstance(x, (int, Fraction))


def _format_fraction(q: Fraction) -> str:
    return str(q)


def format_scalar(x: object) -> str:
    """Canonical text form: ``"-1/2"``, ``"3"``, ``"1/2+3/4i"``, ``"-2i"``."""
    if isinstance(x, GaussianRational):
        if x.im == 0:
            return _format_fraction(x.re)
        im = x.im
        mag = "" if abs(im) == 1 else _format_fraction(abs(im))
        if x.re == 0:
            return f"{'-' if im < 0 else ''}{mag}i"
        sign = "-" if im < 0 else "+"
        return f"{_format_fraction(x.re)}{sign}{mag}i"
    if isinstance(x, (int, Fraction)):
        return _format_fraction(Fraction(x))
    raise TypeError(f"not an exact scalar: {x!r}")


_RATIONAL = r"-?(?:0|[1-9]\d*)(?:/[1-9]\d*)?"
_RATIONAL_RE = re.compile(rf"^{_RATIONAL}$")
_MAG = r"(?:0|[1-9]\d*)(?:/[1-9]\d*)?"
_IMAG_RE = re.compile(rf"^(?P<neg>-)?(?P<im>{_MAG})?i$")
_GAUSS_RE = re.compile(rf"^(?P<re>{_RATIONAL})(?P<sign>[+-])(?P<im>{_MAG})?i$")


def parse_scalar(text: str, strict: bool = True) -> Scalar:
    """Parse a scalar string.

    In strict mode the string must already be canonical, so ``"2/4"``,
    ``"3/1"`` and ``"+1"`` are rejected.
    """
    if not isinstance(text, str):
        raise ScalarFormatError(f"expected a fraction string, got {type(text).__name__}")
    s = text.strip()
    value: Scalar
    if _RATIONAL_RE.match(s):
        value = Fraction(s)
    elif m := _IMAG_RE.match(s):
        mag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        value = GaussianRational(0, -mag if m.group("neg") else mag)
    elif m := _GAUSS_RE.match(s):
        mag = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        value = GaussianRational(Fraction(m.group("re")), -mag if m.group("sign") == "-" else mag)
    else:
        raise ScalarFormatError(f"malformed scalar {text!r}")
    if strict and format_scalar(value) != s:
        raise ScalarFormatError(
            f"scalar {text!r} is not in canonical reduced form "
            f"(expected {format_scalar(value)!r})"
        )
    return value


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def exact_sqrt(x: Scalar) -> Scalar | None:
    """A square root inside the scalar's own field, or ``None``.

    Rationals are looked up in Q (negative values have no root there);
    Gaussian rationals are looked up in Q(i).
    """
    if isinstance(x, GaussianRational):
        if x.im == 0 and x.re < 0:
            r = _rational_sqrt(-x.re)
            return None if r is None else GaussianRational(0, r)
        if x.im == 0:
            r = _rational_sqrt(x.re)
            return None if r is None else GaussianRational(r)
        modulus = _rational_sqrt(x.norm())
        if modulus is None:
            return None
        p = _rational_sqrt((x.re + modulus) / 2)
        if p is None or p == 0:
            return None
        return GaussianRational(p, x.im / (2 * p))
    return _rational_sqrt(Fraction(x))
