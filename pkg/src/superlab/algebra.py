"""Exterior algebras over {C*, D*} (and {C*, D*, ε}) and Laurent superfunctions.

Basis monomials of an exterior algebra are bitmasks: bit ``i`` set means
generator ``i`` is present, and the monomial is written with generators in
increasing index order.  For the rank-2 algebra the order is
``1, C*, D*, C*∧D*``.  Product signs come from counting transpositions.

Coefficients may be any exact scalar supporting ring operations, including
:class:`~superlab.scalars.DualNumber` (used for even derivatives).
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from fractions import Fraction
from functools import lru_cache

from .scalars import format_scalar, parse_scalar, to_scalar

__all__ = [
    "ExtGrassmannElement",
    "GrassmannElement",
    "SuperFunction",
    "grassmann_mul",
    "monomial",
    "parity_split",
    "sf_add",
    "sf_mul",
]


@lru_cache(maxsize=None)
def _sign(a: int, b: int) -> int:
    """Sign of reordering ``e_a ∧ e_b`` into canonical order."""
    swaps = 0
    for i in range(8):
        if a >> i & 1:
            # generators of b with smaller index must pass generator i
            swaps += bin(b & ((1 << i) - 1)).count("1")
    return -1 if swaps % 2 else 1


def _coerce(x):
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return Fraction(x)
    return x


class _Exterior:
    RANK = 0
    __slots__ = ("_c",)

    def __init__(self, *coeffs) -> None:
        size = 1 << self.RANK
        if len(coeffs) == 1 and isinstance(coeffs[0], (list, tuple)):
            coeffs = tuple(coeffs[0])
        if len(coeffs) > size:
            raise ValueError(f"{type(self).__name__} takes at most {size} coefficients")
        padded = tuple(_coerce(c) for c in coeffs) + (Fraction(0),) * (size - len(coeffs))
        object.__setattr__(self, "_c", padded)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def basis(cls, mask: int):
        c = [Fraction(0)] * (1 << cls.RANK)
        c[mask] = Fraction(1)
        return cls(*c)

    @property
    def coeffs(self) -> tuple:
        return self._c

    def __getitem__(self, mask: int):
        return self._c[mask]

    def _wrap(self, other):
        if isinstance(other, type(self)):
            return other
        if isinstance(other, _Exterior):
            return NotImplemented
        return type(self)(other)

    def __add__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return type(self)(*(a + b for a, b in zip(self._c, o._c)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return type(self)(*(a - b for a, b in zip(self._c, o._c)))

    def __rsub__(self, other):
        o = self._wrap(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __neg__(self):
        return type(self)(*(-a for a in self._c))

    def scale(self, s):
        return type(self)(*(s * a for a in self._c))

    def __mul__(self, other):
        if not isinstance(other, _Exterior):
            return self.scale(_coerce(other))
        if type(other) is not type(self):
            return NotImplemented
        size = 1 << self.RANK
        out = [Fraction(0)] * size
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            for j, b in enumerate(other._c):
                if b == 0 or i & j:
                    continue
                term = a * b
                out[i | j] = out[i | j] + (term if _sign(i, j) > 0 else -term)
        return type(self)(*out)

    def __rmul__(self, other):
        return self.scale(_coerce(other))

    def __truediv__(self, other):
        if isinstance(other, _Exterior):
            return self * other.inverse()
        return self.scale(1 / _coerce(other))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        out = type(self)(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    @property
    def body(self):
        return self._c[0]

    def inverse(self):
        """Inverse of an element with invertible body (nilpotent series)."""
        b = self.body
        if b == 0:
            raise ZeroDivisionError("element with zero body is not invertible")
        nil = (self - type(self)(b)).scale(1 / b)
        term = type(self)(1)
        total = type(self)(1)
        for _ in range(self.RANK):
            term = -(term * nil)
            total = total + term
        return total.scale(1 / b)

    def is_zero(self) -> bool:
        return all(a == 0 for a in self._c)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def parity(self) -> int | None:
        """0 for even, 1 for odd, ``None`` for mixed; zero counts as even."""
        par = {bin(i).count("1") % 2 for i, a in enumerate(self._c) if a != 0}
        if len(par) > 1:
            return None
        return par.pop() if par else 0

    def even_part(self):
        return type(self)(
            *(a if bin(i).count("1") % 2 == 0 else Fraction(0) for i, a in enumerate(self._c))
        )

    def odd_part(self):
        return type(self)(
            *(a if bin(i).count("1") % 2 else Fraction(0) for i, a in enumerate(self._c))
        )

    def __eq__(self, other) -> bool:
        if isinstance(other, _Exterior):
            return type(other) is type(self) and self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == type(self)(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._c))

    _NAMES: tuple[str, ...] = ()

    def __repr__(self) -> str:
        parts = []
        for i, a in enumerate(self._c):
            if a == 0:
                continue
            try:
                s = format_scalar(a)
            except TypeError:
                s = repr(a)
            parts.append(s if i == 0 else f"{s}·{self._NAMES[i]}")
        return f"{type(self).__name__}({' + '.join(parts) or '0'})"


class GrassmannElement(_Exterior):
    """Element of Λ{C*, D*} with coefficients ``(e_1, e_C, e_D, e_∧)``."""

    RANK = 2
    __slots__ = ()
    _NAMES = ("1", "C*", "D*", "C*∧D*")


class ExtGrassmannElement(_Exterior):
    """Element of Λ{C*, D*, ε}; ε is bit 2, so ``C*∧D*∧ε`` is mask 7."""

    RANK = 3
    __slots__ = ()
    _NAMES = ("1", "C*", "D*", "C*∧D*", "ε", "C*∧ε", "D*∧ε", "C*∧D*∧ε")

    @classmethod
    def lift(cls, g: GrassmannElement) -> ExtGrassmannElement:
        return cls(*g.coeffs)

    def eps_free(self) -> GrassmannElement:
        return GrassmannElement(*self._c[:4])

    def left_eps_coefficient(self) -> GrassmannElement:
        """``h`` with ``self = ε·h + (ε-free part)``.

        ``e_S∧ε = (−1)^{|S|} ε∧e_S``, so the coefficient picks up the degree
        sign of the ε-free factor.
        """
        out = []
        for s in range(4):
            c = self._c[s | 4]
            out.append(-c if bin(s).count("1") % 2 else c)
        return GrassmannElement(*out)


ONE = GrassmannElement(1)
CSTAR = GrassmannElement.basis(1)
DSTAR = GrassmannElement.basis(2)
WEDGE = GrassmannElement.basis(3)
EPS = ExtGrassmannElement.basis(4)


def grassmann_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    return a * b


# ---------------------------------------------------------------- functions


Exponent = tuple[int, int]


class SuperFunction:
    """Finite sum ``Σ f_{n,m}·g_{n,m}`` with Grassmann coefficients.

    Zero coefficients are never stored, so the empty map is zero and
    equality is structural.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, GrassmannElement] | Iterable = ()) -> None:
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponent, GrassmannElement] = {}
        for key, g in items:
            n, m = key
            key = (int(n), int(m))
            if not isinstance(g, GrassmannElement):
                g = GrassmannElement(g)
            acc[key] = acc[key] + g if key in acc else g
        clean = {k: v for k, v in sorted(acc.items()) if not v.is_zero()}
        object.__setattr__(self, "_terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("SuperFunction is immutable")

    @property
    def terms(self) -> dict[Exponent, GrassmannElement]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coefficient(self, n: int, m: int) -> GrassmannElement:
        return self._terms.get((n, m), GrassmannElement())

    def __add__(self, other):
        if not isinstance(other, SuperFunction):
            if other == 0:
                return self
            return NotImplemented
        return SuperFunction(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self):
        return SuperFunction({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SuperFunction):
            return NotImplemented
        return self + (-other)

    def scale(self, s):
        return SuperFunction({k: v.scale(s) for k, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, SuperFunction):
            out: dict[Exponent, GrassmannElement] = {}
            for (n1, m1), a in self._terms.items():
                for (n2, m2), b in other._terms.items():
                    key = (n1 + n2, m1 + m2)
                    p = a * b
                    out[key] = out[key] + p if key in out else p
            return SuperFunction(out)
        if isinstance(other, GrassmannElement):
            return SuperFunction({k: v * other for k, v in self._terms.items()})
        return self.scale(_coerce(other))

    def __rmul__(self, other):
        if isinstance(other, GrassmannElement):
            return SuperFunction({k: other * v for k, v in self._terms.items()})
        return self.scale(_coerce(other))

    def parity(self) -> int | None:
        par = {g.parity() for g in self._terms.values()}
        if None in par or len(par) > 1:
            return None
        return par.pop() if par else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, SuperFunction):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self) -> int:
        h = self._hash
        if h is None:
            h = hash(tuple(self._terms.items()))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self) -> str:
        if not self._terms:
            return "SuperFunction(0)"
        body = ", ".join(f"f{k}: {v!r}" for k, v in self._terms.items())
        return f"SuperFunction({body})"

    # JSON records: {"n": int, "m": int, "g": [q1, qC, qD, qW]}
    def to_json(self) -> list[dict]:
        return [
            {"n": n, "m": m, "g": [format_scalar(c) for c in g.coeffs]}
            for (n, m), g in self._terms.items()
        ]

    @classmethod
    def from_json(cls, records: list[dict], strict: bool = True) -> SuperFunction:
        if not isinstance(records, list):
            raise ValueError("superfunction JSON must be an array of records")
        terms = []
        for i, rec in enumerate(records):
            if not isinstance(rec, dict) or set(rec) != {"n", "m", "g"}:
                raise ValueError(f"record {i}: expected keys n, m, g")
            n, m, g = rec["n"], rec["m"], rec["g"]
            if not (isinstance(n, int) and isinstance(m, int)) or isinstance(n, bool):
                raise ValueError(f"record {i}: exponents must be integers")
            if not isinstance(g, list) or len(g) != 4:
                raise ValueError(f"record {i}: g must list four scalars")
            terms.append(((n, m), GrassmannElement(*(parse_scalar(s, strict) for s in g))))
        return cls(terms)


def monomial(n: int, m: int, g: GrassmannElement | object = 1) -> SuperFunction:
    """``f_{n,m}·g`` as a superfunction."""
    if not isinstance(g, GrassmannElement):
        g = GrassmannElement(to_scalar(g) if isinstance(g, str) else g)
    return SuperFunction({(n, m): g})


def sf_mul(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    return f * g


def sf_add(f: SuperFunction, g: SuperFunction) -> SuperFunction:
    return f + g


def parity_split(f: SuperFunction) -> tuple[SuperFunction, SuperFunction]:
    even = SuperFunction({k: v.even_part() for k, v in f.items()})
    odd = SuperFunction({k: v.odd_part() for k, v in f.items()})
    return even, odd
