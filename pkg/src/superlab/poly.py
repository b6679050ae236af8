"""Bivariate polynomials in the symbolic exponents n, m."""

from __future__ import annotations

from fractions import Fraction

from .scalars import format_scalar

__all__ = ["Poly", "N", "M"]


class Poly:
    __slots__ = ("_t",)

    def __init__(self, terms=None) -> None:
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {(0, 0): terms}
        clean = {}
        for key, c in terms.items():
            c = Fraction(c) if isinstance(c, int) else c
            if c != 0:
                clean[key] = clean.get(key, 0) + c
        self._t = {k: v for k, v in sorted(clean.items()) if v != 0}

    @staticmethod
    def _lift(x) -> Poly:
        return x if isinstance(x, Poly) else Poly(x)

    def __add__(self, other):
        o = self._lift(other)
        out = dict(self._t)
        for k, v in o._t.items():
            out[k] = out.get(k, 0) + v
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -v for k, v in self._t.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        out: dict = {}
        for (i1, j1), a in self._t.items():
            for (i2, j2), b in o._t.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly(1)
        for _ in range(k):
            out = out * self
        return out

    @property
    def terms(self) -> dict:
        return dict(self._t)

    def __call__(self, n, m):
        return sum((c * n ** i * m ** j for (i, j), c in self._t.items()), Fraction(0))

    def __eq__(self, other) -> bool:
        return self._t == self._lift(other)._t

    def __hash__(self) -> int:
        return hash(tuple(self._t.items()))

    def __bool__(self) -> bool:
        return bool(self._t)

    def __repr__(self) -> str:
        return f"Poly({self})"

    def __str__(self) -> str:
        if not self._t:
            return "0"
        parts = []
        for (i, j), c in sorted(self._t.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0])):
            mono = "*".join(
                s for s in (
                    "n" if i == 1 else f"n^{i}" if i else "",
                    "m" if j == 1 else f"m^{j}" if j else "",
                ) if s
            )
            if not mono:
                parts.append(format_scalar(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{format_scalar(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


N = Poly({(1, 0): 1})
M = Poly({(0, 1): 1})
