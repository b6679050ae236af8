"""Superderivations of gl(1|1) on Laurent superfunctions.

The even generators A, B act by weights; the odd generators C, D act by
closed forms parameterized by sixteen structure constants.  Brackets are
checked as operator identities on a generating probe set.
"""

from __future__ import annotations

from dataclasses import dataclass, fields
from fractions import Fraction
from typing import Union

from .algebra import CSTAR, DSTAR, ONE, WEDGE, GrassmannElement, SuperFunction, monomial
from .scalars import Scalar, format_scalar, parse_scalar, to_scalar

__all__ = [
    "BASIS",
    "BER",
    "KK",
    "PRESETS",
    "BasisDerivation",
    "BracketReport",
    "OperatorExpr",
    "StructureConstants",
    "apply",
    "apply_expr",
    "check_bracket_relations",
    "parity_of",
    "supercommutator",
]


@dataclass(frozen=True)
class StructureConstants:
    """The sixteen constants, in the canonical JSON key order."""

    c_Cz: Scalar = Fraction(0)
    c_Cw: Scalar = Fraction(0)
    c_Dz: Scalar = Fraction(0)
    c_Dw: Scalar = Fraction(0)
    d_Cz: Scalar = Fraction(0)
    d_Cw: Scalar = Fraction(0)
    d_Dz: Scalar = Fraction(0)
    d_Dw: Scalar = Fraction(0)
    c1_C: Scalar = Fraction(0)
    c1_D: Scalar = Fraction(0)
    cw_C: Scalar = Fraction(0)
    cw_D: Scalar = Fraction(0)
    d1_C: Scalar = Fraction(0)
    d1_D: Scalar = Fraction(0)
    dw_C: Scalar = Fraction(0)
    dw_D: Scalar = Fraction(0)

    def __post_init__(self) -> None:
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, (str, int)):
                object.__setattr__(self, f.name, to_scalar(v))

    @classmethod
    def keys(cls) -> tuple[str, ...]:
        return tuple(f.name for f in fields(cls))

    @classmethod
    def from_values(cls, values) -> StructureConstants:
        values = list(values)
        if len(values) != 16:
            raise ValueError("expected 16 values")
        return cls(*values)

    def values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    def replace(self, **changes) -> StructureConstants:
        d = dict(zip(self.keys(), self.values()))
        d.update(changes)
        return StructureConstants(**d)

    # matrices in the row layout used throughout the classification
    @property
    def M_C(self):
        return ((self.c_Cz, self.c_Dz), (self.c_Cw, self.c_Dw))

    @property
    def M_D(self):
        return ((self.d_Cz, self.d_Dz), (self.d_Cw, self.d_Dw))

    @property
    def M_1(self):
        return ((self.c1_C, self.c1_D), (self.d1_C, self.d1_D))

    def to_json(self) -> dict[str, str]:
        return {k: format_scalar(v) for k, v in zip(self.keys(), self.values())}

    @classmethod
    def from_json(cls, data, strict: bool = True) -> StructureConstants:
        if not isinstance(data, dict):
            raise ValueError("structure constants must be a JSON object")
        missing = [k for k in cls.keys() if k not in data]
        extra = sorted(set(data) - set(cls.keys()))
        if missing:
            raise ValueError(f"missing keys: {', '.join(missing)}")
        if extra:
            raise ValueError(f"unknown keys: {', '.join(extra)}")
        vals = {}
        for k in cls.keys():
            try:
                vals[k] = parse_scalar(data[k], strict=strict)
            except ValueError as exc:
                raise ValueError(f"key {k!r}: {exc}") from None
        return cls(**vals)

    def is_real(self) -> bool:
        return all(isinstance(v, Fraction) for v in self.values())


KK = StructureConstants(
    c_Dz=Fraction(-1, 2), c_Dw=Fraction(-1, 2),
    d_Cz=Fraction(-1, 2), d_Cw=Fraction(-1, 2),
    c1_C=Fraction(-1), d1_D=Fraction(-1),
)
BER = StructureConstants(c_Dz=Fraction(1), d_Cw=Fraction(1), c1_C=Fraction(1), d1_D=Fraction(1))
PRESETS = {"kk": KK, "ber": BER}


@dataclass(frozen=True)
class BasisDerivation:
    tag: str
    constants: StructureConstants | None = None

    def __post_init__(self) -> None:
        if self.tag not in BASIS:
            raise ValueError(f"unknown generator {self.tag!r}")
        if self.tag in "CD" and self.constants is None:
            raise ValueError(f"generator {self.tag} needs structure constants")

    @property
    def parity(self) -> int:
        return BASIS[self.tag]


BASIS = {"A": 0, "B": 0, "C": 1, "D": 1}

Derivation = Union[BasisDerivation, str]


def parity_of(X: Derivation) -> int:
    return BASIS[X.tag if isinstance(X, BasisDerivation) else X]


def _resolve(X: Derivation, k: StructureConstants | None) -> tuple[str, StructureConstants | None]:
    if isinstance(X, BasisDerivation):
        return X.tag, X.constants
    if X not in BASIS:
        raise ValueError(f"unknown generator {X!r}")
    if X in "CD" and k is None:
        raise ValueError(f"generator {X} needs structure constants")
    return X, k


def _term_odd(tag: str, k: StructureConstants, n: int, m: int, g: GrassmannElement):
    """Image of ``f_{n,m}·g`` under C or D as (exponent, Grassmann) pairs."""
    q1, qC, qD, qW = g.coeffs
    out = []
    if tag == "C":
        sC, sD = n * k.c_Cz + m * k.c_Cw, n * k.c_Dz + m * k.c_Dw
        # (C.f)·g with C.f = sC f_{n+2,m-2}C* + sD f_{n,m}D*
        out.append(((n + 2, m - 2), CSTAR.scale(sC) * g))
        out.append(((n, m), DSTAR.scale(sD) * g))
        # f·(C.g): C.C* = c1C + cwC W, C.D* = f_{2,-2}(c1D + cwD W),
        # C.W = c1C D* - f_{2,-2} c1D C*
        out.append(((n, m), GrassmannElement(qC * k.c1_C, 0, qW * k.c1_C, qC * k.cw_C)))
        out.append(((n + 2, m - 2), GrassmannElement(qD * k.c1_D, -qW * k.c1_D, 0, qD * k.cw_D)))
    else:
        sC, sD = n * k.d_Cz + m * k.d_Cw, n * k.d_Dz + m * k.d_Dw
        out.append(((n, m), CSTAR.scale(sC) * g))
        out.append(((n - 2, m + 2), DSTAR.scale(sD) * g))
        # D.C* = f_{-2,2}(d1C + dwC W), D.D* = d1D + dwD W,
        # D.W = f_{-2,2} d1C D* - d1D C*
        out.append(((n - 2, m + 2), GrassmannElement(qC * k.d1_C, 0, qW * k.d1_C, qC * k.dw_C)))
        out.append(((n, m), GrassmannElement(qD * k.d1_D, -qW * k.d1_D, 0, qD * k.dw_D)))
    return out


def apply(X: Derivation, f: SuperFunction, k: StructureConstants | None = None) -> SuperFunction:
    """Apply a basis derivation to a superfunction via the closed forms."""
    tag, k = _resolve(X, k)
    out = []
    for (n, m), g in f.items():
        q1, qC, qD, qW = g.coeffs
        if tag == "A":
            # A.f = n f, A.C* = -C*, A.D* = D*, A.W = 0
            out.append(((n, m), GrassmannElement(n * q1, (n - 1) * qC, (n + 1) * qD, n * qW)))
        elif tag == "B":
            out.append(((n, m), GrassmannElement(m * q1, (m + 1) * qC, (m - 1) * qD, m * qW)))
        else:
            out.extend(_term_odd(tag, k, n, m, g))
    return SuperFunction(out)


# ------------------------------------------------------------ operator words


@dataclass(frozen=True)
class OperatorExpr:
    """Linear combination of words (length ≤ 2) in basis derivations.

    A word ``("C", "D")`` means C∘D, i.e. D is applied first.
    """

    terms: tuple[tuple[object, tuple[str, ...]], ...]

    def __post_init__(self) -> None:
        for _, word in self.terms:
            if len(word) > 2:
                raise ValueError("operator words are capped at length 2")
            for t in word:
                if t not in BASIS:
                    raise ValueError(f"unknown generator {t!r}")

    @classmethod
    def gen(cls, tag: str, coeff=1) -> OperatorExpr:
        return cls(((Fraction(coeff), (tag,)),))

    @classmethod
    def bracket(cls, x: str, y: str) -> OperatorExpr:
        sign = -1 if BASIS[x] and BASIS[y] else 1
        return cls(((Fraction(1), (x, y)), (Fraction(-sign), (y, x))))

    def __add__(self, other: OperatorExpr) -> OperatorExpr:
        return OperatorExpr(self.terms + other.terms)

    def __neg__(self) -> OperatorExpr:
        return OperatorExpr(tuple((-c, w) for c, w in self.terms))

    def __sub__(self, other: OperatorExpr) -> OperatorExpr:
        return self + (-other)


def apply_expr(expr: OperatorExpr, f: SuperFunction, k: StructureConstants | None) -> SuperFunction:
    total = SuperFunction()
    for coeff, word in expr.terms:
        g = f
        for tag in reversed(word):
            g = apply(tag, g, k)
        total = total + g.scale(coeff)
    return total


def supercommutator(
    X: Derivation, Y: Derivation, f: SuperFunction, k: StructureConstants | None = None
) -> SuperFunction:
    """``X.(Y.f) − (−1)^{|X||Y|} Y.(X.f)``."""
    if isinstance(X, BasisDerivation) and k is None:
        k = X.constants
    if isinstance(Y, BasisDerivation) and k is None:
        k = Y.constants
    xy = apply(X, apply(Y, f, k), k)
    yx = apply(Y, apply(X, f, k), k)
    if parity_of(X) and parity_of(Y):
        return xy + yx
    return xy - yx


# ---------------------------------------------------------------- brackets


PROBES: tuple[tuple[str, SuperFunction], ...] = (
    ("f_{1,0}", monomial(1, 0)),
    ("f_{0,1}", monomial(0, 1)),
    ("f_{-1,0}", monomial(-1, 0)),
    ("f_{0,-1}", monomial(0, -1)),
    ("C*", monomial(0, 0, CSTAR)),
    ("D*", monomial(0, 0, DSTAR)),
    ("C*^D*", monomial(0, 0, WEDGE)),
)

_ZERO_EXPR = OperatorExpr(())

# (name, lhs bracket, rhs expression)
BRACKET_IDENTITIES: tuple[tuple[str, tuple[str, str], OperatorExpr], ...] = (
    ("[A,B]=0", ("A", "B"), _ZERO_EXPR),
    ("[A,C]=C", ("A", "C"), OperatorExpr.gen("C")),
    ("[B,C]=-C", ("B", "C"), OperatorExpr.gen("C", -1)),
    ("[A,D]=-D", ("A", "D"), OperatorExpr.gen("D", -1)),
    ("[B,D]=D", ("B", "D"), OperatorExpr.gen("D")),
    ("[C,C]=0", ("C", "C"), _ZERO_EXPR),
    ("[D,D]=0", ("D", "D"), _ZERO_EXPR),
    ("[C,D]=A+B", ("C", "D"), OperatorExpr.gen("A") + OperatorExpr.gen("B")),
)


@dataclass(frozen=True)
class BracketCheck:
    name: str
    passed: bool
    failing_probe: str | None = None
    residual: SuperFunction | None = None


@dataclass(frozen=True)
class BracketReport:
    checks: tuple[BracketCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def failures(self) -> list[BracketCheck]:
        return [c for c in self.checks if not c.passed]

    def __getitem__(self, name: str) -> BracketCheck:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def check_bracket_relations(k: StructureConstants) -> BracketReport:
    """Evaluate the gl(1|1) bracket table plus nativeness on the probe set."""
    checks = []
    for name, (x, y), rhs in BRACKET_IDENTITIES:
        expr = OperatorExpr.bracket(x, y) - rhs
        failing = None
        for label, probe in PROBES:
            res = apply_expr(expr, probe, k)
            if res:
                failing = (label, res)
                break
        checks.append(
            BracketCheck(name, failing is None, *(failing if failing else (None, None)))
        )
    # nativeness: even generators act on coordinate functions by their weights
    native = None
    for label, probe, tag, weight in (
        ("f_{1,0}", monomial(1, 0), "A", 1),
        ("f_{1,0}", monomial(1, 0), "B", 0),
        ("f_{0,1}", monomial(0, 1), "A", 0),
        ("f_{0,1}", monomial(0, 1), "B", 1),
    ):
        res = apply(tag, probe, k) - probe.scale(weight)
        if res:
            native = (f"{tag} on {label}", res)
            break
    checks.append(
        BracketCheck("nativeness", native is None, *(native if native else (None, None)))
    )
    return BracketReport(tuple(checks))
