"""Structure constants from the smash-product model.

Enveloping-algebra elements are kept in the normal form ``A^a B^b Γ`` with
``Γ ∈ {1, C, D, W}`` and ``W = γ(C∧D) = ½(CD − DC)``.  Functionals
``Φ_{f_{n,m}ω}`` pair ``g # A^a B^b Γ`` to ``[Γ ↔ ω]·n^a m^b·z^n w^m``.
Generators act on functionals through right multiplication, with a minus
sign for the odd ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import numpy as np

from .derivations import StructureConstants
from .poly import M, N, Poly

__all__ = [
    "FORMS",
    "FunctionalCombination",
    "EnvelopingElement",
    "KostantDerivationError",
    "act_functional",
    "derive_kk",
    "faithfulness_mismatches",
    "kac_module",
    "normal_form",
    "super_tensor",
    "kostant_action_list",
    "read_constants",
    "right_mul",
]

# Γ labels; the functional index ω uses the matching Grassmann mask
GAMMAS = ("1", "C", "D", "W")
FORMS = {"1": 0, "C": 1, "D": 2, "W": 3}  # Γ -> ω mask (1, C*, D*, C*∧D*)
FORM_NAMES = ("1", "C*", "D*", "C*^D*")
HALF = Fraction(1, 2)

Key = tuple[int, int, str]


class EnvelopingElement:
    """Sparse map ``(a, b, Γ) -> coefficient`` over the normal-form basis."""

    __slots__ = ("_t",)

    def __init__(self, terms: dict[Key, object] | None = None) -> None:
        clean: dict[Key, object] = {}
        for (a, b, g), c in (terms or {}).items():
            if a < 0 or b < 0 or g not in GAMMAS:
                raise ValueError(f"invalid basis element {(a, b, g)}")
            if c != 0:
                clean[(a, b, g)] = clean.get((a, b, g), 0) + c
        self._t = {k: v for k, v in sorted(clean.items()) if v != 0}

    @classmethod
    def basis(cls, a: int = 0, b: int = 0, gamma: str = "1") -> EnvelopingElement:
        return cls({(a, b, gamma): Fraction(1)})

    def items(self):
        return self._t.items()

    def __add__(self, other: EnvelopingElement) -> EnvelopingElement:
        out = dict(self._t)
        for k, v in other._t.items():
            out[k] = out.get(k, 0) + v
        return EnvelopingElement(out)

    def __sub__(self, other: EnvelopingElement) -> EnvelopingElement:
        return self + other.scale(-1)

    def scale(self, s) -> EnvelopingElement:
        return EnvelopingElement({k: s * v for k, v in self._t.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, EnvelopingElement) and self._t == other._t

    def __hash__(self) -> int:
        return hash(tuple(self._t.items()))

    def __bool__(self) -> bool:
        return bool(self._t)

    def __repr__(self) -> str:
        if not self._t:
            return "EnvelopingElement(0)"
        return "EnvelopingElement(" + ", ".join(f"{k}: {v}" for k, v in self._t.items()) + ")"


def _gamma_times(gamma: str, X: str) -> list[tuple[int, int, str, Fraction]]:
    """``Γ·X`` in normal form, as (a, b, Γ', coeff) with A^a B^b on the left."""
    one = Fraction(1)
    if X == "A":
        # CA = AC - C, DA = AD + D, W commutes with A
        extra = {"1": 0, "C": -1, "D": 1, "W": 0}[gamma]
        out = [(1, 0, gamma, one)]
        return out + ([(0, 0, gamma, Fraction(extra))] if extra else [])
    if X == "B":
        extra = {"1": 0, "C": 1, "D": -1, "W": 0}[gamma]
        out = [(0, 1, gamma, one)]
        return out + ([(0, 0, gamma, Fraction(extra))] if extra else [])
    if X == "C":
        return {
            "1": [(0, 0, "C", one)],
            "C": [],
            "D": [(1, 0, "1", HALF), (0, 1, "1", HALF), (0, 0, "W", -one)],
            "W": [(1, 0, "C", HALF), (0, 1, "C", HALF)],
        }[gamma]
    if X == "D":
        return {
            "1": [(0, 0, "D", one)],
            "C": [(1, 0, "1", HALF), (0, 1, "1", HALF), (0, 0, "W", one)],
            "D": [],
            "W": [(1, 0, "D", -HALF), (0, 1, "D", -HALF)],
        }[gamma]
    raise ValueError(f"unknown generator {X!r}")


def right_mul(e: EnvelopingElement, X: str) -> EnvelopingElement:
    """``e·X`` re-expressed in normal form."""
    out: dict[Key, object] = {}
    for (a, b, g), c in e.items():
        for da, db, g2, c2 in _gamma_times(g, X):
            key = (a + da, b + db, g2)
            out[key] = out.get(key, 0) + c * c2
    return EnvelopingElement(out)


# ---------------------------------------------------------------- functionals

Shift = tuple[int, int]
SHIFTS: tuple[Shift, ...] = ((0, 0), (2, -2), (-2, 2))
PROBES = ((0, 0), (1, 0), (0, 1))


class KostantDerivationError(RuntimeError):
    pass


def _pair(form: str, shift: Shift, e: EnvelopingElement) -> Poly:
    """``Φ_{f_{n+s,m+t}ω}(g # e)`` with the factor z^{n+s} w^{m+t} stripped."""
    n, m = N + shift[0], M + shift[1]
    total = Poly()
    for (a, b, g), c in e.items():
        if FORMS[g] == FORMS[form]:
            total = total + c * n ** a * m ** b
    return total


@dataclass(frozen=True)
class FunctionalCombination:
    """``Σ coeff(n, m)·Φ_{f_{n+s, m+t}ω}`` keyed by (shift, form)."""

    terms: dict

    def coefficient(self, shift: Shift, form: str) -> Poly:
        return self.terms.get((shift, form), Poly())

    def at(self, n: int, m: int) -> dict:
        """Concrete coefficients for a fixed monomial, zero entries dropped."""
        out = {}
        for key, p in self.terms.items():
            v = p(n, m)
            if v != 0:
                out[key] = v
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, FunctionalCombination) and self.terms == other.terms

    def render(self, label: str = "Phi") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (shift, form), p in self.terms.items():
            f = "f_{n,m}" if shift == (0, 0) else f"f_{{n{shift[0]:+d},m{shift[1]:+d}}}"
            w = "" if form == "1" else FORM_NAMES[FORMS[form]]
            term = f"{label}[{f}{w}]"
            if p == 1:
                parts.append(term)
            elif p == -1:
                parts.append(f"-{term}")
            elif len(p.terms) == 1:
                parts.append(f"{p}*{term}")
            else:
                parts.append(f"({p})*{term}")
        return " + ".join(parts).replace("+ -", "- ")

    def __str__(self) -> str:
        return self.render()


def act_functional(X: str, form: str) -> FunctionalCombination:
    """``X.Φ_{f_{n,m}ω}`` as a combination of basis functionals, symbolic in n, m.

    Evaluates ``u ↦ ±Φ(u·X)`` on the probes ``g # A^a B^b Γ`` and matches the
    table against candidates at the allowed weight shifts: the ``(0, 0)``
    probes fix each coefficient and the ``A``/``B`` probes must then agree.
    """
    if X not in "ABCD" or len(X) != 1:
        raise ValueError(f"unknown generator {X!r}")
    if form not in FORMS:
        raise ValueError(f"unknown form {form!r}")
    sign = -1 if X in "CD" else 1
    table: dict[tuple[int, int, str], Poly] = {}
    for a, b in PROBES:
        for g in GAMMAS:
            u = EnvelopingElement.basis(a, b, g)
            table[(a, b, g)] = _pair(form, (0, 0), right_mul(u, X)) * sign
    # Every probe value carries z^n w^m, so a candidate at shift s matches
    # only when s = (0, 0); nonzero shifts get coefficient zero.
    terms = {}
    for shift in SHIFTS:
        for g in GAMMAS:
            coeff = table[(0, 0, g)] if shift == (0, 0) else Poly()
            if coeff:
                terms[(shift, g)] = coeff
    for (a, b, g), val in table.items():
        pred = terms.get(((0, 0), g), Poly()) * (N ** a) * (M ** b)
        if pred != val:
            raise KostantDerivationError(
                f"no candidate matches {X}.Phi[{form}] on probe {(a, b, g)}"
            )
    return FunctionalCombination(terms)


def kostant_action_list() -> dict[tuple[str, str], FunctionalCombination]:
    return {(X, form): act_functional(X, form) for X in "CD" for form in GAMMAS}


def read_constants(C: dict, D: dict) -> StructureConstants:
    """Read the sixteen constants off symbolic C and D actions on the four forms.

    ``C`` and ``D`` map a form label to the FunctionalCombination of
    ``X.F_{n,m,form}``.  The ansatz is
    ``C.f_{n,m} = (n c_Cz + m c_Cw) f_{n+2,m-2}C* + (n c_Dz + m c_Dw) f_{n,m}D*``
    and its siblings; any term outside the ansatz is an error.
    """

    def read(comb: FunctionalCombination, n: int, m: int, allowed: dict) -> dict:
        out = {}
        for key, v in comb.at(n, m).items():
            if key not in allowed:
                raise KostantDerivationError(f"term {key} outside the ansatz")
            out[allowed[key]] = v
        return out

    up, down, zero = (2, -2), (-2, 2), (0, 0)
    k: dict[str, object] = {}
    for (n, m), z in (((1, 0), "z"), ((0, 1), "w")):
        k.update(read(C["1"], n, m, {(up, "C"): f"c_C{z}", (zero, "D"): f"c_D{z}"}))
        k.update(read(D["1"], n, m, {(zero, "C"): f"d_C{z}", (down, "D"): f"d_D{z}"}))
    k.update(read(C["C"], 0, 0, {(zero, "1"): "c1_C", (zero, "W"): "cw_C"}))
    k.update(read(C["D"], 0, 0, {(up, "1"): "c1_D", (up, "W"): "cw_D"}))
    k.update(read(D["C"], 0, 0, {(down, "1"): "d1_C", (down, "W"): "dw_C"}))
    k.update(read(D["D"], 0, 0, {(zero, "1"): "d1_D", (zero, "W"): "dw_D"}))
    return StructureConstants(**k)


def derive_kk() -> StructureConstants:
    """The constants of the smash-product model, from the functional actions."""
    C = {form: act_functional("C", form) for form in GAMMAS}
    D = {form: act_functional("D", form) for form in GAMMAS}
    return read_constants(C, D)


# ------------------------------------------------------- matrix cross-check


def kac_module(lam, mu) -> dict[str, np.ndarray]:
    """2×2 matrices of A, B, C, D on the Kac module with highest weight (λ, μ).

    Basis ``v0`` (even), ``v1 = D v0`` (odd); ``A + B`` acts as ``λ + μ``.
    """
    lam, mu = Fraction(lam), Fraction(mu)
    z = Fraction(0)
    return {
        "A": np.array([[lam, z], [z, lam - 1]], dtype=object),
        "B": np.array([[mu, z], [z, mu + 1]], dtype=object),
        "C": np.array([[z, lam + mu], [z, z]], dtype=object),
        "D": np.array([[z, z], [Fraction(1), z]], dtype=object),
    }


def super_tensor(rho1: dict, rho2: dict) -> dict[str, np.ndarray]:
    """Super tensor product of two 2-dimensional modules with parity (even, odd)."""
    size1, size2 = rho1["A"].shape[0], rho2["A"].shape[0]
    one1 = np.identity(size1, dtype=object) * Fraction(1)
    one2 = np.identity(size2, dtype=object) * Fraction(1)
    parity = np.diag([Fraction((-1) ** (i % 2)) for i in range(size1)]).astype(object)
    out = {}
    for X in "ABCD":
        left = one1 if X in "AB" else parity
        out[X] = np.kron(rho1[X], one2) + np.kron(left, rho2[X])
    return out


def _evaluate(e: EnvelopingElement, rho: dict) -> np.ndarray:
    size = rho["A"].shape[0]
    gammas = {
        "1": np.identity(size, dtype=object) * Fraction(1),
        "C": rho["C"],
        "D": rho["D"],
        "W": (rho["C"].dot(rho["D"]) - rho["D"].dot(rho["C"])) * HALF,
    }
    total = np.zeros((size, size), dtype=object) + Fraction(0)
    for (a, b, g), c in e.items():
        term = gammas[g]
        for _ in range(b):
            term = rho["B"].dot(term)
        for _ in range(a):
            term = rho["A"].dot(term)
        total = total + term * c
    return total


def normal_form(word: str) -> EnvelopingElement:
    e = EnvelopingElement.basis()
    for X in word:
        e = right_mul(e, X)
    return e


DEFAULT_REALIZATIONS = (
    ("K(2,-1/2)", lambda: kac_module(2, Fraction(-1, 2))),
    ("K(1/3,5)", lambda: kac_module(Fraction(1, 3), 5)),
    ("K(1,2)xK(-3,1/2)", lambda: super_tensor(kac_module(1, 2), kac_module(-3, Fraction(1, 2)))),
)


def faithfulness_mismatches(max_len: int = 3, realizations=DEFAULT_REALIZATIONS) -> list[tuple]:
    """Words of length ≤ max_len whose normal form disagrees with a matrix realization."""
    bad = []
    for name, build in realizations:
        rho = build()
        for length in range(max_len + 1):
            for word in product("ABCD", repeat=length):
                direct = np.identity(rho["A"].shape[0], dtype=object) * Fraction(1)
                for X in word:
                    direct = direct.dot(rho[X])
                if not (direct == _evaluate(normal_form("".join(word)), rho)).all():
                    bad.append((name, "".join(word)))
    return bad
