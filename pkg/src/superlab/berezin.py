"""Structure constants from the Berezin model.

Group elements are 2×2 supermatrices over Λ{C*, D*} (optionally extended by
an odd unit ε, or with dual-number coefficients for even directions).  Every
element factors as ``diag(α, β)·X(N)`` with ``N`` odd off-diagonal and
``X(N) = I + N + k·N²``; ``k = ½`` (chart "series") is the true exponential
and ``k = 1`` (chart "unit") gives diagonal factors ``1 ± R̃·C*∧D*``.  The
continued basis functions are

    F_{n,m,1} = α^n β^m,  F_{n,m,C*} = α^n β^m c,
    F_{n,m,D*} = α^n β^m d,  F_{n,m,C*∧D*} = α^n β^m c d,

which on ε-free points are ``e^{na₁+mb₁}(…)`` in multiplicative coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

from .algebra import EPS, ExtGrassmannElement, GrassmannElement, _Exterior
from .derivations import StructureConstants
from .kostant import SHIFTS, FunctionalCombination, KostantDerivationError, read_constants
from .linalg import solve
from .poly import Poly
from .scalars import DualNumber

__all__ = [
    "CONVENTIONS",
    "ContinuedFunction",
    "Decomposition",
    "DecompositionError",
    "EXTRACTIONS",
    "ParityError",
    "SuperMatrix",
    "berezin_action_list",
    "continue_eval",
    "decompose",
    "derive_ber",
    "even_derivative",
    "exp_odd",
    "group_element",
    "odd_derivative",
    "smat_mul",
]

# coefficient of N² in the odd factor
CONVENTIONS = {"series": Fraction(1, 2), "unit": Fraction(1)}
FORMS = ("1", "C", "D", "W")


class ParityError(ValueError):
    pass


class DecompositionError(ValueError):
    pass


def _ext(x) -> ExtGrassmannElement:
    if isinstance(x, ExtGrassmannElement):
        return x
    if isinstance(x, GrassmannElement):
        return ExtGrassmannElement.lift(x)
    if isinstance(x, _Exterior):
        raise TypeError(f"unsupported entry type {type(x).__name__}")
    return ExtGrassmannElement(x)


@dataclass(frozen=True)
class SuperMatrix:
    """``[[a, b], [c, d]]`` with even diagonal and odd off-diagonal entries."""

    a: ExtGrassmannElement
    b: ExtGrassmannElement
    c: ExtGrassmannElement
    d: ExtGrassmannElement

    def __post_init__(self) -> None:
        for name in "abcd":
            object.__setattr__(self, name, _ext(getattr(self, name)))
        for name, want in (("a", 0), ("b", 1), ("c", 1), ("d", 0)):
            entry = getattr(self, name)
            if entry and entry.parity() != want:
                raise ParityError(f"entry {name} must be {'odd' if want else 'even'}")

    @classmethod
    def identity(cls) -> SuperMatrix:
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[ExtGrassmannElement, ...]:
        return (self.a, self.b, self.c, self.d)

    def is_eps_free(self) -> bool:
        return all(all(e[s] == 0 for s in range(4, 8)) for e in self.entries())

    def __matmul__(self, other: SuperMatrix) -> SuperMatrix:
        return smat_mul(self, other)


def smat_mul(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    return SuperMatrix(
        x.a * y.a + x.b * y.c,
        x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c,
        x.c * y.b + x.d * y.d,
    )


def _k(convention: str) -> Fraction:
    try:
        return CONVENTIONS[convention]
    except KeyError:
        raise ValueError(f"unknown convention {convention!r}") from None


def exp_odd(N: SuperMatrix, convention: str = "series") -> SuperMatrix:
    """``I + N + k·N²`` for strictly off-diagonal odd ``N``."""
    if N.a or N.d:
        raise ParityError("exp_odd needs a zero diagonal")
    N2 = smat_mul(N, N)
    if any(smat_mul(N2, N).entries()):
        raise AssertionError("N^3 must vanish")
    k = _k(convention)
    return SuperMatrix(1 + N2.a.scale(k), N.b, N.c, 1 + N2.d.scale(k))


@dataclass(frozen=True)
class Decomposition:
    """``g = diag(alpha, beta)·X(N)`` with ``N = [[0, c], [d, 0]]``."""

    alpha: ExtGrassmannElement
    beta: ExtGrassmannElement
    c: ExtGrassmannElement
    d: ExtGrassmannElement
    convention: str = "series"

    @property
    def a1_hat(self):
        return self.alpha.body

    @property
    def b1_hat(self):
        return self.beta.body

    @property
    def a_wedge(self):
        return self.alpha[3] / self.alpha.body

    @property
    def b_wedge(self):
        return self.beta[3] / self.beta.body

    @property
    def odd(self) -> tuple:
        """``(c_C*, c_D*, d_C*, d_D*)``."""
        return (self.c[1], self.c[2], self.d[1], self.d[2])

    def even_factor(self) -> SuperMatrix:
        return SuperMatrix(self.alpha, 0, 0, self.beta)

    def odd_factor(self) -> SuperMatrix:
        return exp_odd(SuperMatrix(0, self.c, self.d, 0), self.convention)

    def recompose(self) -> SuperMatrix:
        return smat_mul(self.even_factor(), self.odd_factor())


def decompose(g: SuperMatrix, convention: str = "series") -> Decomposition:
    """Solve ``g = diag(α, β)·X(N)`` by fixed-point iteration (nilpotent, so finite)."""
    return _decompose(g, convention)


@lru_cache(maxsize=4096)
def _decompose(g: SuperMatrix, convention: str) -> Decomposition:
    k = _k(convention)
    if g.a.body == 0 or g.d.body == 0:
        raise DecompositionError("diagonal entries need invertible bodies")
    zero = ExtGrassmannElement(0)
    c = d = zero
    # each pass gains one Grassmann degree; rank 3 needs at most 4 passes
    for _ in range(4):
        alpha = g.a * (1 + (c * d).scale(k)).inverse()
        beta = g.d * (1 + (d * c).scale(k)).inverse()
        c = alpha.inverse() * g.b
        d = beta.inverse() * g.c
    out = Decomposition(alpha, beta, c, d, convention)
    if out.recompose() != g:
        raise DecompositionError("decomposition did not reproduce the input")
    return out


def group_element(a1_hat, a_wedge, b1_hat, b_wedge, c_C, c_D, d_C, d_D,
                  convention: str = "series") -> SuperMatrix:
    """``diag(â₁(1+ã_∧ C*∧D*), b̂₁(1+b̃_∧ C*∧D*))·X(N)`` from the eight coordinates."""
    if a1_hat == 0 or b1_hat == 0:
        raise DecompositionError("diagonal bodies must be nonzero")
    E = SuperMatrix(
        ExtGrassmannElement(a1_hat, 0, 0, a1_hat * a_wedge),
        0, 0,
        ExtGrassmannElement(b1_hat, 0, 0, b1_hat * b_wedge),
    )
    N = SuperMatrix(0, ExtGrassmannElement(0, c_C, c_D), ExtGrassmannElement(0, d_C, d_D), 0)
    return smat_mul(E, exp_odd(N, convention))


# ---------------------------------------------------------------- functions


@dataclass(frozen=True)
class ContinuedFunction:
    """``F_{n,m,ω}`` with ``ω`` one of ``1, C, D, W`` (W = C*∧D*)."""

    n: int
    m: int
    form: str = "1"

    def __post_init__(self) -> None:
        if self.form not in FORMS:
            raise ValueError(f"unknown form {self.form!r}")


def continue_eval(F: ContinuedFunction, g: SuperMatrix,
                  convention: str = "series") -> ExtGrassmannElement:
    dec = decompose(g, convention)
    weight = dec.alpha ** F.n * dec.beta ** F.m
    factor = {
        "1": ExtGrassmannElement(1),
        "C": dec.c,
        "D": dec.d,
        "W": dec.c * dec.d,
    }[F.form]
    return weight * factor


EXTRACTIONS = ("right", "left")


def odd_derivative(F: ContinuedFunction, direction: str, g: SuperMatrix,
                   convention: str = "series", extraction: str = "right") -> GrassmannElement:
    """ε-coefficient ``h`` of ``F(g·(I + ε·E_dir))``.

    ``extraction="right"`` reads ``F(g') = F(g) + h·ε``, which makes the odd
    generators act as a representation; ``"left"`` reads ``ε·h`` and differs
    by the sign ``(−1)^deg`` on each Grassmann degree of ``h``.
    """
    if direction not in ("C", "D"):
        raise ValueError(f"odd direction must be C or D, got {direction!r}")
    if extraction not in EXTRACTIONS:
        raise ValueError(f"unknown extraction {extraction!r}")
    if not g.is_eps_free():
        raise ValueError("base point must not involve ε")
    step = SuperMatrix(1, EPS, 0, 1) if direction == "C" else SuperMatrix(1, 0, EPS, 1)
    h = continue_eval(F, smat_mul(g, step), convention).left_eps_coefficient()
    if extraction == "left":
        return h
    return GrassmannElement(*(-c if bin(s).count("1") % 2 else c for s, c in enumerate(h.coeffs)))


def _dual_part(x):
    return x.b if isinstance(x, DualNumber) else Fraction(0)


def even_derivative(F: ContinuedFunction, direction: str, g: SuperMatrix,
                    convention: str = "series") -> GrassmannElement:
    """δ-coefficient of ``F(g·(I + δ·E_dir))`` with ``δ² = 0``."""
    if direction not in ("A", "B"):
        raise ValueError(f"even direction must be A or B, got {direction!r}")
    if not g.is_eps_free():
        raise ValueError("base point must not involve ε")
    bump = ExtGrassmannElement(DualNumber(1, 1))
    step = SuperMatrix(bump, 0, 0, 1) if direction == "A" else SuperMatrix(1, 0, 0, bump)
    value = continue_eval(F, smat_mul(g, step), convention)
    return GrassmannElement(*(_dual_part(x) for x in value.coeffs[:4]))


# ---------------------------------------------------------------- extraction

# generic coordinates: bodies, wedges and odd parts all nonzero and unrelated
SAMPLE_COORDINATES = (
    (Fraction(2), Fraction(1, 3), Fraction(-3), Fraction(2, 5), 1, Fraction(-2), Fraction(3), Fraction(1, 2)),
    (Fraction(-1, 2), Fraction(-1), Fraction(5, 3), Fraction(3), Fraction(2), 1, Fraction(-1, 3), Fraction(4)),
    (Fraction(3), Fraction(2), Fraction(1, 4), Fraction(-1, 2), Fraction(-1), Fraction(3, 2), 1, Fraction(-2)),
    (Fraction(-4), Fraction(0), Fraction(-2, 3), Fraction(1), Fraction(1, 3), Fraction(1), Fraction(2), Fraction(5)),
    (Fraction(5, 2), Fraction(-3), Fraction(7), Fraction(0), Fraction(4), Fraction(-1), Fraction(-5), Fraction(1, 2)),
)


def sample_points(convention: str = "series") -> list[SuperMatrix]:
    return [group_element(*coords, convention=convention) for coords in SAMPLE_COORDINATES]


@lru_cache(maxsize=8192)
def _candidate_value(n: int, m: int, form: str, g: SuperMatrix, convention: str) -> GrassmannElement:
    return continue_eval(ContinuedFunction(n, m, form), g, convention).eps_free()


def _fit_action(X: str, n: int, m: int, form: str, points, convention: str,
                extraction: str) -> dict:
    """Coefficients of ``X.F_{n,m,form}`` over the weight-allowed candidates."""
    candidates = [(s, w) for s in SHIFTS for w in FORMS]
    rows, rhs = [], []
    for g in points:
        h = odd_derivative(ContinuedFunction(n, m, form), X, g, convention, extraction)
        values = [_candidate_value(n + s[0], m + s[1], w, g, convention) for s, w in candidates]
        for i in range(4):
            rows.append([v[i] for v in values])
            rhs.append(h[i])
    sol = solve(rows, rhs)
    if sol is None:
        raise KostantDerivationError(f"{X}.F[{n},{m},{form}] has no match in the candidate space")
    particular, kernel = sol
    if kernel:
        raise KostantDerivationError("sample points do not separate the candidates")
    return {key: v for key, v in zip(candidates, particular) if v != 0}


# exponents used to fit (at most affine) coefficients and to verify the fit
_FIT_AT = ((0, 0), (1, 0), (0, 1))
_CHECK_AT = ((2, -3), (-1, 4), (3, 3))


def berezin_action_list(
    convention: str = "unit", extraction: str = "right"
) -> dict[tuple[str, str], FunctionalCombination]:
    """``X.F_{n,m,ω}`` for X ∈ {C, D}, symbolic in n, m.

    Coefficients are fitted as affine polynomials from three exponents and
    then checked at three more.
    """
    points = sample_points(convention)
    out = {}
    for X, form in product("CD", FORMS):
        fits = {nm: _fit_action(X, *nm, form, points, convention, extraction) for nm in _FIT_AT}
        keys = set().union(*fits.values())
        terms = {}
        for key in sorted(keys):
            c0 = fits[(0, 0)].get(key, 0)
            cn = fits[(1, 0)].get(key, 0) - c0
            cm = fits[(0, 1)].get(key, 0) - c0
            p = Poly({(0, 0): c0, (1, 0): cn, (0, 1): cm})
            if p:
                terms[key] = p
        comb = FunctionalCombination(terms)
        for nm in _CHECK_AT:
            if _fit_action(X, *nm, form, points, convention, extraction) != comb.at(*nm):
                raise KostantDerivationError(f"{X}.F[n,m,{form}] is not affine in (n, m)")
        out[(X, form)] = comb
    return out


def derive_ber(convention: str = "unit", extraction: str = "right") -> StructureConstants:
    """The constants of the Berezin model, read off the fitted action list.

    The default is the "unit" chart; the "series" chart gives a different
    (still valid) table.
    """
    actions = berezin_action_list(convention, extraction)
    C = {form: actions[("C", form)] for form in FORMS}
    D = {form: actions[("D", form)] for form in FORMS}
    return read_constants(C, D)
