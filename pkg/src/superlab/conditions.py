"""The structural conditions on the sixteen constants, and kernel computations.

Conditions i–xxiv are polynomial residuals (zero means satisfied); xxv is a
disjunction of two determinants being nonzero.  The polynomials are written
against any object exposing the sixteen attribute names, so they evaluate
equally on exact scalars and on integer numpy arrays (see ``lemma_scan``).
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .algebra import GrassmannElement, SuperFunction
from .derivations import StructureConstants, apply, check_bracket_relations
from .linalg import rank, sparse_nullspace
from .scalars import format_scalar

__all__ = [
    "CONDITION_IDS",
    "ConditionReport",
    "KernelBasis",
    "NotARepresentation",
    "condition_residuals",
    "definiteness_determinants",
    "equivalence_check",
    "evaluate_conditions",
    "even_kernel",
    "invariant_sheaf",
]

CONDITION_IDS = (
    "i", "ii", "iii", "iv", "v", "vi", "vii", "viii",
    "ix", "x", "xi", "xii", "xiii", "xiv", "xv", "xvi",
    "xvii", "xviii", "xix", "xx", "xxi", "xxii", "xxiii", "xxiv",
)


def _c_side(k) -> dict[str, object]:
    """Conditions involving only the C-constants ([C,C]=0)."""
    return {
        "i": 2 * k.c_Cz * k.c_Dw - 2 * k.c_Cz * k.c_Dz + k.c_Cz * k.cw_C + k.c_Dz * k.cw_D,
        "ii": k.c_Cz * k.c1_C + k.c_Dz * k.c1_D,
        "iii": 2 * k.c_Cw * k.c_Dw - 2 * k.c_Cw * k.c_Dz + k.c_Cw * k.cw_C + k.c_Dw * k.cw_D,
        "iv": k.c_Cw * k.c1_C + k.c_Dw * k.c1_D,
        "v": k.cw_C * k.c1_C,
        "vi": k.cw_C * k.c1_D,
        "vii": 2 * k.c_Cz * k.c1_D - 2 * k.c_Cw * k.c1_D - k.cw_D * k.c1_D,
        "viii": 2 * k.c_Dz * k.c1_D - 2 * k.c_Dw * k.c1_D + k.cw_D * k.c1_C,
    }


def _d_side(k) -> dict[str, object]:
    """Conditions involving only the D-constants ([D,D]=0)."""
    return {
        "ix": 2 * k.d_Dz * k.d_Cw - 2 * k.d_Dz * k.d_Cz + k.d_Cz * k.dw_C + k.d_Dz * k.dw_D,
        "x": k.d_Cz * k.d1_C + k.d_Dz * k.d1_D,
        "xi": 2 * k.d_Dw * k.d_Cw - 2 * k.d_Dw * k.d_Cz + k.d_Cw * k.dw_C + k.d_Dw * k.dw_D,
        "xii": k.d_Cw * k.d1_C + k.d_Dw * k.d1_D,
        "xiii": 2 * k.d_Cw * k.d1_C - 2 * k.d_Cz * k.d1_C - k.dw_C * k.d1_D,
        "xiv": 2 * k.d_Dw * k.d1_C - 2 * k.d_Dz * k.d1_C + k.dw_C * k.d1_C,
        "xv": k.dw_D * k.d1_C,
        "xvi": k.dw_D * k.d1_D,
    }


def _mixed(k, one=1) -> dict[str, object]:
    """Conditions from [C,D]=A+B; ``one`` is the inhomogeneous right side."""
    d = (k.d_Cz, k.d_Dz, k.d_Cw, k.d_Dw, k.d1_C, k.d1_D, k.dw_C, k.dw_D)
    rows = (
        (k.cw_C, k.cw_D + 2 * k.c_Cw - 4 * k.c_Cz, 0, 2 * k.c_Cz, 0, 0, k.c_Cz, k.c_Dz),
        (0, -2 * k.c_Cw, k.cw_C, k.cw_D - 2 * k.c_Cz + 4 * k.c_Cw, 0, 0, k.c_Cw, k.c_Dw),
        (k.c1_C, k.c1_D, 0, 0, k.c_Cz, k.c_Dz, 0, 0),
        (0, 0, k.c1_C, k.c1_D, k.c_Cw, k.c_Dw, 0, 0),
    )

    def dot(row, vec):
        total = 0
        for a, b in zip(row, vec):
            if not (isinstance(a, int) and a == 0):
                total = total + a * b
        return total

    out = {
        "xvii": dot(rows[0], d),
        "xviii": dot(rows[1], d),
        "xix": dot(rows[2], d) - one,
        "xx": dot(rows[3], d) - one,
    }
    dv = (k.d1_C, k.d1_D, k.dw_C, k.dw_D)
    cv = (k.c1_C, k.c1_D, k.cw_C, k.cw_D)
    out["xxi"] = dot((2 * k.c_Cw - 2 * k.c_Cz, -k.cw_C, -k.c1_D, 0), dv)
    out["xxii"] = dot((2 * k.c_Dw - 2 * k.c_Dz + k.cw_C, 0, k.c1_C, 0), dv)
    out["xxiii"] = dot((0, 2 * k.d_Cz - 2 * k.d_Cw - k.dw_D, 0, -k.d1_D), cv)
    out["xxiv"] = dot((k.dw_D, 2 * k.d_Dz - 2 * k.d_Dw, 0, k.d1_C), cv)
    return out


def condition_residuals(k, one=1) -> dict[str, object]:
    """Residuals of conditions i–xxiv, keyed by roman numeral."""
    res = {}
    res.update(_c_side(k))
    res.update(_d_side(k))
    res.update(_mixed(k, one))
    return {cid: res[cid] for cid in CONDITION_IDS}


def definiteness_determinants(k) -> tuple[object, object]:
    """The two determinants whose non-vanishing (either one) is xxv."""
    a = k.c_Dw - k.c_Dz + k.cw_C
    b = k.c_Cw - k.c_Cz + k.cw_D
    c = k.d_Dw - k.d_Dz + k.dw_C
    d = k.d_Cw - k.d_Cz + k.dw_D
    det1 = a * d - b * c
    det2 = k.c1_C * k.d1_D - k.c1_D * k.d1_C
    return det1, det2


@dataclass(frozen=True)
class ConditionReport:
    residuals: dict[str, object]
    det1: object
    det2: object

    @property
    def is_representation(self) -> bool:
        return all(r == 0 for r in self.residuals.values())

    @property
    def is_definite(self) -> bool:
        return self.det1 != 0 or self.det2 != 0

    @property
    def passes_all(self) -> bool:
        return self.is_representation and self.is_definite

    def failing(self) -> list[str]:
        out = [cid for cid, r in self.residuals.items() if r != 0]
        if not self.is_definite:
            out.append("xxv")
        return out

    def to_json(self) -> dict:
        return {
            "conditions": {cid: format_scalar(self.residuals[cid]) for cid in CONDITION_IDS},
            "xxv": {"det1": format_scalar(self.det1), "det2": format_scalar(self.det2)},
            "is_representation": self.is_representation,
            "is_definite": self.is_definite,
        }


def evaluate_conditions(k: StructureConstants) -> ConditionReport:
    det1, det2 = definiteness_determinants(k)
    return ConditionReport(condition_residuals(k), det1, det2)


def equivalence_check(k: StructureConstants) -> bool:
    """True when the polynomial verdict agrees with the bracket verdict."""
    return evaluate_conditions(k).is_representation == check_bracket_relations(k).passed


# ---------------------------------------------------------------- kernels


class NotARepresentation(ValueError):
    """The constants fail one of conditions i–xxiv."""

    def __init__(self, failing: list[str]) -> None:
        super().__init__(f"not a representation; failing conditions: {', '.join(failing)}")
        self.failing = failing


@dataclass(frozen=True)
class KernelBasis:
    window: int
    basis: tuple[SuperFunction, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def spans(self, elements: list[SuperFunction]) -> bool:
        """Whether ``elements`` span exactly the same space as the basis."""
        keys = sorted(
            {(n, m, i) for f in list(self.basis) + list(elements) for (n, m), _ in f.items()
             for i in range(4)}
        )

        def vec(f):
            return [f.coefficient(n, m)[i] for n, m, i in keys]

        own = [vec(f) for f in self.basis]
        other = [vec(f) for f in elements]
        r = rank(own) if own else 0
        return r == (rank(other) if other else 0) == (rank(own + other) if own + other else 0)


def _window_basis(N: int) -> list[tuple[int, int, int]]:
    return [(n, m, mask) for n, m in product(range(-N, N + 1), repeat=2) for mask in range(4)]


def _joint_kernel(
    N: int, ops: list[tuple[str, Callable[[SuperFunction], SuperFunction]]]
) -> KernelBasis:
    basis = _window_basis(N)
    columns = []
    for n, m, mask in basis:
        f = SuperFunction({(n, m): GrassmannElement.basis(mask)})
        col: dict = {}
        for tag, op in ops:
            for (n2, m2), g in op(f).items():
                for i, c in enumerate(g.coeffs):
                    if c != 0:
                        col[(tag, n2, m2, i)] = c
        columns.append(col)
    vectors = []
    for combo in sparse_nullspace(columns):
        terms = [((basis[j][0], basis[j][1]), GrassmannElement.basis(basis[j][2]).scale(c))
                 for j, c in combo.items()]
        f = SuperFunction(terms)
        # normalize so the first stored coefficient is 1
        (_, g0), = list(f.items())[:1]
        lead = next(c for c in g0.coeffs if c != 0)
        vectors.append(f.scale(1 / lead))
    return KernelBasis(N, tuple(vectors))


def even_kernel(N: int) -> KernelBasis:
    """Joint kernel of A and B on the window ``|n|, |m| ≤ N``."""
    if N < 1:
        raise ValueError("window too small to contain the kernel monomials (need N >= 1)")
    return _joint_kernel(N, [("A", lambda f: apply("A", f)), ("B", lambda f: apply("B", f))])


def invariant_sheaf(k: StructureConstants, N: int) -> KernelBasis:
    """Joint kernel of A, B, C, D on the window (codomain unrestricted)."""
    if N < 1:
        raise ValueError("window too small (need N >= 1)")
    report = evaluate_conditions(k)
    if not report.is_representation:
        raise NotARepresentation([c for c in report.failing() if c != "xxv"])
    return _joint_kernel(N, [(t, (lambda f, t=t: apply(t, f, k))) for t in "ABCD"])
