"""Reduced parameterization of the valid structures and its rank checks.

A valid structure factors as outer products

    M_C = (c^z; c^w)·(μ_C, ν_C),  M_D = (d^z; d^w)·(μ_D, ν_D),
    M_1 = (ν_C c_1, −μ_C c_1; ν_D d_1, −μ_D d_1),

with the wedge constants fixed by the function constants.  Each block has a
one-parameter scaling gauge, fixed here by making the first nonzero entry of
(μ, ν) equal to 1.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, fields
from fractions import Fraction
from math import lcm
from types import SimpleNamespace

import numpy as np

from .conditions import (
    _c_side,
    _d_side,
    _mixed,
    definiteness_determinants,
    evaluate_conditions,
)
from .derivations import StructureConstants
from .linalg import jacobian, nullspace, rank
from .scalars import Scalar, format_scalar, parse_scalar, to_scalar

__all__ = [
    "ConstraintViolation",
    "CounterexampleReport",
    "JacobianRankReport",
    "NotFactorable",
    "ReducedParams",
    "expand",
    "gauge_directions",
    "lemma_scan",
    "reduce",
    "sample_valid",
    "variety_jacobian_rank",
]

_JSON_KEYS = ("mu_C", "nu_C", "mu_D", "nu_D", "cz", "cw", "dz", "dw", "c1", "d1")


class ConstraintViolation(ValueError):
    def __init__(self, constraint: str, detail: str) -> None:
        super().__init__(f"constraint {constraint} violated: {detail}")
        self.constraint = constraint


class NotFactorable(ValueError):
    """The constants are not in the image of ``expand``.

    ``lemma`` is one of ``h15`` (a block matrix has rank 2), ``h1`` (a
    vanishing wedge constant is nonzero), ``h2`` (a wedge constant does not
    match the function constants), ``factor`` (M_1 is not aligned with the
    block directions), ``h5`` or ``h6`` (a constraint on the reduced
    parameters fails).
    """

    def __init__(self, lemma: str, detail: str) -> None:
        super().__init__(f"not factorable ({lemma}): {detail}")
        self.lemma = lemma


@dataclass(frozen=True)
class ReducedParams:
    mu_C: Scalar
    nu_C: Scalar
    mu_D: Scalar
    nu_D: Scalar
    cz: Scalar
    cw: Scalar
    dz: Scalar
    dw: Scalar
    c1: Scalar
    d1: Scalar

    def __post_init__(self) -> None:
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, (str, int)):
                object.__setattr__(self, f.name, to_scalar(v))

    @classmethod
    def checked(cls, *args, **kwargs) -> ReducedParams:
        p = cls(*args, **kwargs)
        p.validate()
        return p

    def values(self) -> tuple:
        return tuple(getattr(self, f.name) for f in fields(self))

    @property
    def block_det(self):
        return self.nu_C * self.mu_D - self.mu_C * self.nu_D

    def constraint_residuals(self) -> tuple:
        """The two normalization residuals (zero when satisfied)."""
        d = self.block_det
        return (
            d * (self.dz * self.c1 - self.cz * self.d1) - 1,
            d * (self.dw * self.c1 - self.cw * self.d1) - 1,
        )

    def nondegenerate(self) -> bool:
        return (self.cz - self.cw) * (self.dz - self.dw) != 0 or self.c1 * self.d1 != 0

    def validate(self) -> None:
        r1, r2 = self.constraint_residuals()
        if r1 != 0 or r2 != 0:
            raise ConstraintViolation("h5", f"residuals {format_scalar(r1)}, {format_scalar(r2)}")
        if not self.nondegenerate():
            raise ConstraintViolation("h6", "(cz-cw)(dz-dw) = 0 and c1*d1 = 0")

    def gauge_normalized(self) -> ReducedParams:
        t = self.mu_C if self.mu_C != 0 else self.nu_C
        s = self.mu_D if self.mu_D != 0 else self.nu_D
        if t == 0 or s == 0:
            raise ConstraintViolation("h5", "a block direction (mu, nu) is zero")
        return ReducedParams(
            self.mu_C / t, self.nu_C / t, self.mu_D / s, self.nu_D / s,
            self.cz * t, self.cw * t, self.dz * s, self.dw * s, self.c1 * t, self.d1 * s,
        )

    def to_json(self) -> dict[str, str]:
        return {k: format_scalar(v) for k, v in zip(_JSON_KEYS, self.values())}

    @classmethod
    def from_json(cls, data, strict: bool = True) -> ReducedParams:
        if not isinstance(data, dict):
            raise ValueError("reduced parameters must be a JSON object")
        if set(data) != set(_JSON_KEYS):
            raise ValueError(f"expected exactly the keys {', '.join(_JSON_KEYS)}")
        return cls(*(parse_scalar(data[k], strict=strict) for k in _JSON_KEYS))


def _expand_values(v) -> list:
    """expand() on a raw 10-list; works for dual numbers as well."""
    mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw, c1, d1 = v
    c_Cz, c_Dz, c_Cw, c_Dw = mu_C * cz, nu_C * cz, mu_C * cw, nu_C * cw
    d_Cz, d_Dz, d_Cw, d_Dw = mu_D * dz, nu_D * dz, mu_D * dw, nu_D * dw
    return [
        c_Cz, c_Cw, c_Dz, c_Dw, d_Cz, d_Cw, d_Dz, d_Dw,
        nu_C * c1, -mu_C * c1, 0 * c1, 2 * (c_Cz - c_Cw),
        nu_D * d1, -mu_D * d1, 2 * (d_Dz - d_Dw), 0 * d1,
    ]


def expand(p: ReducedParams, check: bool = True) -> StructureConstants:
    if check:
        p.validate()
    return StructureConstants.from_values(_expand_values(list(p.values())))


def _block_direction(rows, c1_row):
    """Direction (μ, ν) of a rank ≤ 1 block, or from the M_1 row if it is 0."""
    for row in rows:
        if row[0] != 0 or row[1] != 0:
            return row
    if c1_row[0] != 0 or c1_row[1] != 0:
        return (-c1_row[1], c1_row[0])
    return None


def reduce(k: StructureConstants) -> ReducedParams:
    """Gauge-fixed reduced parameters with ``expand(reduce(k)) == k``."""
    (cCz, cDz), (cCw, cDw) = k.M_C
    (dCz, dDz), (dCw, dDw) = k.M_D
    if cCz * cDw - cDz * cCw != 0:
        raise NotFactorable("h15", "det M_C is nonzero")
    if dCz * dDw - dDz * dCw != 0:
        raise NotFactorable("h15", "det M_D is nonzero")
    if k.cw_C != 0 or k.dw_D != 0:
        raise NotFactorable("h1", "cw_C and dw_D must vanish")
    if k.cw_D != 2 * (cCz - cCw) or k.dw_C != 2 * (dDz - dDw):
        raise NotFactorable("h2", "cw_D != 2(c_Cz - c_Cw) or dw_C != 2(d_Dz - d_Dw)")

    dir_C = _block_direction(((cCz, cDz), (cCw, cDw)), (k.c1_C, k.c1_D))
    dir_D = _block_direction(((dCz, dDz), (dCw, dDw)), (k.d1_C, k.d1_D))
    if dir_C is None or dir_D is None:
        raise NotFactorable("h5", "a block and its M_1 row both vanish")

    def lead(vec):
        return vec[0] if vec[0] != 0 else vec[1]

    mu_C, nu_C = (x / lead(dir_C) for x in dir_C)
    mu_D, nu_D = (x / lead(dir_D) for x in dir_D)

    def coeff(pair, mu, nu):
        return pair[0] / mu if mu != 0 else pair[1] / nu

    cz, cw = coeff((cCz, cDz), mu_C, nu_C), coeff((cCw, cDw), mu_C, nu_C)
    dz, dw = coeff((dCz, dDz), mu_D, nu_D), coeff((dCw, dDw), mu_D, nu_D)
    c1 = k.c1_C / nu_C if nu_C != 0 else -k.c1_D / mu_C
    d1 = k.d1_C / nu_D if nu_D != 0 else -k.d1_D / mu_D
    p = ReducedParams(mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw, c1, d1)
    if expand(p, check=False) != k:
        raise NotFactorable("factor", "M_1 rows are not aligned with the block directions")
    try:
        p.validate()
    except ConstraintViolation as exc:
        raise NotFactorable(exc.constraint, str(exc)) from None
    return p


def _random_nonzero(rng: random.Random) -> Fraction:
    return Fraction(rng.choice((-1, 1)) * rng.randint(1, 5), rng.randint(1, 4))


def sample_valid(seed: int, max_tries: int = 1000) -> ReducedParams:
    """Deterministic pseudo-random valid point of the reduced parameterization."""
    rng = random.Random(seed)
    for _ in range(max_tries):
        mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw = (_random_nonzero(rng) for _ in range(8))
        delta = nu_C * mu_D - mu_C * nu_D
        det = cz * dw - dz * cw  # of [[dz, -cz], [dw, -cw]]
        if delta == 0 or det == 0:
            continue
        # dz c1 - cz d1 = 1/delta and dw c1 - cw d1 = 1/delta
        rhs = 1 / delta
        c1 = (-cw * rhs + cz * rhs) / det
        d1 = (dz * rhs - dw * rhs) / det
        p = ReducedParams(mu_C, nu_C, mu_D, nu_D, cz, cw, dz, dw, c1, d1)
        if not p.nondegenerate():
            continue
        p.validate()
        return p.gauge_normalized()
    raise RuntimeError(f"sample_valid exhausted {max_tries} draws for seed {seed}")


# ---------------------------------------------------------------- ranks


@dataclass(frozen=True)
class JacobianRankReport:
    point: tuple
    rows: int
    cols: int
    rank: int
    derived_dimension: int | None = None
    constrained_rank: int | None = None
    note: str = ""

    def to_json(self) -> dict:
        out = {
            "point": [format_scalar(x) for x in self.point],
            "rows": self.rows,
            "cols": self.cols,
            "rank": self.rank,
        }
        if self.derived_dimension is not None:
            out["derived_dimension"] = self.derived_dimension
        if self.constrained_rank is not None:
            out["constrained_rank"] = self.constrained_rank
        if self.note:
            out["note"] = self.note
        return out


def expansion_jacobian(p: ReducedParams) -> list[list]:
    return jacobian(_expand_values, list(p.values()))


def constraint_jacobian(p: ReducedParams) -> list[list]:
    return jacobian(lambda v: ReducedParams(*v).constraint_residuals(), list(p.values()))


def gauge_directions(p: ReducedParams) -> list[list]:
    """Tangent vectors of the two block scalings at ``p``."""
    z = Fraction(0)
    t = [p.mu_C, p.nu_C, z, z, -p.cz, -p.cw, z, z, -p.c1, z]
    s = [z, z, p.mu_D, p.nu_D, z, z, -p.dz, -p.dw, z, -p.d1]
    return [t, s]


def variety_jacobian_rank(p: ReducedParams) -> JacobianRankReport:
    """Rank of d(expand) at ``p``; derived dimension is rank minus 2.

    ``constrained_rank`` is the rank of d(expand) restricted to the tangent
    space of the two normalization constraints, an independent route to the
    same dimension.
    """
    J = expansion_jacobian(p)
    r = rank(J)
    tangent = nullspace(constraint_jacobian(p))
    restricted = [[sum(a * b for a, b in zip(row, t)) for t in tangent] for row in J]
    return JacobianRankReport(
        point=p.values(),
        rows=len(J),
        cols=len(J[0]),
        rank=r,
        derived_dimension=r - 2,
        constrained_rank=rank(restricted),
    )


# ---------------------------------------------------------------- lemma scan

_C_KEYS = ("c_Cz", "c_Cw", "c_Dz", "c_Dw", "c1_C", "c1_D", "cw_C", "cw_D")
_D_KEYS = ("d_Cz", "d_Cw", "d_Dz", "d_Dw", "d1_C", "d1_D", "dw_C", "dw_D")


@dataclass
class CounterexampleReport:
    grid: tuple
    c_candidates: int = 0
    d_candidates: int = 0
    representations: int = 0
    valid: int = 0
    non_definite: int = 0
    counterexamples: list = field(default_factory=list)
    valid_tuples: set = field(default_factory=set)

    def contains(self, k: StructureConstants) -> bool:
        return tuple(k.values()) in self.valid_tuples

    def to_json(self) -> dict:
        return {
            "grid": [format_scalar(g) for g in self.grid],
            "c_side_candidates": self.c_candidates,
            "d_side_candidates": self.d_candidates,
            "representations": self.representations,
            "valid": self.valid,
            "non_definite": self.non_definite,
            "counterexamples": [
                {"constants": k.to_json(), "violated": v} for k, v in self.counterexamples
            ],
        }


def _side_table(values: np.ndarray, keys: tuple[str, ...], conds) -> np.ndarray:
    """All 8-tuples over ``values`` that satisfy the side conditions."""
    g = len(values)
    idx = np.indices((g,) * 8).reshape(8, -1)
    cols = values[idx]
    ns = SimpleNamespace(**dict(zip(keys, cols)))
    ok = np.ones(cols.shape[1], dtype=bool)
    for res in conds(ns).values():
        ok &= res == 0
    return cols[:, ok]


def lemma_violations(k) -> list[str]:
    out = []
    if k.c_Cz * k.c_Dw - k.c_Dz * k.c_Cw != 0 or k.d_Cz * k.d_Dw - k.d_Dz * k.d_Cw != 0:
        out.append("h15")
    if k.cw_C != 0 or k.dw_D != 0:
        out.append("h1")
    if k.cw_D != 2 * (k.c_Cz - k.c_Cw) or k.dw_C != 2 * (k.d_Dz - k.d_Dw):
        out.append("h2")
    return out


def lemma_scan(grid) -> CounterexampleReport:
    """Enumerate all 16-tuples over ``grid`` passing every condition.

    Values are scaled to integers by the common denominator L; quadratic
    residuals scale by L², so the inhomogeneous right side becomes L².  The
    C-only and D-only conditions prune each half independently before the
    mixed conditions are checked on the cross product.
    """
    grid = tuple(sorted({to_scalar(g) for g in grid}))
    if not grid:
        raise ValueError("grid must be nonempty")
    if not all(isinstance(g, Fraction) for g in grid):
        raise ValueError("lemma_scan supports rational grids only")
    L = lcm(*(g.denominator for g in grid))
    ints = np.array([int(g * L) for g in grid], dtype=np.int64)
    one = L * L

    c_tab = _side_table(ints, _C_KEYS, _c_side)
    d_tab = _side_table(ints, _D_KEYS, _d_side)
    report = CounterexampleReport(grid, c_tab.shape[1], d_tab.shape[1])
    d_ns = SimpleNamespace(**dict(zip(_D_KEYS, d_tab)))

    for ci in range(c_tab.shape[1]):
        c_vals = {key: int(c_tab[j, ci]) for j, key in enumerate(_C_KEYS)}
        ns = SimpleNamespace(**c_vals, **vars(d_ns))
        ok = np.ones(d_tab.shape[1], dtype=bool)
        for res in _mixed(ns, one).values():
            ok &= np.asarray(res) == 0
        hits = np.nonzero(ok)[0]
        for di in hits:
            vals = dict(c_vals)
            vals.update({key: int(d_tab[j, di]) for j, key in enumerate(_D_KEYS)})
            k = StructureConstants(**{key: Fraction(v, L) for key, v in vals.items()})
            report.representations += 1
            det1, det2 = definiteness_determinants(k)
            if det1 == 0 and det2 == 0:
                report.non_definite += 1
                continue
            report.valid += 1
            report.valid_tuples.add(tuple(k.values()))
            bad = lemma_violations(k)
            if bad:
                report.counterexamples.append((k, bad))
    return report


def all_conditions_pass(k: StructureConstants) -> bool:
    return evaluate_conditions(k).passes_all
