"""Automorphisms of gl(1|1), their action on structure constants, and
isomorphism search with certificates.

The plus family sends A ↦ uA+(u−1)B, B ↦ vA+(v+1)B, C ↦ xC, D ↦ yD; the
minus family swaps C and D.  In both, ``x·y = u + v``.  The transformed
constants depend on (x, y) only through ``r = x/y`` and ``x·y``, so the
solver works with the unknowns (u, v, r) and recovers (x, y) afterwards.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .classification import JacobianRankReport
from .derivations import StructureConstants
from .linalg import jacobian, nullspace, rank, rref
from .scalars import GaussianRational, exact_sqrt, format_scalar, is_real

__all__ = [
    "AutomorphismParams",
    "Constraint",
    "Infeasible",
    "InvalidAutomorphism",
    "Witness",
    "compose_plus",
    "find_isomorphism",
    "orbit_tangent_rank",
    "random_automorphism",
    "transform",
    "transform_ratio",
]

ESSENTIAL = (
    "c_Cz", "c_Cw", "c_Dz", "c_Dw", "d_Cz", "d_Cw", "d_Dz", "d_Dw",
    "c1_C", "c1_D", "d1_C", "d1_D",
)
WEDGES = ("cw_C", "cw_D", "dw_C", "dw_D")
MODES = ("real", "complex")


class InvalidAutomorphism(ValueError):
    pass


def _is_integer(x) -> bool:
    if isinstance(x, GaussianRational):
        return x.im == 0 and x.re.denominator == 1
    return Fraction(x).denominator == 1


@dataclass(frozen=True)
class AutomorphismParams:
    kind: str
    x: object
    y: object
    u: object
    v: object
    mode: str = "real"

    def __post_init__(self) -> None:
        for name in ("x", "y", "u", "v"):
            val = getattr(self, name)
            if isinstance(val, int):
                object.__setattr__(self, name, Fraction(val))
        self.validate()

    def validate(self) -> None:
        if self.kind not in ("plus", "minus"):
            raise InvalidAutomorphism(f"kind must be plus or minus, not {self.kind!r}")
        if self.mode not in MODES:
            raise InvalidAutomorphism(f"mode must be real or complex, not {self.mode!r}")
        if self.x == 0 or self.y == 0:
            raise InvalidAutomorphism("x and y must be nonzero")
        if self.x * self.y != self.u + self.v:
            raise InvalidAutomorphism("x*y must equal u+v")
        if self.mode == "real":
            if not all(is_real(getattr(self, n)) for n in ("x", "y", "u", "v")):
                raise InvalidAutomorphism("real mode needs real parameters")
        else:
            if not (_is_integer(self.u) and _is_integer(self.v)):
                raise InvalidAutomorphism("complex mode needs integer u and v")
            if self.u + self.v not in (1, -1):
                raise InvalidAutomorphism("complex mode needs u+v = ±1")

    @property
    def ratio(self):
        return self.x / self.y

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "mode": self.mode,
            "x": format_scalar(self.x),
            "y": format_scalar(self.y),
            "u": format_scalar(self.u),
            "v": format_scalar(self.v),
        }


def _mix(kind: str, u, v):
    """Row-mixing coefficients ((a_z, b_z), (a_w, b_w)): new = a·z-entry + b·w-entry."""
    if kind == "plus":
        return ((1 + v, -v), (1 - u, u))
    return ((1 - v, v), (1 + u, -u))


def _table(kind: str, r, u, v, k: StructureConstants) -> dict:
    """The twelve essential constants after the automorphism."""
    (az, bz), (aw, bw) = _mix(kind, u, v)
    if kind == "plus":
        cC, cD, dC, dD = (k.c_Cz, k.c_Cw), (k.c_Dz, k.c_Dw), (k.d_Cz, k.d_Cw), (k.d_Dz, k.d_Dw)
        m1 = (k.c1_C, r * k.c1_D, k.d1_C / r, k.d1_D)
    else:
        # C and D swap roles
        cC, cD, dC, dD = (k.d_Dz, k.d_Dw), (k.d_Cz, k.d_Cw), (k.c_Dz, k.c_Dw), (k.c_Cz, k.c_Cw)
        m1 = (k.d1_D, r * k.d1_C, k.c1_D / r, k.c1_C)
    return {
        "c_Cz": r * (az * cC[0] + bz * cC[1]),
        "c_Cw": r * (aw * cC[0] + bw * cC[1]),
        "c_Dz": az * cD[0] + bz * cD[1],
        "c_Dw": aw * cD[0] + bw * cD[1],
        "d_Cz": az * dC[0] + bz * dC[1],
        "d_Cw": aw * dC[0] + bw * dC[1],
        "d_Dz": (az * dD[0] + bz * dD[1]) / r,
        "d_Dw": (aw * dD[0] + bw * dD[1]) / r,
        "c1_C": m1[0],
        "c1_D": m1[1],
        "d1_C": m1[2],
        "d1_D": m1[3],
    }


def _direct_wedges(kind: str, r, s, k: StructureConstants) -> dict:
    """Wedge constants transformed directly; x² = r·s and y² = s/r."""
    x2, y2 = r * s, s / r
    if kind == "plus":
        return {"cw_C": s * k.cw_C, "cw_D": x2 * k.cw_D, "dw_C": y2 * k.dw_C, "dw_D": s * k.dw_D}
    return {"cw_C": -s * k.dw_D, "cw_D": -x2 * k.dw_C, "dw_C": -y2 * k.cw_D, "dw_D": -s * k.cw_C}


class WedgeMismatch(ValueError):
    pass


def transform_ratio(kind: str, r, u, v, k: StructureConstants, strict: bool = False) -> StructureConstants:
    """Transform using ``r = x/y`` and ``x·y = u+v`` directly."""
    if r == 0 or u + v == 0:
        raise InvalidAutomorphism("r and u+v must be nonzero")
    vals = _table(kind, r, u, v, k)
    vals["cw_C"] = 0 * vals["c_Cz"]
    vals["cw_D"] = 2 * (vals["c_Cz"] - vals["c_Cw"])
    vals["dw_C"] = 2 * (vals["d_Dz"] - vals["d_Dw"])
    vals["dw_D"] = 0 * vals["d_Dz"]
    if strict:
        direct = _direct_wedges(kind, r, u + v, k)
        bad = [w for w in WEDGES if direct[w] != vals[w]]
        if bad:
            raise WedgeMismatch(f"direct wedge transform disagrees on {', '.join(bad)}")
    return StructureConstants(**vals)


def transform(a: AutomorphismParams, k: StructureConstants, strict: bool = False) -> StructureConstants:
    a.validate()
    return transform_ratio(a.kind, a.ratio, a.u, a.v, k, strict=strict)


def compose_plus(a1: AutomorphismParams, a2: AutomorphismParams) -> AutomorphismParams:
    """Parameters of applying ``a1`` first, then ``a2`` (both plus-kind)."""
    if a1.kind != "plus" or a2.kind != "plus":
        raise InvalidAutomorphism("composition law implemented for plus-kind only")
    (p1, q1), (s1, t1) = _mix("plus", a1.u, a1.v)
    (p2, q2), (s2, t2) = _mix("plus", a2.u, a2.v)
    # product of mixing matrices: second row, second column gives u; -first row, second column gives v
    u = s2 * q1 + t2 * t1
    v = -(p2 * q1 + q2 * t1)
    mode = "complex" if "complex" in (a1.mode, a2.mode) else "real"
    return AutomorphismParams("plus", a1.x * a2.x, a1.y * a2.y, u, v, mode)


def random_automorphism(rng: random.Random, mode: str = "real", kind: str | None = None) -> AutomorphismParams:
    kind = kind or rng.choice(("plus", "minus"))

    def q():
        return Fraction(rng.choice((-1, 1)) * rng.randint(1, 5), rng.randint(1, 4))

    if mode == "real":
        x, y = q(), q()
        u = Fraction(rng.randint(-4, 4), rng.randint(1, 3))
        return AutomorphismParams(kind, x, y, u, x * y - u, "real")
    s = Fraction(rng.choice((1, -1)))
    u = Fraction(rng.randint(-4, 4))
    x = GaussianRational(q(), rng.choice((0, 1)) * q())
    return AutomorphismParams(kind, x, s / x, u, s - u, "complex")


# ---------------------------------------------------------------- solver


@dataclass(frozen=True)
class Constraint:
    """One derived equation ``scale(r)·(α + β·u + γ·v) = d``.

    ``scale`` is ``"1"``, ``"r"`` or ``"1/r"``.  ``pattern`` names the
    mixing pair the affine part came from, for rendering.
    """

    key: str
    scale: str
    alpha: object
    beta: object
    gamma: object
    d: object
    pattern: tuple | None = None  # (label, a, b) for a·first + b·second

    def affine(self):
        return self.alpha, self.beta, self.gamma

    def render(self) -> str:
        """Normal form; an equation with no (u, v) dependence reads (1+v)-v = c."""
        fmt = format_scalar
        if self.pattern is not None:
            label, a, b = self.pattern
            if self.beta == 0 and self.gamma == 0 and self.alpha != 0:
                # affine part is the constant a; divide it out
                if self.scale == "1":
                    return f"(1+v)-v = {fmt(self.d / self.alpha)}"
                if self.scale == "r":
                    return f"r*((1+v)-v) = {fmt(self.d / self.alpha)}"
                return f"(1+v)-v = r*{fmt(self.d / self.alpha)}"
            first, second = label
            body = f"{fmt(a)}*{first}+{fmt(b)}*{second}"
        else:
            body = fmt(self.alpha)
        if self.scale == "1":
            return f"{body} = {fmt(self.d)}"
        if self.scale == "r":
            return f"r*({body}) = {fmt(self.d)}"
        return f"{body} = r*{fmt(self.d)}"

    def raw(self) -> str:
        """The equation before normalization, e.g. ``(1-v)*(-1/2)+v*(-1/2) = 1``."""
        fmt = format_scalar
        if self.pattern is not None:
            (first, second), a, b = self.pattern
            body = f"{first}*({fmt(a)})+{second}*({fmt(b)})"
        else:
            body = fmt(self.alpha)
        if self.scale == "1":
            return f"{body} = {fmt(self.d)}"
        if self.scale == "r":
            return f"r*({body}) = {fmt(self.d)}"
        return f"{body} = r*{fmt(self.d)}"

    def source(self) -> str:
        return f"{self.key}: {self.raw()}"


_PAT = {
    "plus": (("(1+v)", "v"), ("(1-u)", "u")),
    "minus": (("(1-v)", "v"), ("(1+u)", "u")),
}


def derive_constraints(kind: str, src: StructureConstants, dst: StructureConstants) -> list[Constraint]:
    """All twelve equations ``dst = transform(src)`` as affine constraints.

    Ordered r-free first (c_D and d_C columns, then the M_1 diagonal), then
    the r-scaled ones.
    """
    if kind == "plus":
        cols = {"cC": (src.c_Cz, src.c_Cw), "cD": (src.c_Dz, src.c_Dw),
                "dC": (src.d_Cz, src.d_Cw), "dD": (src.d_Dz, src.d_Dw)}
        diag = (src.c1_C, src.d1_D)
        off = (src.c1_D, src.d1_C)
    else:
        cols = {"cC": (src.d_Dz, src.d_Dw), "cD": (src.d_Cz, src.d_Cw),
                "dC": (src.c_Dz, src.c_Dw), "dD": (src.c_Cz, src.c_Cw)}
        diag = (src.d1_D, src.c1_C)
        off = (src.d1_C, src.c1_D)
    zrow, wrow = _PAT[kind]
    zero = Fraction(0)

    def row(key, col, which, scale):
        a, b = cols[col]
        if kind == "plus":
            # z-row: (1+v)a - v b ; w-row: (1-u)a + u b
            aff = (a, zero, a - b) if which == "z" else (a, b - a, zero)
            pat = (zrow, a, -b) if which == "z" else (wrow, a, b)
        else:
            # z-row: (1-v)a + v b ; w-row: (1+u)a - u b
            aff = (a, zero, b - a) if which == "z" else (a, a - b, zero)
            pat = (zrow, a, b) if which == "z" else (wrow, a, -b)
        return Constraint(key, scale, *aff, getattr(dst, key), pat)

    out = [
        row("c_Dz", "cD", "z", "1"),
        row("d_Cz", "dC", "z", "1"),
        row("c_Dw", "cD", "w", "1"),
        row("d_Cw", "dC", "w", "1"),
        Constraint("c1_C", "1", diag[0], zero, zero, dst.c1_C),
        Constraint("d1_D", "1", diag[1], zero, zero, dst.d1_D),
        row("c_Cz", "cC", "z", "r"),
        row("c_Cw", "cC", "w", "r"),
        row("d_Dz", "dD", "z", "1/r"),
        row("d_Dw", "dD", "w", "1/r"),
        Constraint("c1_D", "r", off[0], zero, zero, dst.c1_D),
        Constraint("d1_C", "1/r", off[1], zero, zero, dst.d1_C),
    ]
    return out


class NonlinearResidual(NotImplementedError):
    pass


@dataclass
class _Solution:
    point: list          # particular (u, v)
    directions: list     # basis of the solution directions in (u, v)
    r: object | None     # pinned ratio, or None when free


def _affine_solve(rows: list[tuple]) -> tuple[list, list] | None:
    """Solve rows (α, β, γ, d) meaning α + βu + γv = d."""
    zero = Fraction(0)
    if not rows:
        return [zero, zero], [[Fraction(1), zero], [zero, Fraction(1)]]
    aug = [[b, g, d - a] for a, b, g, d in rows]
    red, piv = rref(aug)
    if 2 in piv:
        return None
    point = [zero, zero]
    for rw, pc in zip(red, piv):
        point[pc] = rw[2]
    dirs = nullspace([[rw[0], rw[1]] for rw in aug])
    return point, dirs


def _restricted(c: Constraint, sol_point, sol_dirs):
    """Value of the affine part at the particular point and its variation."""
    a, b, g = c.affine()
    val = a + b * sol_point[0] + g * sol_point[1]
    var = [b * d[0] + g * d[1] for d in sol_dirs]
    return val, var


def _solve(constraints: list[Constraint]) -> _Solution | None:
    """Fixpoint elimination; ``None`` means inconsistent."""
    linear: list[tuple] = []
    r = None
    pending = list(constraints)
    while True:
        sol = _affine_solve(linear)
        if sol is None:
            return None
        point, dirs = sol
        progress = False
        rest = []
        for c in pending:
            a, b, g = c.affine()
            if c.scale == "1":
                linear.append((a, b, g, c.d))
                progress = True
            elif r is not None:
                rhs = c.d / r if c.scale == "r" else c.d * r
                linear.append((a, b, g, rhs))
                progress = True
            elif c.d == 0:
                # r is nonzero, so the affine part must vanish
                linear.append((a, b, g, Fraction(0)))
                progress = True
            else:
                val, var = _restricted(c, point, dirs)
                if all(x == 0 for x in var):
                    if val == 0:
                        return None
                    r = c.d / val if c.scale == "r" else val / c.d
                    progress = True
                else:
                    rest.append(c)
        pending = rest
        if not progress:
            break
    sol = _affine_solve(linear)
    if sol is None:
        return None
    if pending:
        raise NonlinearResidual(
            "ratio r is not determined linearly: " + "; ".join(c.source() for c in pending)
        )
    return _Solution(sol[0], sol[1], r)


@dataclass(frozen=True)
class Witness:
    kind: str
    mode: str
    r: object
    u: object
    v: object
    params: AutomorphismParams | None
    x_squared: object
    quadratic_extension: bool = False
    residuals: tuple = ()

    feasible = True

    def to_json(self) -> dict:
        out = {
            "verdict": "isomorphic",
            "kind": self.kind,
            "mode": self.mode,
            "r": format_scalar(self.r),
            "u": format_scalar(self.u),
            "v": format_scalar(self.v),
            "x_squared": format_scalar(self.x_squared),
            "quadratic_extension": self.quadratic_extension,
            "residuals": [format_scalar(x) for x in self.residuals],
        }
        if self.params is not None:
            out["params"] = self.params.to_json()
        return out


@dataclass(frozen=True)
class Infeasible:
    mode: str
    certificates: dict = field(default_factory=dict)  # kind -> list[Constraint]
    reasons: dict = field(default_factory=dict)       # kind -> str

    feasible = False

    def constraints(self, kind: str) -> list[str]:
        return [c.render() for c in self.certificates.get(kind, [])]

    def to_json(self) -> dict:
        return {
            "verdict": "not isomorphic",
            "mode": self.mode,
            "kinds": {
                kind: {
                    "reason": self.reasons[kind],
                    "constraints": [c.render() for c in self.certificates.get(kind, [])],
                    "derived_from": [c.source() for c in self.certificates.get(kind, [])],
                }
                for kind in ("plus", "minus")
                if kind in self.reasons
            },
        }


def _certificate(constraints: list[Constraint]) -> list[Constraint]:
    """First (lexicographic) mutually inconsistent pair, else a minimal subset."""
    n = len(constraints)
    for j in range(n):
        if _solve([constraints[j]]) is None:
            # self-inconsistent; pair it with the next self-inconsistent one if any
            for i in range(j + 1, n):
                if _solve([constraints[i]]) is None:
                    return [constraints[j], constraints[i]]
            break
    for i in range(n):
        for j in range(i + 1, n):
            if _solve([constraints[i], constraints[j]]) is None:
                return [constraints[i], constraints[j]]
    keep = list(constraints)
    idx = 0
    while idx < len(keep):
        trial = keep[:idx] + keep[idx + 1:]
        if _solve(trial) is None:
            keep = trial
        else:
            idx += 1
    return keep


def _integer_point_on_line(a, b, c) -> tuple[int, int] | None:
    """An integer solution of a·u + b·v = c (rational a, b, c), nearest (1, 0)."""
    den = 1
    for q in (a, b, c):
        den = den * Fraction(q).denominator // gcd(den, Fraction(q).denominator)
    A, B, C = (int(Fraction(q) * den) for q in (a, b, c))
    g = gcd(A, B)
    if g == 0:
        return (1, 0) if C == 0 else None
    if C % g:
        return None
    A, B, C = A // g, B // g, C // g
    # extended gcd for A·s + B·t = 1
    old_r, r_ = A, B
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r_:
        q = old_r // r_
        old_r, r_ = r_, old_r - q * r_
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    u0, v0 = old_s * C, old_t * C
    # general solution (u0 + B k, v0 - A k); pick k bringing u closest to 1
    if B != 0:
        kk = round(Fraction(1 - u0, B))
    else:
        kk = round(Fraction(v0, A)) if A else 0
    return u0 + B * kk, v0 - A * kk


def _as_rational(x):
    if isinstance(x, GaussianRational):
        if x.im != 0:
            return None
        return x.re
    return Fraction(x)


def _pick_complex(sol: _Solution):
    """Integer (u, v) in the solution set with u+v = ±1 (identity first)."""
    for s in (Fraction(1), Fraction(-1)):
        rows_sol = _affine_solve(_equations_of(sol) + [(Fraction(0), Fraction(1), Fraction(1), s)])
        if rows_sol is None:
            continue
        point, dirs = rows_sol
        if not dirs:
            pu, pv = _as_rational(point[0]), _as_rational(point[1])
            if pu is not None and pv is not None and pu.denominator == pv.denominator == 1:
                return pu, pv
            continue
        if len(dirs) == 1:
            # line through point with direction d: normal (d1, -d0)
            d0, d1 = dirs[0]
            a, b = d1, -d0
            c = a * point[0] + b * point[1]
            vals = [_as_rational(x) for x in (a, b, c)]
            if any(x is None for x in vals):
                # complex-coefficient line: scale to make it real if possible
                scale = a if a != 0 else b
                vals = [_as_rational(x / scale) for x in (a, b, c)]
                if any(x is None for x in vals):
                    continue
            pt = _integer_point_on_line(*vals)
            if pt is not None:
                return Fraction(pt[0]), Fraction(pt[1])
    return None


def _equations_of(sol: _Solution) -> list[tuple]:
    """Affine equations (α, β, γ, d) cutting out the solution set."""
    zero = Fraction(0)
    if len(sol.directions) == 2:
        return []
    if len(sol.directions) == 1:
        d0, d1 = sol.directions[0]
        return [(zero, d1, -d0, d1 * sol.point[0] - d0 * sol.point[1])]
    return [(zero, Fraction(1), zero, sol.point[0]), (zero, zero, Fraction(1), sol.point[1])]


def _in_solution(sol: _Solution, u, v) -> bool:
    return all(a + b * u + g * v == d for a, b, g, d in _equations_of(sol))


def _pick_real(sol: _Solution):
    """(u, v, r) with u+v ≠ 0 and r(u+v) > 0, preferring exact squares."""
    one, zero = Fraction(1), Fraction(0)
    if _in_solution(sol, one, zero) and sol.r in (None, one):
        return one, zero, one
    if not all(is_real(x) for x in sol.point + [c for d in sol.directions for c in d]):
        return None
    if sol.r is not None and not is_real(sol.r):
        return None
    r = _as_rational(sol.r) if sol.r is not None else None
    s_eq = (zero, one, one)
    eqs = _equations_of(sol)
    if r is not None:
        # aim for u+v = r, making r(u+v) = r² a square
        target = _affine_solve(eqs + [(*s_eq, r)])
        if target is not None:
            return _as_rational(target[0][0]), _as_rational(target[0][1]), r
        s = _as_rational(sol.point[0] + sol.point[1])
        if s * r > 0:
            return _as_rational(sol.point[0]), _as_rational(sol.point[1]), r
        return None
    for s in (one, -one):
        target = _affine_solve(eqs + [(*s_eq, s)])
        if target is not None:
            return _as_rational(target[0][0]), _as_rational(target[0][1]), s
    s = _as_rational(sol.point[0] + sol.point[1])
    if s != 0:
        return _as_rational(sol.point[0]), _as_rational(sol.point[1]), s
    return None


def _solve_kind(kind: str, src, dst, mode: str):
    constraints = derive_constraints(kind, src, dst)
    sol = _solve(constraints)
    if sol is None:
        return None, _certificate(constraints), "inconsistent linear constraints"
    if mode == "real":
        pick = _pick_real(sol)
        if pick is None:
            return None, [], "no real automorphism: r(u+v) cannot be made positive"
        u, v, r = pick
    else:
        pick = _pick_complex(sol)
        if pick is None:
            return None, [], "no integer (u, v) with u+v = ±1 in the solution set"
        u, v = pick
        r = sol.r if sol.r is not None else Fraction(1)
    s = u + v
    x2 = r * s
    if mode == "complex" and not isinstance(x2, GaussianRational):
        x2_field = GaussianRational(x2)
    else:
        x2_field = x2
    root = exact_sqrt(x2_field)
    params = None
    if root is not None and root != 0:
        x = root
        y = s / x
        if mode == "real":
            params = AutomorphismParams(kind, x, y, u, v, "real")
        else:
            params = AutomorphismParams(kind, x, y, u, v, "complex")
    image = transform_ratio(kind, r, u, v, src)
    residuals = tuple(a - b for a, b in zip(image.values(), dst.values()))
    if any(x != 0 for x in residuals):
        return None, [], "round trip failed"  # pragma: no cover - guarded by the solver
    return (
        Witness(kind, mode, r, u, v, params, x2, quadratic_extension=params is None,
                residuals=residuals),
        [],
        "",
    )


def find_isomorphism(src: StructureConstants, dst: StructureConstants, mode: str = "real"):
    """Search both automorphism kinds for one mapping ``src`` to ``dst``.

    Returns a :class:`Witness` (plus-kind preferred) or an
    :class:`Infeasible` carrying, per kind, the reason and a certificate.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be real or complex, not {mode!r}")
    if mode == "real" and not (src.is_real() and dst.is_real()):
        raise ValueError("real mode needs real structure constants")
    certs, reasons = {}, {}
    for kind in ("plus", "minus"):
        witness, cert, reason = _solve_kind(kind, src, dst, mode)
        if witness is not None:
            return witness
        certs[kind] = cert
        reasons[kind] = reason
    return Infeasible(mode, certs, reasons)


# ---------------------------------------------------------------- orbit rank


def orbit_tangent_rank(k: StructureConstants, mode: str = "real") -> JacobianRankReport:
    """Rank of d/d(r,u,v) of the plus-kind action at the identity.

    Complex mode differentiates only in r, with (u, v) frozen at (1, 0).
    """
    def essentials(params):
        r, u, v = params
        vals = _table("plus", r, u, v, k)
        return [vals[key] for key in ESSENTIAL]

    one, zero = Fraction(1), Fraction(0)
    if mode == "real":
        J = jacobian(essentials, [one, one, zero])
        point = (one, one, zero)
    elif mode == "complex":
        J = jacobian(lambda p: essentials([p[0], one, zero]), [one])
        point = (one,)
    else:
        raise ValueError(f"mode must be real or complex, not {mode!r}")
    return JacobianRankReport(point=point, rows=len(J), cols=len(J[0]), rank=rank(J))
