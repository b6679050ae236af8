import random
from fractions import Fraction

import pytest
import sympy

from superlab.classification import expand, sample_valid
from superlab.conditions import evaluate_conditions
from superlab.derivations import BER, KK
from superlab.isomorphism import (
    AutomorphismParams,
    Infeasible,
    InvalidAutomorphism,
    WedgeMismatch,
    Witness,
    compose_plus,
    find_isomorphism,
    orbit_tangent_rank,
    random_automorphism,
    transform,
    transform_ratio,
)
from superlab.scalars import GaussianRational

H = Fraction(1, 2)


def table_oracle(kind, r, u, v, k):
    """Independent transcription of the two parameter tables (12 entries)."""
    K = k
    if kind == "plus":
        return {
            "c_Cz": r * ((1 + v) * K.c_Cz - v * K.c_Cw), "c_Dz": (1 + v) * K.c_Dz - v * K.c_Dw,
            "c_Cw": r * ((1 - u) * K.c_Cz + u * K.c_Cw), "c_Dw": (1 - u) * K.c_Dz + u * K.c_Dw,
            "d_Cz": (1 + v) * K.d_Cz - v * K.d_Cw, "d_Dz": ((1 + v) * K.d_Dz - v * K.d_Dw) / r,
            "d_Cw": (1 - u) * K.d_Cz + u * K.d_Cw, "d_Dw": ((1 - u) * K.d_Dz + u * K.d_Dw) / r,
            "c1_C": K.c1_C, "c1_D": r * K.c1_D, "d1_C": K.d1_C / r, "d1_D": K.d1_D,
        }
    return {
        "c_Cz": r * ((1 - v) * K.d_Dz + v * K.d_Dw), "c_Dz": (1 - v) * K.d_Cz + v * K.d_Cw,
        "c_Cw": r * ((1 + u) * K.d_Dz - u * K.d_Dw), "c_Dw": (1 + u) * K.d_Cz - u * K.d_Cw,
        "d_Cz": (1 - v) * K.c_Dz + v * K.c_Dw, "d_Dz": ((1 - v) * K.c_Cz + v * K.c_Cw) / r,
        "d_Cw": (1 + u) * K.c_Dz - u * K.c_Dw, "d_Dw": ((1 + u) * K.c_Cz - u * K.c_Cw) / r,
        "c1_C": K.d1_D, "c1_D": r * K.d1_C, "d1_C": K.c1_D / r, "d1_D": K.c1_C,
    }


def valid_structures(n, seed=0):
    return [expand(sample_valid(seed + i)) for i in range(n)]


def test_identity():
    a = AutomorphismParams("plus", 1, 1, 1, 0)
    for k in [KK, BER] + valid_structures(5):
        assert transform(a, k) == k


def test_kk_c_dz_invariant():
    rng = random.Random(1)
    for _ in range(10):
        a = random_automorphism(rng, kind="plus")
        assert transform(a, KK).c_Dz == -H


def test_minus_on_ber_valid():
    assert evaluate_conditions(transform(AutomorphismParams("minus", 1, 1, 0, 1), BER)).passes_all


def test_invariants_enforced():
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams("plus", 1, 2, 1, 0)
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams("plus", 0, 1, 0, 0)
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams("both", 1, 1, 1, 0)
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams("plus", H, 4, 1, 1, "complex")
    with pytest.raises(InvalidAutomorphism):
        AutomorphismParams("plus", H, 2, H, H, "complex")
    AutomorphismParams("plus", GaussianRational(0, 1), GaussianRational(0, -1), 3, -2, "complex")


@pytest.mark.parametrize("seed", range(20))
def test_transform_matches_independent_table(seed):
    rng = random.Random(seed)
    k = expand(sample_valid(seed))
    a = random_automorphism(rng, kind=rng.choice(["plus", "minus"]))
    out = transform(a, k, strict=True)
    for key, val in table_oracle(a.kind, a.x / a.y, a.u, a.v, k).items():
        assert getattr(out, key) == val, key


@pytest.mark.parametrize("seed", range(20))
def test_strict_wedges_agree(seed):
    rng = random.Random(100 + seed)
    k = expand(sample_valid(seed))
    transform(random_automorphism(rng), k, strict=True)


def test_strict_detects_inconsistent_wedges():
    with pytest.raises(WedgeMismatch):
        transform_ratio("plus", Fraction(2), Fraction(1), Fraction(1), KK.replace(cw_D=Fraction(1)), strict=True)


@pytest.mark.parametrize("seed", range(10))
def test_composition_law(seed):
    rng = random.Random(seed)
    k = expand(sample_valid(seed))
    a1, a2 = random_automorphism(rng, kind="plus"), random_automorphism(rng, kind="plus")
    assert transform(a2, transform(a1, k)) == transform(compose_plus(a1, a2), k)


def test_kk_ber_certificate():
    res = find_isomorphism(KK, BER, "real")
    assert isinstance(res, Infeasible)
    for kind in ("plus", "minus"):
        assert res.constraints(kind) == ["(1+v)-v = -2", "(1+v)-v = 0"]


def test_self_isomorphism_is_identity():
    w = find_isomorphism(BER, BER, "real")
    assert isinstance(w, Witness)
    assert (w.kind, w.params.x, w.params.y, w.u, w.v) == ("plus", 1, 1, 1, 0)


@pytest.mark.parametrize("mode", ["real", "complex"])
def test_roundtrip_witness(mode):
    rng = random.Random(7)
    for i in range(15):
        k = expand(sample_valid(200 + i))
        a = random_automorphism(rng, mode=mode)
        img = transform(a, k)
        w = find_isomorphism(k, img, mode)
        assert isinstance(w, Witness)
        assert transform_ratio(w.kind, w.r, w.u, w.v, k) == img
        assert all(x == 0 for x in w.residuals)


def test_verdict_symmetry():
    rng = random.Random(5)
    pool = valid_structures(6, 300)
    pool.append(transform(random_automorphism(rng), pool[0]))
    pool.append(transform(random_automorphism(rng), pool[1]))
    for i, a in enumerate(pool):
        for b in pool[i:]:
            assert find_isomorphism(a, b).feasible == find_isomorphism(b, a).feasible


def _oracle_rank(k, mode):
    r, u, v = sympy.symbols("r u v")
    kk = type(k)(*(sympy.Rational(x.numerator, x.denominator) for x in k.values()))
    vals = list(table_oracle("plus", r, u, v, kk).values())
    if mode == "real":
        J = sympy.Matrix(vals).jacobian([r, u, v])
    else:
        J = sympy.Matrix([sympy.sympify(x).subs({u: 1, v: 0}) for x in vals]).jacobian([r])
    return J.subs({r: 1, u: 1, v: 0}).rank()


@pytest.mark.parametrize("k", [KK, BER] + valid_structures(4), ids=lambda k: "")
def test_orbit_rank_matches_symbolic(k):
    for mode in ("real", "complex"):
        assert orbit_tangent_rank(k, mode).rank == _oracle_rank(k, mode)


def test_orbit_rank_generic():
    for k in valid_structures(10):
        assert orbit_tangent_rank(k, "real").rank == 3
        assert orbit_tangent_rank(k, "complex").rank == 1


def test_orbit_rank_at_special_tables():
    # both tables sit on lower-dimensional orbits (see the acceptance suite)
    assert orbit_tangent_rank(KK, "real").rank == 0
    assert orbit_tangent_rank(BER, "real").rank == 2
    assert orbit_tangent_rank(BER, "complex").rank == 0
