from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superlab.algebra import CSTAR, DSTAR, EPS, WEDGE, ExtGrassmannElement, GrassmannElement, SuperFunction, monomial
from superlab.berezin import (
    ContinuedFunction,
    DecompositionError,
    ParityError,
    SuperMatrix,
    berezin_action_list,
    continue_eval,
    decompose,
    derive_ber,
    even_derivative,
    exp_odd,
    group_element,
    odd_derivative,
    sample_points,
    smat_mul,
)
from superlab.conditions import evaluate_conditions
from superlab.derivations import BER, apply
from superlab.isomorphism import Infeasible, find_isomorphism
from superlab.kostant import FunctionalCombination, derive_kk
from superlab.poly import M, N, Poly

from conftest import fractions, nonzero_fractions

F = ContinuedFunction
MASK = {"1": 0, "C": 1, "D": 2, "W": 3}
CONVENTIONS = ("series", "unit")


def odd_entry(p=fractions):
    return st.tuples(p, p, p, p).map(lambda c: ExtGrassmannElement(0, c[0], c[1], 0, c[2], 0, 0, c[3]))


def even_entry(body=fractions):
    return st.tuples(body, fractions, fractions, fractions).map(
        lambda c: ExtGrassmannElement(c[0], 0, 0, c[1], 0, c[2], c[3], 0))


supermatrices = st.tuples(even_entry(), odd_entry(), odd_entry(), even_entry()).map(lambda e: SuperMatrix(*e))

coordinates = st.tuples(
    nonzero_fractions, fractions, nonzero_fractions, fractions, fractions, fractions, fractions, fractions)


def odd_matrix(cC, cD, dC, dD):
    return SuperMatrix(0, ExtGrassmannElement(0, cC, cD), ExtGrassmannElement(0, dC, dD), 0)


def lift(g):
    return ExtGrassmannElement.lift(g)


# ---------------------------------------------------------------- matrices


@given(supermatrices)
def test_identity_is_neutral(a):
    assert smat_mul(a, SuperMatrix.identity()) == a == smat_mul(SuperMatrix.identity(), a)


@given(supermatrices, supermatrices, supermatrices)
def test_associative(a, b, c):
    assert smat_mul(smat_mul(a, b), c) == smat_mul(a, smat_mul(b, c))


def test_odd_times_odd_is_diagonal_wedge():
    x = odd_matrix(2, 3, 5, 7)
    y = odd_matrix(2, 3, 5, 7)
    p = smat_mul(x, y)
    R = 2 * 7 - 3 * 5
    assert p.b == p.c == ExtGrassmannElement()
    assert p.a == lift(WEDGE.scale(R))
    assert p.d == lift(WEDGE.scale(-R))


def test_parity_pattern_enforced():
    with pytest.raises(ParityError):
        SuperMatrix(lift(CSTAR), 0, 0, 1)
    with pytest.raises(ParityError):
        SuperMatrix(1, 1, 0, 1)


@pytest.mark.parametrize("convention", CONVENTIONS)
def test_exp_odd_basics(convention):
    assert exp_odd(SuperMatrix(0, 0, 0, 0), convention) == SuperMatrix.identity()
    n = SuperMatrix(0, lift(CSTAR), 0, 0)
    assert exp_odd(n, convention) == SuperMatrix(1, lift(CSTAR), 0, 1)
    with pytest.raises(ParityError):
        exp_odd(SuperMatrix.identity())


@given(st.tuples(fractions, fractions, fractions, fractions))
def test_exp_odd_inverse(c):
    n = odd_matrix(*c)
    neg = odd_matrix(*(-x for x in c))
    assert smat_mul(exp_odd(n), exp_odd(neg)) == SuperMatrix.identity()


def test_exp_with_eps_still_nilpotent():
    n = SuperMatrix(0, ExtGrassmannElement(0, 1, 2, 0, 3), ExtGrassmannElement(0, 4, 5, 0, 6), 0)
    e = exp_odd(n)
    assert smat_mul(e, exp_odd(SuperMatrix(0, -n.b, -n.c, 0))) == SuperMatrix.identity()


# ---------------------------------------------------------------- decompose


@pytest.mark.parametrize("convention", CONVENTIONS)
def test_decompose_identity(convention):
    dec = decompose(SuperMatrix.identity(), convention)
    assert (dec.a1_hat, dec.b1_hat, dec.a_wedge, dec.b_wedge, dec.odd) == (1, 1, 0, 0, (0, 0, 0, 0))


@pytest.mark.parametrize("convention", CONVENTIONS)
def test_decompose_pure_odd(convention):
    n = odd_matrix(1, -2, 3, Fraction(1, 2))
    dec = decompose(exp_odd(n, convention), convention)
    assert (dec.a1_hat, dec.b1_hat, dec.a_wedge, dec.b_wedge) == (1, 1, 0, 0)
    assert dec.odd == (1, -2, 3, Fraction(1, 2))


@pytest.mark.parametrize("convention", CONVENTIONS)
@given(coords=coordinates)
def test_coordinates_roundtrip(convention, coords):
    g = group_element(*coords, convention=convention)
    dec = decompose(g, convention)
    assert dec.recompose() == g
    assert (dec.a1_hat, dec.a_wedge, dec.b1_hat, dec.b_wedge) == coords[:4]
    assert dec.odd == coords[4:]


@given(supermatrices.filter(lambda g: g.a.body != 0 and g.d.body != 0))
def test_decompose_roundtrip_random(g):
    for convention in CONVENTIONS:
        assert decompose(g, convention).recompose() == g


def test_decompose_rejects_singular_body():
    with pytest.raises(DecompositionError):
        decompose(SuperMatrix(0, 0, 0, 1))
    with pytest.raises(DecompositionError):
        group_element(0, 0, 1, 0, 0, 0, 0, 0)


# ---------------------------------------------------------------- functions


def test_continue_eval_examples():
    assert continue_eval(F(1, 0), SuperMatrix.identity()) == ExtGrassmannElement(1)
    n = odd_matrix(2, -1, 3, 5)
    for nm in [(0, 0), (2, -3)]:
        assert continue_eval(F(*nm, "C"), exp_odd(n)) == n.b
    g = group_element(3, Fraction(1, 2), Fraction(-2), 4, 2, -1, 3, 5)
    R = 2 * 5 - (-1) * 3
    assert continue_eval(F(1, 1, "W"), g) == lift(WEDGE.scale(R * 3 * -2))


def test_continue_eval_weight_function():
    g = group_element(3, Fraction(1, 2), Fraction(-2), 4, 0, 0, 0, 0)
    # F_{n,m,1} = a^n b^m (1 + (n a_w + m b_w) C*∧D*)
    assert continue_eval(F(2, -1), g) == lift(GrassmannElement(Fraction(-9, 2), 0, 0, Fraction(-9, 2) * (1 - 4)))


def eval_superfunction(f: SuperFunction, g, convention):
    """Σ q·F_{n,m,ω}(g) under the identification f_{n,m}ω ↔ F_{n,m,ω}."""
    total = ExtGrassmannElement()
    for (n, m), coeff in f.items():
        for form, mask in MASK.items():
            if coeff[mask]:
                total = total + continue_eval(F(n, m, form), g, convention).scale(coeff[mask])
    return total.eps_free()


def as_superfunction(n, m, form):
    return monomial(n, m, GrassmannElement.basis(MASK[form]))


EXPONENTS = [(0, 0), (1, 0), (0, 1), (2, -3), (-1, 2)]


@pytest.mark.parametrize("convention", CONVENTIONS)
@pytest.mark.parametrize("direction", ["A", "B"])
def test_bilaterality_even(convention, direction):
    for g in sample_points(convention)[:3]:
        for (n, m), form in product(EXPONENTS, MASK):
            lhs = even_derivative(F(n, m, form), direction, g, convention)
            rhs = eval_superfunction(apply(direction, as_superfunction(n, m, form)), g, convention)
            assert lhs == rhs


def test_even_derivative_examples():
    g = sample_points("unit")[0]
    for n, m in EXPONENTS:
        assert lift(even_derivative(F(n, m), "A", g, "unit")) == continue_eval(F(n, m), g, "unit").scale(n)
    assert lift(even_derivative(F(0, 0, "C"), "A", g, "unit")) == -continue_eval(F(0, 0, "C"), g, "unit")
    assert even_derivative(F(0, 0, "W"), "A", g, "unit") == GrassmannElement()


def right_derivation(X, n, m, form, k):
    """Right superderivation with X on generators taken from ``apply``."""
    f = monomial(n, m)
    Rf = apply(X, f, k)
    one = monomial(0, 0)
    c, d = monomial(0, 0, CSTAR), monomial(0, 0, DSTAR)
    Rc, Rd = apply(X, c, k), apply(X, d, k)
    R_form = {"1": SuperFunction(), "C": Rc, "D": Rd, "W": c * Rd - Rc * d}[form]
    w = {"1": one, "C": c, "D": d, "W": c * d}[form]
    sign = -1 if form in "CD" else 1
    return f * R_form + (Rf * w).scale(sign)


@pytest.mark.parametrize("X", ["C", "D"])
def test_odd_derivative_is_right_derivation_with_ber_constants(X):
    for g in sample_points("unit")[:3]:
        for (n, m), form in product(EXPONENTS, MASK):
            h = odd_derivative(F(n, m, form), X, g, "unit", "right")
            assert h == eval_superfunction(right_derivation(X, n, m, form, BER), g, "unit")


def test_odd_derivative_examples():
    g = sample_points("unit")[1]
    for n, m in EXPONENTS:
        assert lift(odd_derivative(F(n, m), "C", g, "unit")) == continue_eval(F(n, m, "D"), g, "unit").scale(n)
        assert odd_derivative(F(n, m, "C"), "D", g, "unit") == GrassmannElement()
        assert lift(odd_derivative(F(n, m, "W"), "D", g, "unit")) == continue_eval(F(n, m, "C"), g, "unit")


def test_extractions_differ_by_degree_sign():
    g = sample_points("unit")[2]
    for form in MASK:
        r = odd_derivative(F(1, 2, form), "C", g, "unit", "right")
        l_ = odd_derivative(F(1, 2, form), "C", g, "unit", "left")
        assert l_.even_part() == r.even_part() and l_.odd_part() == -r.odd_part()


def test_odd_derivative_rejects_bad_input():
    g = sample_points()[0]
    with pytest.raises(ValueError):
        odd_derivative(F(0, 0), "A", g)
    with pytest.raises(ValueError):
        odd_derivative(F(0, 0), "C", g, extraction="middle")
    with pytest.raises(ValueError):
        odd_derivative(F(0, 0), "C", SuperMatrix(1, EPS, 0, 1))
    with pytest.raises(ValueError):
        even_derivative(F(0, 0), "C", g)
    with pytest.raises(ValueError):
        F(0, 0, "X")


# ---------------------------------------------------------------- derived list


def comb(**terms):
    return FunctionalCombination({((0, 0), k): v for k, v in terms.items()})


def test_action_list():
    acts = berezin_action_list()
    one = Poly(1)
    assert acts[("C", "1")] == comb(D=N)
    assert acts[("C", "C")] == comb(**{"1": one, "W": N})
    assert acts[("C", "D")] == comb()
    assert acts[("C", "W")] == comb(D=-one)
    assert acts[("D", "1")] == comb(C=M)
    assert acts[("D", "C")] == comb()
    assert acts[("D", "D")] == comb(**{"1": one, "W": -M})
    assert acts[("D", "W")] == comb(C=one)


def test_derive_ber():
    k = derive_ber()
    assert k == BER
    assert evaluate_conditions(k).passes_all
    assert isinstance(find_isomorphism(derive_kk(), k, "real"), Infeasible)


def test_left_extraction_breaks_the_bracket():
    rep = evaluate_conditions(derive_ber("unit", "left"))
    assert rep.failing() == ["xix", "xx"]


def test_series_chart_gives_a_different_valid_table():
    k = derive_ber("series", "right")
    h = Fraction(1, 2)
    assert (k.c_Dz, k.c_Dw, k.d_Cz, k.d_Cw) == (h, h, h, h)
    assert (k.c1_C, k.d1_D) == (1, 1)
    assert evaluate_conditions(k).passes_all
    assert k != BER
