from fractions import Fraction

import pytest
import sympy
from hypothesis import given

from superlab.algebra import CSTAR, DSTAR, WEDGE, monomial
from superlab.classification import expand, sample_valid
from superlab.conditions import (
    CONDITION_IDS,
    NotARepresentation,
    condition_residuals,
    equivalence_check,
    evaluate_conditions,
    even_kernel,
    invariant_sheaf,
)
from superlab.derivations import BER, KK, OperatorExpr, StructureConstants, apply, apply_expr
from superlab.derivations import BRACKET_IDENTITIES, PROBES

from conftest import structure_constants

# Representations failing only xxv, found by the grid scan.
NON_DEFINITE = StructureConstants(
    c_Cz=-1, c_Cw=-1, c_Dz=-1, c_Dw=-1, d_Cz=-1, d_Cw=-1, c1_C=-1, c1_D=1,
)
NON_DEFINITE_2 = StructureConstants(
    c_Cz=-1, c_Cw=-1, c_Dz=-1, c_Dw=-1, d_Cz=Fraction(-1, 2), d_Cw=-1, d_Dz=Fraction(1, 2),
    c1_C=-1, c1_D=1, dw_D=1,
)


def _bracket_polynomials(k):
    polys = []
    for _, (x, y), rhs in BRACKET_IDENTITIES:
        expr = OperatorExpr.bracket(x, y) - rhs
        for _, probe in PROBES:
            for _, g in apply_expr(expr, probe, k).items():
                polys.extend(e for e in map(sympy.expand, g.coeffs) if e != 0)
    return polys


def test_conditions_span_bracket_residuals_symbolically():
    """The 24 polynomials span exactly the coefficients of the bracket residuals."""
    syms = sympy.symbols(" ".join(StructureConstants.keys()))
    k = StructureConstants(*syms)
    brackets = _bracket_polynomials(k)
    conds = [sympy.expand(v) for v in condition_residuals(k).values()]
    monos = sorted({m for p in brackets + conds for m in sympy.Poly(p, *syms).as_dict()})

    def rows(ps):
        return sympy.Matrix([[sympy.Poly(p, *syms).as_dict().get(m, 0) for m in monos] for p in ps])

    rb, rc = rows(brackets).rank(), rows(conds).rank()
    assert rb == rc == 24
    assert rows(brackets).col_join(rows(conds)).rank() == 24


def test_kk_report():
    rep = evaluate_conditions(KK)
    assert rep.is_representation and rep.is_definite
    assert (rep.det1, rep.det2) == (0, 1)
    assert rep.residuals["xix"] == 0


def test_ber_report():
    rep = evaluate_conditions(BER)
    assert rep.is_representation and rep.is_definite
    # the first xxv matrix is diag(-1, 1) for this table
    assert (rep.det1, rep.det2) == (-1, 1)


def test_zero_report():
    rep = evaluate_conditions(StructureConstants())
    nonzero = {cid: r for cid, r in rep.residuals.items() if r != 0}
    assert nonzero == {"xix": -1, "xx": -1}
    assert not rep.is_representation
    assert rep.failing() == ["xix", "xx", "xxv"]


def test_report_json_shape():
    js = evaluate_conditions(KK).to_json()
    assert list(js["conditions"]) == list(CONDITION_IDS)
    assert js["xxv"] == {"det1": "0", "det2": "1"}
    assert js["is_representation"] is True and js["is_definite"] is True


@given(structure_constants)
def test_equivalence_on_grid(k):
    assert equivalence_check(k)


@pytest.mark.parametrize("seed", range(20))
def test_equivalence_on_valid_samples(seed):
    k = expand(sample_valid(seed))
    assert equivalence_check(k)
    assert evaluate_conditions(k).passes_all


def test_equivalence_edge_cases():
    assert equivalence_check(KK)
    assert equivalence_check(StructureConstants())


def test_even_kernel():
    ker = even_kernel(3)
    assert ker.dimension == 4
    assert ker.spans([monomial(0, 0), monomial(1, -1, CSTAR), monomial(-1, 1, DSTAR), monomial(0, 0, WEDGE)])
    assert not apply("A", monomial(1, -1, CSTAR))
    assert not apply("A", monomial(0, 0, WEDGE))
    with pytest.raises(ValueError):
        even_kernel(0)


@pytest.mark.parametrize("N", [2, 3, 4])
def test_even_kernel_window_independent(N):
    assert even_kernel(N).dimension == 4


@pytest.mark.parametrize("k", [KK, BER], ids=["kk", "ber"])
def test_invariant_sheaf_definite(k):
    ker = invariant_sheaf(k, 5)
    assert ker.dimension == 1 and ker.spans([monomial(0, 0)])


def test_wedge_is_never_invariant():
    for k in (KK, BER, expand(sample_valid(7))):
        assert apply("C", monomial(0, 0, WEDGE), k) or apply("D", monomial(0, 0, WEDGE), k)


def test_non_definite_witness():
    rep = evaluate_conditions(NON_DEFINITE)
    assert rep.is_representation and not rep.is_definite
    assert rep.failing() == ["xxv"]
    assert invariant_sheaf(NON_DEFINITE, 3).dimension >= 2


def test_xxv_iff_kernel_is_constants():
    cases = [expand(sample_valid(s)) for s in range(5)] + [KK, BER, NON_DEFINITE, NON_DEFINITE_2]
    for k in cases:
        rep = evaluate_conditions(k)
        assert rep.is_representation
        assert rep.is_definite == (invariant_sheaf(k, 2).dimension == 1)


def test_invariant_sheaf_requires_representation():
    with pytest.raises(NotARepresentation) as err:
        invariant_sheaf(StructureConstants(), 2)
    assert err.value.failing == ["xix", "xx"]
