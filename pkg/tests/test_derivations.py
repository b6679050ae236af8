import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from superlab.algebra import CSTAR, DSTAR, WEDGE, SuperFunction, monomial
from superlab.derivations import (
    BER,
    KK,
    PRESETS,
    BasisDerivation,
    OperatorExpr,
    StructureConstants,
    apply,
    apply_expr,
    check_bracket_relations,
    parity_of,
    supercommutator,
)

from conftest import exponents, homogeneous_superfunctions, structure_constants, superfunctions

GENERATORS = (
    ("f_{1,0}", monomial(1, 0), 0),
    ("f_{0,1}", monomial(0, 1), 0),
    ("f_{-1,0}", monomial(-1, 0), 0),
    ("f_{0,-1}", monomial(0, -1), 0),
    ("C*", monomial(0, 0, CSTAR), 1),
    ("D*", monomial(0, 0, DSTAR), 1),
)


def leibniz_eval(X, word, k):
    """X on a product of generators, using only X's values on generators."""
    on_gen = {name: apply(X, f, k) for name, f, _ in GENERATORS}
    table = {name: (f, p) for name, f, p in GENERATORS}
    px = parity_of(X)

    def go(w):
        if not w:
            return SuperFunction()
        f, p = table[w[0]]
        rest = monomial(0, 0)
        for name in w[1:]:
            rest = rest * table[name][0]
        return on_gen[w[0]] * rest + (f * go(w[1:])).scale((-1) ** (px * p))

    return go(word)


def word_product(word):
    out = monomial(0, 0)
    for name in word:
        out = out * dict((n, f) for n, f, _ in GENERATORS)[name]
    return out


def test_examples():
    assert apply("A", monomial(3, -2)) == monomial(3, -2).scale(3)
    assert apply("C", monomial(1, 0), BER) == monomial(1, 0, DSTAR)
    assert apply("C", monomial(0, 0, CSTAR), KK) == monomial(0, 0).scale(-1)


def test_even_action_on_forms():
    assert apply("A", monomial(0, 0, CSTAR)) == monomial(0, 0, CSTAR).scale(-1)
    assert apply("B", monomial(0, 0, CSTAR)) == monomial(0, 0, CSTAR)
    assert apply("A", monomial(0, 0, DSTAR)) == monomial(0, 0, DSTAR)
    assert apply("B", monomial(0, 0, DSTAR)) == monomial(0, 0, DSTAR).scale(-1)
    assert not apply("A", monomial(0, 0, WEDGE))
    assert not apply("B", monomial(0, 0, WEDGE))


@pytest.mark.parametrize("X,ref", [("A", "A"), ("B", "B")])
def test_planedness(X, ref):
    # X₀.α = α∘[·, X₀]: [C, A] = -C, [D, A] = D, [C, B] = C, [D, B] = -D
    # so X₀.C* pairs C* with the C-component of [·, X₀]
    brackets = {("C", "A"): -1, ("D", "A"): 1, ("C", "B"): 1, ("D", "B"): -1}
    for form, gen in ((CSTAR, "C"), (DSTAR, "D")):
        assert apply(X, monomial(0, 0, form)) == monomial(0, 0, form).scale(brackets[(gen, ref)])


@given(structure_constants, st.sampled_from("ABCD"), homogeneous_superfunctions(2), superfunctions(2))
def test_leibniz(k, X, fp, g):
    f, p = fp
    lhs = apply(X, f * g, k)
    rhs = apply(X, f, k) * g + (f * apply(X, g, k)).scale((-1) ** (parity_of(X) * p))
    assert lhs == rhs


@given(structure_constants, exponents)
def test_weight_support(k, nm):
    n, m = nm
    c_img = apply("C", monomial(n, m), k)
    for (a, b), g in c_img.items():
        assert ((a, b) == (n + 2, m - 2) and g == CSTAR.scale(g[1])) or (
            (a, b) == (n, m) and g == DSTAR.scale(g[2]))
    d_img = apply("D", monomial(n, m), k)
    for (a, b), g in d_img.items():
        assert ((a, b) == (n, m) and g == CSTAR.scale(g[1])) or (
            (a, b) == (n - 2, m + 2) and g == DSTAR.scale(g[2]))


words = st.lists(st.sampled_from([name for name, _, _ in GENERATORS]), min_size=1, max_size=6)


@given(structure_constants, st.sampled_from("ABCD"), words)
def test_generators_determine_derivation(k, X, word):
    assert apply(X, word_product(word), k) == leibniz_eval(X, word, k)


def test_supercommutator_examples():
    f = monomial(2, -1, CSTAR) + monomial(0, 3)
    assert not supercommutator("A", "B", f)
    assert supercommutator("C", "D", monomial(1, 0), KK) == monomial(1, 0)
    assert supercommutator("C", "D", monomial(1, 0), BER) == monomial(1, 0)
    assert supercommutator("C", "C", f, BER) == apply("C", apply("C", f, BER), BER).scale(2)


def test_basis_derivation_carries_constants():
    C = BasisDerivation("C", BER)
    assert C.parity == 1
    assert apply(C, monomial(1, 0)) == monomial(1, 0, DSTAR)
    with pytest.raises(ValueError):
        apply("C", monomial(1, 0))
    with pytest.raises(ValueError):
        apply("E", monomial(1, 0))


def test_operator_words_capped():
    with pytest.raises(ValueError):
        OperatorExpr(((Fraction(1), ("A", "B", "C")),))
    expr = OperatorExpr.bracket("C", "D") - OperatorExpr.gen("A") - OperatorExpr.gen("B")
    assert not apply_expr(expr, monomial(3, 1, CSTAR), KK)


@pytest.mark.parametrize("name", ["kk", "ber"])
def test_presets_pass_brackets(name):
    assert check_bracket_relations(PRESETS[name]).passed


def test_zero_constants_fail_cd_on_first_probe():
    report = check_bracket_relations(StructureConstants())
    cd = report["[C,D]=A+B"]
    assert not cd.passed and cd.failing_probe == "f_{1,0}"
    assert [c.name for c in report.failures()] == ["[C,D]=A+B"]


def test_json_roundtrip_and_errors():
    assert StructureConstants.from_json(KK.to_json()) == KK
    with pytest.raises(ValueError):
        StructureConstants.from_json({"c_Cz": "0"})
    bad = dict(KK.to_json(), c_Cz="2/4")
    with pytest.raises(ValueError):
        StructureConstants.from_json(bad)


def test_table_values():
    h = Fraction(-1, 2)
    assert (KK.M_C, KK.M_D, KK.M_1) == (((0, h), (0, h)), ((h, 0), (h, 0)), ((-1, 0), (0, -1)))
    assert (BER.M_C, BER.M_D, BER.M_1) == (((0, 1), (0, 0)), ((0, 0), (1, 0)), ((1, 0), (0, 1)))


def test_random_products_reproducible():
    rng = random.Random(3)
    word = [rng.choice(GENERATORS)[0] for _ in range(5)]
    assert apply("D", word_product(word), KK) == leibniz_eval("D", word, KK)
