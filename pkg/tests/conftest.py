"""Shared hypothesis strategies."""

import sys
from fractions import Fraction

from hypothesis import settings
from hypothesis import strategies as st

from superlab.algebra import ExtGrassmannElement, GrassmannElement, SuperFunction
from superlab.derivations import StructureConstants

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

GRID = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1))

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
nonzero_fractions = fractions.filter(lambda q: q != 0)
grid_values = st.sampled_from(GRID)


def grassmann(coeffs=fractions):
    return st.tuples(*([coeffs] * 4)).map(lambda c: GrassmannElement(*c))


def ext_grassmann(coeffs=fractions):
    return st.tuples(*([coeffs] * 8)).map(lambda c: ExtGrassmannElement(*c))


@st.composite
def homogeneous_grassmann(draw, cls=GrassmannElement, size=4):
    parity = draw(st.integers(0, 1))
    coeffs = [draw(fractions) if bin(s).count("1") % 2 == parity else 0 for s in range(size)]
    return cls(*coeffs), parity


exponents = st.tuples(st.integers(-3, 3), st.integers(-3, 3))


def superfunctions(max_terms=3):
    return st.lists(st.tuples(exponents, grassmann()), max_size=max_terms).map(SuperFunction)


@st.composite
def homogeneous_superfunctions(draw, max_terms=3):
    parity = draw(st.integers(0, 1))
    terms = []
    for _ in range(draw(st.integers(0, max_terms))):
        g = GrassmannElement(
            *(draw(fractions) if bin(s).count("1") % 2 == parity else 0 for s in range(4))
        )
        terms.append((draw(exponents), g))
    return SuperFunction(terms), parity


structure_constants = st.tuples(*([grid_values] * 16)).map(StructureConstants.from_values)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in mod.CRITERIA:
        if num in mod.RESULTS:
            terminalreporter.write_line(mod._line(num))
