"""Exact computer algebra for left-regular structures of gl(1|1) over (K×)²."""

from .algebra import ExtGrassmannElement, GrassmannElement, SuperFunction, monomial
from .berezin import derive_ber
from .classification import ReducedParams, expand, lemma_scan, reduce, sample_valid, variety_jacobian_rank
from .conditions import evaluate_conditions, even_kernel, invariant_sheaf
from .derivations import BER, KK, StructureConstants, apply, check_bracket_relations
from .isomorphism import AutomorphismParams, find_isomorphism, orbit_tangent_rank, transform
from .kostant import derive_kk
from .scalars import DualNumber, GaussianRational, format_scalar, parse_scalar

__version__ = "0.1.0"

__all__ = [
    "AutomorphismParams",
    "BER",
    "DualNumber",
    "ExtGrassmannElement",
    "GaussianRational",
    "GrassmannElement",
    "KK",
    "ReducedParams",
    "StructureConstants",
    "SuperFunction",
    "apply",
    "check_bracket_relations",
    "derive_ber",
    "derive_kk",
    "evaluate_conditions",
    "even_kernel",
    "expand",
    "find_isomorphism",
    "format_scalar",
    "invariant_sheaf",
    "lemma_scan",
    "monomial",
    "orbit_tangent_rank",
    "parse_scalar",
    "reduce",
    "sample_valid",
    "transform",
    "variety_jacobian_rank",
]
