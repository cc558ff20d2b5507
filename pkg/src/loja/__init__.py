"""Łojasiewicz exponent at infinity of polynomial maps.

Exact computation for maps of C^2 through branches at infinity of the zero
set of the product of components, plus a numeric estimator for any number
of variables.
"""

from .engine import (BranchVerdict, DegenerateCase, ExponentReport, MappingSpec, is_proper,
                     lojasiewicz_exponent, per_branch_lambda)
from .estimator import (EscapeWitness, EstimateReport, RadiusLadder, SlopeFit, escape_search,
                        estimate_exponent, lemma2_check, sample_S_min, sphere_min)
from .poly import MultiPoly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "BranchVerdict", "DegenerateCase", "EscapeWitness", "EstimateReport", "ExponentReport", "MappingSpec",
    "MultiPoly", "RadiusLadder", "SlopeFit", "escape_search", "estimate_exponent", "is_proper", "lemma2_check",
    "lojasiewicz_exponent", "parse_poly", "per_branch_lambda", "sample_S_min", "sphere_min",
]
