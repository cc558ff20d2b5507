"""Exact polynomial arithmetic: rationals, towers, parsing, gcds, balls."""

from .ball import eval_ball
from .gcd import gcd_bivariate, gcd_free_basis, gcd_many, squarefree_part
from .multipoly import MultiPoly, SingularMatrixError, VariableMismatch, determinant, serialize
from .parse import NonRationalLiteralError, ParseError, UnknownVariableError, parse_poly
from .tower import (AlgebraicNumber, FieldTower, NotSquarefreeError, TowerSplit, UniPolyExt,
                    tower_extend)

__all__ = [
    "AlgebraicNumber", "FieldTower", "MultiPoly", "NonRationalLiteralError",
    "NotSquarefreeError", "ParseError", "SingularMatrixError", "TowerSplit",
    "UniPolyExt", "UnknownVariableError", "VariableMismatch", "determinant",
    "eval_ball", "gcd_bivariate", "gcd_free_basis", "gcd_many", "parse_poly",
    "serialize", "squarefree_part", "tower_extend",
]
