"""Branches at infinity of plane curves and composition degrees."""

from .branches import (Branch, PreconditionError, compose_deg, compose_series, deg_phi,
                       expand_branches, extend_branch, split_branch)
from .genericize import GenericizeReport, comparability_constants, genericize
from .newton import NewtonPolygonInf, newton_polygon

__all__ = [
    "Branch", "GenericizeReport", "NewtonPolygonInf", "PreconditionError",
    "comparability_constants", "compose_deg", "compose_series", "deg_phi",
    "expand_branches", "extend_branch", "genericize", "newton_polygon", "split_branch",
]
