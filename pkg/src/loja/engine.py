"""Exact Łojasiewicz exponent at infinity for polynomial maps of C^2."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .poly.gcd import gcd_free_basis, gcd_many
from .poly.multipoly import MultiPoly, product
from .poly.parse import parse_poly
from .poly.tower import TowerSplit
from .puiseux.branches import Branch, compose_deg, deg_phi, expand_branches, split_branch
from .puiseux.genericize import IDENTITY, GenericizeReport, genericize

NEG_INF = float("-inf")
Exponent = Union[Fraction, float]


class DegenerateCase(str, enum.Enum):
    NONE = "none"
    S_EMPTY = "S_empty"
    ALL_COMPONENTS_ZERO = "all_components_zero"
    COMMON_FACTOR = "common_factor"


@dataclass(frozen=True)
class MappingSpec:
    """A polynomial map ``F = (f_1, ..., f_m)`` in shared variables."""

    variables: Tuple[str, ...]
    components: Tuple[MultiPoly, ...]

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a mapping needs at least one component")
        for c in self.components:
            if c.variables != self.variables:
                raise ValueError("all components must share the variable list")

    @classmethod
    def from_strings(cls, components: Sequence[str], variables=("x", "y")):
        variables = tuple(variables)
        return cls(variables, tuple(parse_poly(s, variables) for s in components))

    @property
    def nvars(self):
        return len(self.variables)

    def degree(self):
        return max(c.total_degree() for c in self.components)

    def __str__(self):
        return "(" + ", ".join(str(c) for c in self.components) + ")"


@dataclass(frozen=True)
class BranchVerdict:
    """Per-branch data: ``lambda = deg(F o Phi) / deg Phi``."""

    branch: Branch
    deg_F_compose: Union[int, float]
    deg_phi: int
    lam: Exponent
    component_degrees: Tuple[Union[int, float], ...] = ()


@dataclass(frozen=True)
class ExponentReport:
    exponent: Exponent
    branch_verdicts: Tuple[BranchVerdict, ...]
    witness: Optional[int]
    proper: bool
    transform: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    degenerate_case: DegenerateCase
    mapping: Optional[MappingSpec] = None
    genericize_report: Optional[GenericizeReport] = None
    transformed_components: Tuple[MultiPoly, ...] = field(default=(), repr=False)

    @property
    def witness_verdict(self):
        return None if self.witness is None else self.branch_verdicts[self.witness]


def _lambda(q, p):
    if q == NEG_INF:
        return NEG_INF
    return Fraction(q, p)


def per_branch_lambda(components: Sequence[MultiPoly], b: Branch, ambient_deg: int,
                      fast_path: bool = True) -> BranchVerdict:
    """Verdict for one branch.  May raise TowerSplit (caller splits the branch)."""
    for c in components:
        if c.variables != b.source_factor.variables:
            raise ValueError("coordinate mismatch between mapping and branch")
    degs = tuple(compose_deg(c, b, ambient_deg, fast_path=fast_path) for c in components)
    q = max(degs)
    p = deg_phi(b)
    return BranchVerdict(b, q, p, _lambda(q, p), degs)


def _degenerate(F, exponent, case):
    return ExponentReport(exponent, (), None, False, IDENTITY, case, F)


def lojasiewicz_exponent(F: MappingSpec, seed: int = 0, fast_path: bool = True,
                         constants: bool = False) -> ExponentReport:
    """Exact exponent ``min_i deg(F o Phi_i) / deg Phi_i`` over branches at infinity.

    Parameters
    ----------
    F : MappingSpec
        Two variables, at least one component.
    seed : int
        Selects the coordinate change used for the branch expansion.  The
        exponent does not depend on it.
    fast_path : bool
        Allow the divisibility shortcut in composition degrees.
    constants : bool
        Also estimate comparability constants for the transform.
    """
    if F.nvars != 2:
        raise ValueError("the exact engine handles maps of two variables only")
    comps = [c for c in F.components if not c.is_zero()]
    if not comps:
        return _degenerate(F, NEG_INF, DegenerateCase.ALL_COMPONENTS_ZERO)
    nonconst = [c for c in comps if not c.is_constant()]
    if not nonconst:
        return _degenerate(F, Fraction(0), DegenerateCase.S_EMPTY)
    if not gcd_many(comps).is_constant():
        return _degenerate(F, NEG_INF, DegenerateCase.COMMON_FACTOR)

    f = product(nonconst)
    grep, _ = genericize(f, seed, constants=constants)
    M = grep.transform
    tcomps = tuple(c.linear_change(M) for c in comps)
    basis = gcd_free_basis([c for c in tcomps if not c.is_constant()])

    verdicts: List[BranchVerdict] = []
    for h in basis:
        amb = h.total_degree()
        work = deque(expand_branches(h, check_squarefree=False))
        while work:
            b = work.popleft()
            try:
                verdicts.append(per_branch_lambda(tcomps, b, amb, fast_path))
            except TowerSplit as err:
                if err.level > b.tower.depth:
                    raise
                work.extendleft(reversed(split_branch(b, err)))

    lams = [v.lam for v in verdicts]
    exponent = min(lams)
    witness = lams.index(exponent)
    return ExponentReport(exponent, tuple(verdicts), witness, exponent > 0, M,
                          DegenerateCase.NONE, F, grep, tcomps)


def is_proper(F: MappingSpec, seed: int = 0):
    """``(proper, exponent)``; proper exactly when the exponent is positive."""
    r = lojasiewicz_exponent(F, seed)
    return r.proper, r.exponent


def branch_point(report: ExponentReport, index: int, t, prec: int = 256, normalized=True):
    """Point of the given branch at parameter t, in the original coordinates.

    With ``normalized`` the parameter is rescaled so that ``x = t^p`` in the
    transformed coordinates.  Returns ``(z, F(z))`` as lists of acb balls.
    """
    from flint import acb, ctx

    from .poly.ball import eval_ball, to_acb

    v = report.branch_verdicts[index]
    b = v.branch
    with ctx.workprec(prec):
        t = acb(t)
        if normalized:
            kappa = b.kappa.enclosure(prec)
            t = t * (1 / kappa) ** (acb(1) / b.ramification)
        x, y = b.evaluate(t, prec)
        M = report.transform
        z = [to_acb(M[i][0]) * x + to_acb(M[i][1]) * y for i in range(2)]
        vals = [eval_ball(c, z, prec) for c in report.mapping.components]
    return z, vals
