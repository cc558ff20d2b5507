"""Places at infinity of a plane curve via rational Newton-Puiseux expansions.

For a y-monic squarefree ``h(x, y)`` put ``X = 1/x``.  Each place at
infinity with ``x -> oo`` is described by

    X = gamma * s^P,       y = sum_e A[e] s^e + B s^E W(s),

with ``W`` a power series, ``W(0) = 0``, and ``t = 1/s`` as the branch
parameter, so that ``x = gamma^-1 t^P``.  Edge equations are solved without
adjoining q-th roots (the substitution ``s = xi^v s1^q``,
``Y = s1^m (xi^u + Y1)`` with ``u q - v m = 1``), so one expansion over a
tower of degree k stands for k conjugate places.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from flint import fmpq_poly

from ..poly import upoly
from ..poly.multipoly import MultiPoly
from ..poly.tower import (QQ, AlgebraicNumber, FieldTower, TowerSplit, UniPolyExt, ipow,
                          tower_extend)
from . import newton as nw

NEG_INF = float("-inf")


class PreconditionError(ValueError):
    pass


# -- lazily extended regular part -------------------------------------------

class _Expansion:
    """Holds ``W`` for one place; extends it on demand by Newton steps."""

    def __init__(self, tower, H, exact):
        self.tower = tower
        self.H = H
        self.exact = exact          # W == 0 identically
        self._cols = None
        self._W = [tower.ops.zero]  # known mod s^len
        self._lock = threading.Lock()

    @property
    def known(self):
        return math.inf if self.exact else len(self._W)

    def series(self, n):
        """W mod s^n (raw coefficients)."""
        F = self.tower.ops
        if self.exact:
            return [F.zero] * n
        with self._lock:
            if self._cols is None:
                self._cols = nw.columns(F, self.H)
            while len(self._W) < n:
                old = len(self._W)
                new = min(2 * old, max(n, old + 1))
                self._W = nw.newton_lift(F, self._cols, self._W, old, new)
            return list(self._W[:n])

    def project(self, tower, target, level):
        e = _Expansion(target, {k: tower.project(c, target, level) for k, c in self.H.items()},
                       self.exact)
        e._W = [tower.project(c, target, level) for c in self._W]
        return e


# -- the branch value ---------------------------------------------------------

@dataclass(frozen=True)
class Branch:
    """A class of conjugate places at infinity of ``source_factor``.

    The parametrization is ``x = kappa * t^ramification``,
    ``y = sum c_e t^e`` over the terms of :attr:`series`.  ``kappa`` is a
    nonzero constant of the tower; it does not affect any degree.

    Attributes
    ----------
    ramification : int
    tower : FieldTower
    source_factor : MultiPoly
        The squarefree polynomial this branch was expanded from.
    depth : int
        Number of known coefficients of the regular part.
    """

    ramification: int
    tower: FieldTower
    source_factor: MultiPoly
    gamma: object                      # raw; X = gamma s^P
    A: Tuple[Tuple[int, object], ...]  # (s-exponent, raw), increasing
    B: object
    E: int
    expansion: _Expansion = field(compare=False, repr=False)
    depth: int = 1

    # -- derived quantities -------------------------------------------

    @property
    def conjugacy_size(self):
        return self.tower.degree

    @property
    def exact(self):
        return self.expansion.exact

    @property
    def kappa(self):
        return AlgebraicNumber(self.tower, self.tower.ops.inv(self.gamma))

    @property
    def lead_exponent(self):
        """Order of y in t (``-inf`` when y is identically zero)."""
        return -self.A[0][0] if self.A else NEG_INF

    @property
    def deg_phi(self):
        return deg_phi(self)

    @property
    def truncation_exponent(self):
        """Terms of y with t-exponent above this value are exact."""
        if self.exact:
            return NEG_INF
        return -(self.E + self.depth)

    def _y_terms(self, n):
        F = self.tower.ops
        terms: Dict[int, object] = {e: c for e, c in self.A}
        if not self.exact:
            W = self.expansion.series(n)
            for k, w in enumerate(W):
                if F.isnull(w):
                    continue
                c = F.mul(self.B, w)
                e = self.E + k
                terms[e] = F.add(terms[e], c) if e in terms else c
        return terms

    @property
    def series(self):
        """``[(t-exponent, AlgebraicNumber), ...]`` with decreasing exponents."""
        F = self.tower.ops
        terms = self._y_terms(self.depth)
        out = [(-e, AlgebraicNumber(self.tower, c))
               for e, c in sorted(terms.items()) if not F.isnull(c)]
        return out

    def leading_coefficients(self):
        """``(kappa, leading coefficient of y or None)`` as AlgebraicNumbers."""
        lead = AlgebraicNumber(self.tower, self.A[0][1]) if self.A else None
        return self.kappa, lead

    def evaluate(self, t, prec=128):
        """Enclosures of ``(x(t), y(t))`` from the known terms (acb balls)."""
        from flint import acb, ctx

        gens = self.tower.enclosures(prec)
        with ctx.workprec(prec):
            t = acb(t)
            x = self.tower.evaluate(self.tower.ops.inv(self.gamma), prec, gens) * t ** self.ramification
            y = acb(0)
            for e, c in self._y_terms(self.depth).items():
                y += self.tower.evaluate(c, prec, gens) * t ** (-e)
        return x, y

    def __repr__(self):
        return (f"Branch(p={self.ramification}, deg_phi={self.deg_phi}, "
                f"conjugates={self.conjugacy_size}, source={self.source_factor})")


def deg_phi(b: Branch) -> int:
    """``max(p, order of y in t)``."""
    if not b.A:
        return b.ramification
    return max(b.ramification, -b.A[0][0])


def extend_branch(b: Branch, target_exponent) -> Branch:
    """Same branch with y exact for all t-exponents above ``target_exponent``."""
    if b.exact:
        return b
    need = -target_exponent - b.E
    if need <= b.depth:
        return b
    b.expansion.series(need)
    return replace(b, depth=need)


def split_branch(b: Branch, err: TowerSplit) -> List[Branch]:
    """Project a branch onto both halves of a split tower level."""
    T = b.tower
    out = []
    for part in (err.factor, err.cofactor):
        S = T.split(err.level, part)
        pr = lambda c: T.project(c, S, err.level)  # noqa: E731
        out.append(Branch(
            ramification=b.ramification, tower=S, source_factor=b.source_factor,
            gamma=pr(b.gamma), A=tuple((e, pr(c)) for e, c in b.A), B=pr(b.B), E=b.E,
            expansion=b.expansion.project(T, S, err.level), depth=b.depth))
    return out


# -- expansion ----------------------------------------------------------------

@dataclass
class _State:
    tower: FieldTower
    H: dict
    P: int
    gamma: object
    A: tuple
    B: object
    E: int
    xi: object = None   # root of the edge polynomial being processed

    def _map(self, tower, fn):
        return _State(tower, {k: fn(c) for k, c in self.H.items()}, self.P, fn(self.gamma),
                      tuple((e, fn(c)) for e, c in self.A), fn(self.B), self.E,
                      None if self.xi is None else fn(self.xi))

    def lift(self, new_tower):
        d = self.tower.depth
        return self._map(new_tower, lambda c: new_tower.lift(c, d))

    def project(self, target, level):
        T = self.tower
        return self._map(target, lambda c: T.project(c, target, level))


def _to_infinity(h: MultiPoly, tower) -> dict:
    D = h.degree_in(0)
    F = tower.ops
    return {(D - a, b): F.from_rational(c) for (a, b), c in h.items()}


def _factor_edge(tower, poly):
    """[(monic factor, multiplicity)] of an edge polynomial (raw, low first)."""
    F = tower.ops
    if tower.depth == 0:
        lead, facs = fmpq_poly(list(poly)).factor()
        out = []
        for fac, mult in facs:
            coeffs = [QQ.from_rational(c) for c in fac.coeffs()]
            out.append((upoly.monic(QQ, coeffs), int(mult)))
        return out
    return upoly.squarefree_decomposition(F, list(poly))


def _make_branch(st: _State, h, exact, H=None):
    return Branch(ramification=st.P, tower=st.tower, source_factor=h, gamma=st.gamma,
                  A=st.A, B=st.B, E=st.E,
                  expansion=_Expansion(st.tower, st.H if H is None else H, exact))


def _step_edges(st: _State, polygon, h, r=None):
    """Process all edges of a Newton polygon; returns branches."""
    out = []
    for edge in polygon.edges:
        out.extend(_guarded(_edge_branches, st, edge, h))
    return out


def _guarded(fn, st: _State, *args):
    """Run ``fn(st, ...)``; on a split of an existing level, run on both halves."""
    try:
        return fn(st, *args)
    except TowerSplit as err:
        if err.level > st.tower.depth:
            raise
        out = []
        for part in (err.factor, err.cofactor):
            S = st.tower.split(err.level, part)
            out.extend(_guarded(fn, st.project(S, err.level), *args))
        return out


def _edge_branches(st: _State, edge, h):
    out = []
    for psi, mult in _factor_edge(st.tower, edge.poly):
        out.extend(_guarded(_root_branches, st, edge, psi, mult, h))
    return out


def _root_branches(st: _State, edge, psi, mult, h):
    T = st.tower
    new_tower, xi = tower_extend(T, UniPolyExt.from_raw(T, list(psi)))
    if new_tower is not T:
        st = st.lift(new_tower)
    st = replace(st, xi=xi.raw)
    return _guarded(_substitute, st, edge, mult, h)


def _substitute(st: _State, edge, mult, h):
    F = st.tower.ops
    xi = st.xi
    q, m = edge.q, edge.m
    v = (-pow(m, -1, q)) % q if q > 1 else 0
    u = (1 + v * m) // q
    H1 = nw.substitute_edge(F, st.H, edge, xi, u, v)
    xv = ipow(F, xi, v) if v else F.one
    new_A = tuple((q * e, F.mul(c, ipow(F, xv, e))) for e, c in st.A)
    BxvE = F.mul(st.B, ipow(F, xv, st.E))
    new_A = new_A + ((q * st.E + m, F.mul(BxvE, ipow(F, xi, u))),)
    st1 = _State(st.tower, H1, q * st.P, F.mul(st.gamma, ipow(F, xv, st.P)), new_A,
                 BxvE, q * st.E + m)
    return _guarded(_descend, st1, mult, h)


def _descend(st: _State, r, h):
    """Roots Y -> 0 of st.H, of which there are r."""
    F = st.tower.ops
    out = []
    H = st.H
    if not nw.has_y_free_part(F, H):
        out.append(_make_branch(st, h, exact=True))
        H = nw.divide_by_y(H)
        r -= 1
        if r == 0:
            return out
        st = replace(st, H=H)
    if r == 1:
        out.append(_make_branch(st, h, exact=False))
        return out
    polygon = nw.newton_polygon(F, H, jmax=r)
    out.extend(_step_edges(st, polygon, h))
    return out


def _expand(st: _State, h):
    F = st.tower.ops
    out = []
    H = st.H
    if not nw.has_y_free_part(F, H):
        # y divides h: the place y = 0
        out.append(_make_branch(st, h, exact=True))
        H = nw.divide_by_y(H)
        st = replace(st, H=H)
    polygon = nw.newton_polygon(F, H)
    out.extend(_step_edges(st, polygon, h))
    return out


def check_expandable(h: MultiPoly):
    if h.nvars != 2:
        raise PreconditionError("expansion needs a bivariate polynomial")
    if h.is_zero() or h.is_constant():
        raise PreconditionError("expansion needs a nonconstant polynomial")
    d = h.degree_in(1)
    lc = h.coeffs_in(1).get(d)
    if d <= 0 or not lc.is_constant():
        raise PreconditionError(
            "leading coefficient in y must be a nonzero constant "
            "(apply genericize first)")


def expand_branches(h: MultiPoly, check_squarefree: bool = True) -> List[Branch]:
    """Branches at infinity of ``{h = 0}``, one per class of conjugate places.

    Parameters
    ----------
    h : MultiPoly
        Squarefree bivariate polynomial whose leading coefficient in the
        second variable is a nonzero constant (true for degree-regular h).

    Returns
    -------
    list of Branch
        Deterministic order: by Newton polygon edge, then by factor.
    """
    check_expandable(h)
    if check_squarefree:
        from ..poly.gcd import squarefree_part
        if squarefree_part(h) != h.primitive():
            raise PreconditionError("polynomial is not squarefree")
    T = FieldTower.rationals()
    st = _State(T, _to_infinity(h, T), 1, QQ.one, (), QQ.one, 0)
    return _expand(st, h)


# -- composition degrees ----------------------------------------------------

def compose_series(g: MultiPoly, b: Branch, n: int):
    """First n coefficients (in s) of ``V = gamma^dg s^(dg*deg_phi) * g(Phi)``.

    ``deg(g o Phi) = dg*deg_phi - ord_s V``.  Returns ``(dg, dphi, coeffs)``
    with raw coefficients, exact mod s^n.
    """
    T = b.tower
    F = T.ops
    dg = g.total_degree()
    dphi = deg_phi(b)
    P = b.ramification
    if b.A:
        E0 = b.A[0][0]
        # U = s^-E0 y, a power series with unit constant term
        U = [F.zero] * n
        for e, c in b._y_terms(max(0, n + E0 - b.E)).items():
            k = e - E0
            if k < n:
                U[k] = F.add(U[k], c)
    else:
        E0 = 0
        U = [F.zero] * n
    gpow = {}
    ginv = F.inv(b.gamma)
    by_b: Dict[int, List] = {}
    for (a, bb), c in g.items():
        by_b.setdefault(bb, []).append((a, c))
    V = [F.zero] * n
    Upow = [F.one] + [F.zero] * (n - 1)
    bmax = max(by_b)
    for bb in range(bmax + 1):
        if bb in by_b:
            for a, c in by_b[bb]:
                shift = dg * dphi - P * a + bb * E0
                if shift >= n:
                    continue
                if a not in gpow:
                    gpow[a] = ipow(F, b.gamma, dg - a) if dg >= a else ipow(F, ginv, a - dg)
                coef = F.mul(F.from_rational(c), gpow[a])
                for k in range(n - shift):
                    if not F.isnull(Upow[k]):
                        V[k + shift] = F.add(V[k + shift], F.mul(coef, Upow[k]))
        if bb < bmax:
            Upow = nw.ser_mul(F, Upow, U, n)
    return dg, dphi, V


def compose_deg(g: MultiPoly, b: Branch, ambient_deg: int, fast_path: bool = True):
    """Exact ``deg_t g(Phi(t))``, or ``-inf`` when g vanishes on the branch.

    The branch is extended lazily.  If the composed series is zero through
    s-order ``deg(g) * ambient_deg`` the composition vanishes identically,
    by the intersection-number bound against the degree ``ambient_deg``
    defining polynomial.
    """
    if g.variables != b.source_factor.variables:
        raise ValueError("coordinate mismatch between polynomial and branch")
    if g.is_zero():
        return NEG_INF
    if g.is_constant():
        return 0
    if fast_path and b.source_factor.divides(g):
        return NEG_INF
    F = b.tower.ops
    dg = g.total_degree()
    bound = dg * ambient_deg + 1
    n = min(8, bound)
    while True:
        _, dphi, V = compose_series(g, b, n)
        for k, c in enumerate(V):
            if not F.iszero(c):
                return dg * dphi - k
        if n >= bound:
            return NEG_INF
        n = min(2 * n, bound)
