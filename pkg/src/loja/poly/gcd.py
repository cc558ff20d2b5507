"""Bivariate gcd, squarefree part and gcd-free bases over Q.

Polynomials are viewed in ``Q[x][y]`` (``x`` the first declared variable)
and the gcd is computed by a primitive polynomial remainder sequence, with
contents in ``Q[x]`` handled by the univariate Euclidean algorithm.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List

from . import upoly
from .multipoly import MultiPoly
from .tower import FRAC

Qx = List[Fraction]


def _to_rec(p: MultiPoly) -> Dict[int, Qx]:
    out: Dict[int, Qx] = {}
    for (a, b), c in p.items():
        row = out.setdefault(b, [])
        if len(row) <= a:
            row.extend([Fraction(0)] * (a + 1 - len(row)))
        row[a] = c
    return {k: upoly.strip_null(FRAC, v) for k, v in out.items()}


def _from_rec(rec: Dict[int, Qx], variables) -> MultiPoly:
    terms = {}
    for b, row in rec.items():
        for a, c in enumerate(row):
            if c:
                terms[(a, b)] = c
    return MultiPoly._raw(tuple(variables), terms)


def _content(rec) -> Qx:
    g: Qx = []
    for row in rec.values():
        g = upoly.gcd(FRAC, g, row)
        if len(g) == 1:
            break
    return g


def _divide_content(rec, c):
    if len(c) == 1:
        return {k: upoly.scale(FRAC, v, 1 / c[0]) for k, v in rec.items()}
    return {k: upoly.exact_quo(FRAC, v, c) for k, v in rec.items()}


def _prem(A, B):
    """Pseudo-remainder of A by B with respect to y."""
    dB = max(B)
    lcB = B[dB]
    A = dict(A)
    while A and max(A) >= dB:
        dA = max(A)
        lcA = A[dA]
        shift = dA - dB
        new = {}
        for k, v in A.items():
            new[k] = upoly.mul(FRAC, lcB, v)
        for k, v in B.items():
            kk = k + shift
            new[kk] = upoly.sub(FRAC, new.get(kk, []), upoly.mul(FRAC, lcA, v))
        A = {k: v for k, v in new.items() if v}
    return A


def _check2(a, b=None):
    if a.nvars != 2:
        raise ValueError("bivariate polynomials required")
    if b is not None and a.variables != b.variables:
        raise ValueError("variable lists differ")


def gcd_bivariate(a: MultiPoly, b: MultiPoly) -> MultiPoly:
    """Greatest common divisor, scaled so its canonical leading coefficient is 1."""
    _check2(a, b)
    if a.is_zero() and b.is_zero():
        raise ValueError("gcd of two zero polynomials is undefined")
    if a.is_zero():
        return b.primitive()
    if b.is_zero():
        return a.primitive()
    A, B = _to_rec(a), _to_rec(b)
    ca, cb = _content(A), _content(B)
    cont = upoly.gcd(FRAC, ca, cb)
    A, B = _divide_content(A, ca), _divide_content(B, cb)
    if max(A) < max(B):
        A, B = B, A
    while B and max(B) > 0:
        R = _prem(A, B)
        A = B
        if not R:
            B = {}
            break
        B = _divide_content(R, _content(R))
    if B:
        # a nonzero remainder of y-degree 0: the primitive parts are coprime
        A = {0: [Fraction(1)]}
    g = {k: upoly.mul(FRAC, v, cont) for k, v in A.items()}
    return _from_rec(g, a.variables).primitive()


def gcd_many(polys) -> MultiPoly:
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        raise ValueError("gcd of zero polynomials is undefined")
    g = polys[0].primitive()
    for p in polys[1:]:
        if g.is_constant():
            break
        g = gcd_bivariate(g, p)
    return g


def squarefree_part(p: MultiPoly) -> MultiPoly:
    """Product of the distinct irreducible factors of p, normalized."""
    _check2(p)
    if p.is_zero():
        raise ValueError("squarefree part of the zero polynomial")
    if p.is_constant():
        return MultiPoly.constant(p.variables, 1)
    g = gcd_many([p, p.diff(0), p.diff(1)])
    return p.divide_exact(g).primitive()


def gcd_free_basis(polys) -> List[MultiPoly]:
    """Pairwise coprime squarefree polynomials with the same joint zero set.

    The order is deterministic: it follows the input order, with splits
    placed where the split element stood.
    """
    basis: List[MultiPoly] = []
    for p in polys:
        if p.is_constant():
            continue
        p = squarefree_part(p)
        new_basis = []
        for b in basis:
            if p.is_constant():
                new_basis.append(b)
                continue
            g = gcd_bivariate(p, b)
            if g.is_constant():
                new_basis.append(b)
                continue
            rest = b.divide_exact(g).primitive()
            new_basis.append(g)
            if not rest.is_constant():
                new_basis.append(rest)
            p = p.divide_exact(g).primitive()
        if not p.is_constant():
            new_basis.append(p)
        basis = new_basis
    return basis
