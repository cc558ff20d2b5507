"""Certified complex-ball evaluation (Arb balls via python-flint)."""

from __future__ import annotations

from fractions import Fraction

from flint import acb, arb, ctx, fmpq

from .multipoly import MultiPoly
from .tower import AlgebraicNumber, UniPolyExt


def to_acb(z):
    """Convert a number (exact or floating) to an ``acb`` ball."""
    if isinstance(z, acb):
        return z
    if isinstance(z, arb):
        return acb(z)
    if isinstance(z, AlgebraicNumber):
        return z.enclosure(ctx.prec)
    if isinstance(z, Fraction):
        return acb(arb(fmpq(z.numerator, z.denominator)))
    if isinstance(z, (int, fmpq)):
        return acb(arb(z))
    if isinstance(z, complex):
        return acb(z.real, z.imag)
    return acb(z)


def _coeff_ball(c):
    return acb(arb(fmpq(c.numerator, c.denominator)))


def eval_ball(p, point, prec: int = 64) -> acb:
    """Evaluate a MultiPoly or UniPolyExt on balls at ``prec`` bits.

    Parameters
    ----------
    p : MultiPoly or UniPolyExt
    point : sequence
        One entry per variable (a single entry for UniPolyExt).  Entries may
        be ``acb``/``arb`` balls, rationals, AlgebraicNumbers or Python
        complex numbers.
    prec : int
        Working precision in bits, at least 32.

    Returns
    -------
    acb
        A ball guaranteed to contain the exact value.
    """
    if prec < 32:
        raise ValueError("precision must be at least 32 bits")
    with ctx.workprec(prec):
        if isinstance(p, UniPolyExt):
            if len(point) != 1:
                raise ValueError("univariate polynomial takes one point")
            z = to_acb(point[0])
            gens = p.tower.enclosures(prec)
            acc = acb(0)
            for c in reversed(p._low):
                acc = acc * z + p.tower.evaluate(c, prec, gens)
            return acc
        if not isinstance(p, MultiPoly):
            raise TypeError("expected MultiPoly or UniPolyExt")
        if len(point) != p.nvars:
            raise ValueError("point dimension does not match")
        pt = [to_acb(z) for z in point]
        powers = [dict() for _ in pt]
        acc = acb(0)
        for e, c in p.items():
            t = _coeff_ball(c)
            for i, k in enumerate(e):
                if k:
                    pw = powers[i].get(k)
                    if pw is None:
                        pw = powers[i][k] = pt[i] ** k
                    t = t * pw
            acc += t
        return acc
