"""Linear changes of coordinates that make a bivariate polynomial degree-regular."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

import numpy as np

from ..poly.multipoly import MultiPoly, determinant, is_degree_regular

IDENTITY = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(1)))
_TRIES_PER_HEIGHT = 8


@dataclass(frozen=True)
class GenericizeReport:
    """Outcome of :func:`genericize`.

    Attributes
    ----------
    transform : tuple of tuple of Fraction
        The matrix M; the new polynomial is ``f(M w)``.
    attempts : int
        Number of candidate matrices tried (the accepted one included).
    regular_degrees : tuple of int
        ``(deg, deg_x, deg_y)`` after the change.
    comparability_constants : (Fraction, Fraction) or None
        Numeric estimates of constants C >= 1, D > 0 with
        ``|z_i| <= C |z_i'|`` on the zero set once ``|z_i'| > D``.
    """

    transform: Tuple[Tuple[Fraction, Fraction], Tuple[Fraction, Fraction]]
    attempts: int
    regular_degrees: Tuple[int, int, int]
    comparability_constants: Optional[Tuple[Fraction, Fraction]] = None


def candidate_matrices(seed: int):
    """Deterministic stream of integer matrices for a seed.

    Seed 0 starts with the identity.  Entries are drawn from ``[-H, H]``
    with ``H = 1, 2, 4, ...``; H doubles after a fixed number of draws.
    """
    if seed == 0:
        yield IDENTITY
    rng = random.Random(seed)
    height = 1
    while True:
        for _ in range(_TRIES_PER_HEIGHT):
            M = tuple(tuple(Fraction(rng.randint(-height, height)) for _ in range(2))
                      for _ in range(2))
            if determinant(M) != 0:
                yield M
        height *= 2


def genericize(f: MultiPoly, seed: int = 0, constants: bool = False):
    """Find an invertible M with ``deg f(Mw) = deg_x = deg_y``.

    Parameters
    ----------
    f : MultiPoly
        Nonzero, nonconstant, in two variables.
    seed : int
        Selects the deterministic candidate stream.
    constants : bool
        Also estimate the comparability constants (slow-ish, numeric).

    Returns
    -------
    (GenericizeReport, MultiPoly)
    """
    if f.nvars != 2:
        raise ValueError("genericize needs a bivariate polynomial")
    if f.is_zero() or f.is_constant():
        raise ValueError("genericize needs a nonconstant polynomial")
    # degree regularity only depends on the leading form
    lead = f.leading_form()
    for attempts, M in enumerate(candidate_matrices(seed), start=1):
        if is_degree_regular(lead.linear_change(M)):
            g = f.linear_change(M)
            total, per = g.degrees()
            cc = comparability_constants(g) if constants else None
            return GenericizeReport(M, attempts, (total, per[0], per[1]), cc), g
    raise AssertionError("unreachable")  # pragma: no cover


def _leading_ratios(f: MultiPoly) -> List[complex]:
    # roots r of LF(1, r): asymptotic slopes y/x of the branches
    lf = f.leading_form()
    d = f.total_degree()
    coeffs = [0.0] * (d + 1)
    for (a, b), c in lf.items():
        coeffs[b] = float(c)
    return list(np.roots(coeffs[::-1]))


def comparability_constants(f: MultiPoly, radii=None, samples=32, seed=0):
    """Numeric estimates of (C, D) for a degree-regular f.

    C is twice the largest of ``|r|`` and ``1/|r|`` over the asymptotic
    slopes r of the zero set; D is the largest sampled ``|z_i'|`` at which
    the inequality still failed (at least 1).  These are estimates, not
    certified bounds.
    """
    ratios = _leading_ratios(f)
    C = max([1.0] + [max(abs(r), 1 / abs(r)) for r in ratios if r != 0]) * 2
    if radii is None:
        radii = [10.0 ** (k / 2) for k in range(0, 13)]
    rng = np.random.default_rng(seed)
    d = f.total_degree()
    D = 1.0
    for i in (0, 1):
        other = 1 - i
        for R in radii:
            for theta in rng.uniform(0, 2 * np.pi, samples):
                w = R * np.exp(1j * theta)
                coeffs = [0j] * (d + 1)
                for e, c in f.items():
                    coeffs[e[i]] += complex(c) * w ** e[other]
                coeffs = np.trim_zeros(np.array(coeffs[::-1]), "f")
                if len(coeffs) < 2:
                    continue
                for z in np.roots(coeffs):
                    if abs(z) > C * abs(w):
                        D = max(D, abs(w))
    return (Fraction(C).limit_denominator(1000) + Fraction(1, 1000),
            Fraction(D).limit_denominator(1000) + Fraction(1, 1000))
