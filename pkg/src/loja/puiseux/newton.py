"""Newton polygons and truncated power series over a tower.

Bivariate polynomials over a tower are dicts ``{(i, j): raw}`` where ``i``
is the exponent of the series variable ``s`` and ``j`` that of ``Y``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Dict, List, Tuple

from ..poly import upoly
from ..poly.tower import UniPolyExt, AlgebraicNumber

Poly2 = Dict[Tuple[int, int], object]


@dataclass(frozen=True)
class Edge:
    """One edge of a Newton polygon.

    Roots Y along this edge behave like ``c * s^(m/q)``.  ``ell`` is the
    common value of ``q*i + m*j`` on the edge, ``j0 < j1`` its endpoints, and
    ``poly`` the edge polynomial in ``Z = c^q`` (raw coefficients, lowest
    degree first).
    """

    m: int
    q: int
    ell: int
    j0: int
    j1: int
    poly: tuple

    @property
    def slope(self):
        return Fraction(self.m, self.q)


@dataclass(frozen=True)
class NewtonPolygonInf:
    """Support points ``(j, i_min(j))`` and edges (in slope order)."""

    points: tuple
    edges: tuple

    def edge_polys(self, tower):
        return [(e.slope, UniPolyExt.from_raw(tower, e.poly)) for e in self.edges]


def lowest_points(F, H: Poly2, jmax=None):
    """``{j: i_min(j)}`` over semantically nonzero coefficients."""
    low: Dict[int, int] = {}
    for (i, j), c in H.items():
        if jmax is not None and j > jmax:
            continue
        if j in low and low[j] <= i:
            continue
        if F.iszero(c):
            continue
        low[j] = i
    return low


def lower_hull(points):
    """Lower convex hull of (j, i) points sorted by j (monotone chain)."""
    pts = sorted(points)
    hull: List[Tuple[int, int]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above segment hull[-2] -> p
            if (x2 - x1) * (p[1] - y1) - (y2 - y1) * (p[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(F, H: Poly2, jmax=None) -> NewtonPolygonInf:
    """Newton polygon of H restricted to ``j <= jmax``.

    Edge slopes are given as ``m/q = -(di/dj)``, i.e. the order of Y in s.
    """
    low = lowest_points(F, H, jmax)
    hull = lower_hull(low.items())
    edges = []
    for (j0, i0), (j1, i1) in zip(hull, hull[1:]):
        num, den = i0 - i1, j1 - j0
        g = gcd(num, den)
        m, q = num // g, den // g
        ell = q * i0 + m * j0
        coeffs = []
        for j in range(j0, j1 + 1, q):
            num_i = ell - m * j
            i = num_i // q
            c = H.get((i, j)) if num_i % q == 0 else None
            coeffs.append(F.zero if c is None else c)
        edges.append(Edge(m, q, ell, j0, j1, tuple(coeffs)))
    return NewtonPolygonInf(tuple(sorted(low.items())), tuple(edges))


def binomial(n, k):
    from math import comb
    return comb(n, k)


def substitute_edge(F, H: Poly2, edge: Edge, xi, u, v):
    """``H(xi^v s^q, s^m (xi^u + Y)) / s^ell`` as a new Poly2."""
    from ..poly.tower import ipow

    q, m, ell = edge.q, edge.m, edge.ell
    xi_u = ipow(F, xi, u)
    xi_v = ipow(F, xi, v) if v else F.one
    pow_u = [F.one]
    pow_v = {0: F.one}
    out: Poly2 = {}
    for (i, j), c in H.items():
        if F.isnull(c):
            continue
        while len(pow_u) <= j:
            pow_u.append(F.mul(pow_u[-1], xi_u))
        if i not in pow_v:
            pow_v[i] = ipow(F, xi_v, i)
        coef = F.mul(c, pow_v[i])
        e = q * i + m * j - ell
        if e < 0:
            raise ArithmeticError("edge is not a supporting line")
        for k in range(j + 1):
            t = F.mul(coef, pow_u[j - k])
            b = binomial(j, k)
            if b != 1:
                t = F.mul(t, F.from_int(b))
            key = (e, k)
            prev = out.get(key)
            out[key] = t if prev is None else F.add(prev, t)
    return {k: c for k, c in out.items() if not F.isnull(c)}


def y_order_at_zero(F, H: Poly2):
    """``ord_Y H(0, Y)``."""
    js = [j for (i, j), c in H.items() if i == 0 and not F.iszero(c)]
    return min(js) if js else None


def has_y_free_part(F, H: Poly2):
    return any(j == 0 and not F.iszero(c) for (i, j), c in H.items())


def divide_by_y(H: Poly2):
    return {(i, j - 1): c for (i, j), c in H.items() if j > 0}


def lift_poly(tower, H: Poly2, from_depth):
    return {k: tower.lift(c, from_depth) for k, c in H.items()}


# -- truncated power series -------------------------------------------------

def ser_mul(F, a, b, n):
    out = [F.zero] * n
    for i, x in enumerate(a[:n]):
        if F.isnull(x):
            continue
        for j in range(min(len(b), n - i)):
            y = b[j]
            if F.isnull(y):
                continue
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return out


def ser_inv(F, a, n):
    """Inverse of a power series with unit constant term, mod s^n."""
    inv0 = F.inv(a[0])
    out = [inv0] + [F.zero] * (n - 1)
    for k in range(1, n):
        acc = F.zero
        for i in range(1, min(k, len(a) - 1) + 1):
            if not F.isnull(a[i]) and not F.isnull(out[k - i]):
                acc = F.add(acc, F.mul(a[i], out[k - i]))
        out[k] = F.neg(F.mul(acc, inv0))
    return out


def columns(F, H: Poly2):
    """``{j: dense series coefficients of H_j(s)}``."""
    cols: Dict[int, list] = {}
    for (i, j), c in H.items():
        col = cols.setdefault(j, [])
        if len(col) <= i:
            col.extend([F.zero] * (i + 1 - len(col)))
        col[i] = c
    return cols


def eval_series(F, cols, W, n):
    """``(H(s, W), H_Y(s, W))`` mod s^n via Horner in Y."""
    dmax = max(cols)
    val = [F.zero] * n
    der = [F.zero] * n
    for j in range(dmax, -1, -1):
        # der = der*W + val ; val = val*W + H_j
        der = [F.add(x, y) for x, y in zip(ser_mul(F, der, W, n), val)]
        val = ser_mul(F, val, W, n)
        col = cols.get(j)
        if col:
            for i, c in enumerate(col[:n]):
                val[i] = F.add(val[i], c)
    return val, der


def newton_lift(F, cols, W, n_old, n_new):
    """One Newton step: W known mod s^n_old, returns W mod s^n_new."""
    W = list(W[:n_old]) + [F.zero] * (n_new - n_old)
    val, der = eval_series(F, cols, W, n_new)
    corr = ser_mul(F, val, ser_inv(F, der, n_new), n_new)
    return [F.sub(w, c) for w, c in zip(W, corr)]


def to_number(tower, raw):
    return AlgebraicNumber(tower, raw)


def as_upoly(F, coeffs):
    return upoly.strip(F, list(coeffs))
