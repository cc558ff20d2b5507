"""Numeric estimates of the exponent at infinity by sampling on polycylinders.

Nothing here is certified.  The zero set S of the product of components is
sampled by solving univariate slices exactly enough (Arb root isolation),
while the full polycylinder boundary is explored by a multistart pattern
search.  Both minima are fitted against the radius on a log-log scale.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np
from flint import acb, acb_poly, arb, ctx, fmpq, fmpq_poly

from .engine import MappingSpec
from .poly.multipoly import MultiPoly

INF = float("inf")


@dataclass(frozen=True)
class RadiusLadder:
    """Geometric radii ``r0 * ratio**k`` for ``k < count``."""

    r0: float = 1e2
    ratio: float = math.sqrt(10)
    count: int = 9
    samples_per_radius: int = 64
    multistarts: int = 8
    seed: int = 0

    def __post_init__(self):
        if not self.r0 > 0:
            raise ValueError("r0 must be positive")
        if not self.ratio > 1:
            raise ValueError("ratio must exceed 1")
        if self.count < 4:
            raise ValueError("a ladder needs at least 4 radii")
        if self.samples_per_radius < 16:
            raise ValueError("at least 16 samples per radius are required")

    @classmethod
    def spanning(cls, rmin=1e2, rmax=1e6, ratio=math.sqrt(10), **kw):
        if not (rmin > 0 and rmax > rmin):
            raise ValueError("need 0 < rmin < rmax")
        count = int(round(math.log(rmax / rmin) / math.log(ratio))) + 1
        return cls(r0=rmin, ratio=ratio, count=max(count, 4), **kw)

    @property
    def radii(self):
        return [self.r0 * self.ratio ** k for k in range(self.count)]


@dataclass(frozen=True)
class SlopeFit:
    points: tuple
    slope: float
    intercept: float
    residual: float
    used_tail: int


@dataclass(frozen=True)
class EstimateReport:
    restricted: SlopeFit
    full: SlopeFit
    agreement: float
    radii: tuple = ()
    min_S: tuple = ()
    min_full: tuple = ()

    def to_dict(self):
        return _clean(asdict(self))

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True)

    def write_csv(self, path):
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["R", "min_S", "min_full"])
            for row in zip(self.radii, self.min_S, self.min_full):
                w.writerow([repr(v) for v in row])


def _clean(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return "nan"
        if math.isinf(obj):
            return "inf" if obj > 0 else "-inf"
        return obj
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


# -- evaluation helpers ---------------------------------------------------

class _Compiled:
    """Double-precision evaluator for the components of a map."""

    def __init__(self, F: MappingSpec):
        self.n = F.nvars
        self.comps = [[(complex(float(c)), e) for e, c in p.items()] for p in F.components]

    def norm(self, z):
        best = 0.0
        for terms in self.comps:
            acc = 0j
            for c, e in terms:
                t = c
                for zi, k in zip(z, e):
                    if k:
                        t *= zi ** k
                acc += t
            a = abs(acc)
            if a > best:
                best = a
        return best


def _prec_for(F: MappingSpec, R: float):
    deg = max(1, max(max(0, p.total_degree()) for p in F.components))
    return int(128 + 3 * deg * max(1.0, math.log2(max(R, 2.0))))


def _acb_point(z):
    return [acb(complex(v).real, complex(v).imag) for v in z]


def _norm_ball(F: MappingSpec, z, prec):
    """``max_j |f_j(z)|`` evaluated in Arb at ``prec`` bits, returned as float."""
    from .poly.ball import eval_ball

    vals = [eval_ball(p, z, prec) for p in F.components]
    with ctx.workprec(prec):
        return max(float(abs(v).mid()) for v in vals)


def _slice_roots(p: MultiPoly, i: int, z, prec):
    """Roots in z_i of p with the other coordinates fixed (acb list, exact-ish)."""
    n = p.nvars
    deg = p.degree_in(i)
    if deg is None or deg <= 0:
        return []
    with ctx.workprec(prec):
        coeffs = [acb(0)] * (deg + 1)
        for e, c in p.items():
            t = acb(arb(fmpq(c.numerator, c.denominator)))
            for j in range(n):
                if j != i and e[j]:
                    t *= z[j] ** e[j]
            coeffs[e[i]] += t
        # drop leading coefficients that vanish numerically
        while len(coeffs) > 1 and coeffs[-1].contains(0) and abs(coeffs[-1]).upper() < 2.0 ** (-prec // 2):
            coeffs.pop()
        if len(coeffs) < 2:
            return []
        poly = acb_poly(coeffs)
        for extra in (0, 2 * prec, 6 * prec):
            try:
                with ctx.workprec(prec + extra):
                    return list(poly.roots(tol=2.0 ** (-prec // 2), maxprec=4 * (prec + extra)))
            except ValueError:
                continue
    # repeated roots on this slice: fall back to double precision
    arr = np.array([complex(float(c.real.mid()), float(c.imag.mid())) for c in coeffs[::-1]])
    return [acb(r.real, r.imag) for r in np.roots(arr)]


def _random_disc(rng, R, size=None):
    r = R * np.sqrt(rng.uniform(0, 1, size))
    th = rng.uniform(0, 2 * np.pi, size)
    return r * np.exp(1j * th)


# -- minima over S and over the sphere ------------------------------------

def _check_args(F, R, k):
    if not R > 0:
        raise ValueError("radius must be positive")
    if k < 16:
        raise ValueError("at least 16 samples are required")
    if F.nvars < 2:
        raise ValueError("maps of at least two variables are required")


def sample_S_min(F: MappingSpec, R: float, k: int = 64, seed: int = 0,
                 refine: bool = True) -> float:
    """Approximate ``min |F|`` over ``S ∩ {|z| = R}`` (max-of-moduli norm).

    For every distinguished coordinate ``i`` and every sample, one other
    coordinate is placed on the circle of radius R and the rest are drawn
    from the disc; each component's slice equation is solved for ``z_i`` and
    roots with ``|z_i| <= R`` are kept.  ``+inf`` when nothing landed.
    """
    return _sample_S(F, R, k, seed, refine)[0]


def _sample_S(F, R, k, seed, refine):
    _check_args(F, R, k)
    rng = np.random.default_rng(seed)
    n = F.nvars
    prec = _prec_for(F, R)
    comps = [p for p in F.components if not p.is_constant()]
    best, best_pt = INF, None
    candidates = []
    for i in range(n):
        others = [j for j in range(n) if j != i]
        for s in range(k):
            c = others[s % len(others)]
            z = list(_random_disc(rng, R, n))
            z[c] = R * np.exp(1j * rng.uniform(0, 2 * np.pi))
            z[i] = 0j
            for jc, p in enumerate(comps):
                for root_val, zz in _landing(F, p, i, z, R, prec):
                    candidates.append((root_val, i, c, jc, zz))
                    if root_val < best:
                        best, best_pt = root_val, zz
    if refine and candidates:
        candidates.sort(key=lambda t: t[0])
        for val, i, c, jc, zz in candidates[:4]:
            v, q = _refine(F, comps[jc], i, c, zz, R, prec, val)
            if v < best:
                best, best_pt = v, q
    if best_pt is not None:
        with ctx.workprec(prec):
            best_pt = tuple(complex(float(w.real.mid()), float(w.imag.mid())) for w in best_pt)
    return best, best_pt


def _landing(F, p, i, z, R, prec):
    zb = _acb_point(z)
    out = []
    for r in _slice_roots(p, i, zb, prec):
        if float(abs(r).mid()) <= R * (1 + 1e-12):
            pt = list(zb)
            pt[i] = r
            out.append((_norm_ball(F, pt, prec), pt))
    return out


def _refine(F, p, i, c, pt, R, prec, start_val, max_evals=400):
    """Pattern search on the free parameters of a landed sample.

    The circle coordinate ``c`` moves by its angle, the other non-solved
    coordinates by log-modulus and angle (clipped to the disc); the solved
    coordinate ``i`` follows the nearest root of the slice equation.
    """
    n = len(pt)
    logR = math.log(R)
    with ctx.workprec(prec):
        z0 = [complex(float(w.real.mid()), float(w.imag.mid())) for w in pt]
    free = [j for j in range(n) if j not in (i, c)]
    # parameter vector: angle of z_c, then (log|z_j|, arg z_j) for free j
    x0 = [math.atan2(z0[c].imag, z0[c].real)]
    for j in free:
        x0 += [math.log(abs(z0[j]) + 1e-300), math.atan2(z0[j].imag, z0[j].real)]
    x0 = np.array(x0)

    def point(x):
        q = list(pt)
        q[c] = acb(R * math.cos(x[0]), R * math.sin(x[0]))
        for k, j in enumerate(free):
            u = min(x[1 + 2 * k], logR)
            w = math.exp(u) * complex(math.cos(x[2 + 2 * k]), math.sin(x[2 + 2 * k]))
            q[j] = acb(w.real, w.imag)
        return q

    def value(x, root_prev):
        q = point(x)
        roots = _slice_roots(p, i, q, prec)
        if not roots:
            return INF, root_prev
        with ctx.workprec(prec):
            r = min(roots, key=lambda w: float(abs(w - root_prev).mid()))
            if float(abs(r).mid()) > R * (1 + 1e-12):
                return INF, root_prev
        q[i] = r
        return _norm_ball(F, q, prec), r

    best, root, x = start_val, pt[i], x0
    best_pt = list(pt)
    steps = np.array([0.1] + [1.0, 0.1] * len(free))
    evals = 0
    while evals < max_evals and steps.max() > 1e-4:
        moved = False
        for d in range(len(x)):
            for sign in (1.0, -1.0):
                x2 = x.copy()
                x2[d] += sign * steps[d]
                v, r = value(x2, root)
                evals += 1
                if v < best:
                    best, root, x = v, r, x2
                    best_pt = point(x2)
                    best_pt[i] = r
                    steps[d] *= 2
                    moved = True
                    break
        if not moved:
            steps /= 2
    return best, best_pt


def sphere_min(F: MappingSpec, R: float, k: int = 8, seed: int = 0,
               max_evals: int = 4000, polish: int = 2) -> float:
    """Approximate ``min |F|`` over ``{|z| = R}`` by multistart pattern search.

    Iterates are parametrized by log-moduli and angles.  Each start pins
    one coordinate to the circle of radius R (cycling through all of them)
    and clips the others to the polydisc, so the search never leaves the
    boundary.  The ``polish`` best end points are then refined by the same
    search in Arb arithmetic, which resolves valleys far below double
    precision.
    """
    if not R > 0:
        raise ValueError("radius must be positive")
    if k < 1:
        raise ValueError("at least one start is required")
    if F.nvars < 2:
        raise ValueError("maps of at least two variables are required")
    ev = _Compiled(F)
    n = F.nvars
    rng = np.random.default_rng(seed)
    logR = math.log(R)
    prec = _prec_for(F, R)

    def project(u, c):
        u = np.minimum(u, logR)
        u[c] = logR
        return u

    def to_z(u, phi):
        return np.exp(u + 1j * phi)

    def obj(u, phi):
        v = ev.norm(to_z(u, phi))
        return math.log(v) if v > 0 else -INF

    ends = []
    for s in range(k):
        c = s % n
        # half of the starts sample moduli log-uniformly, to reach thin valleys
        if (s // n) % 2 == 0:
            u = np.log(np.abs(_random_disc(rng, R, n)) + 1e-300)
        else:
            u = logR - rng.uniform(0, 2 * logR + 2, n)
        phi = rng.uniform(0, 2 * np.pi, n)
        u = project(u, c)
        f0 = obj(u, phi)
        steps = np.concatenate([np.full(n, 1.0), np.full(n, 0.5)])
        evals = 0
        while evals < max_evals and steps.max() > 1e-9:
            improved = False
            dirs = [d for d in range(2 * n) if d != c]
            for d in dirs:
                for sign in (1.0, -1.0):
                    u2, p2 = u.copy(), phi.copy()
                    if d < n:
                        u2[d] += sign * steps[d]
                    else:
                        p2[d - n] += sign * steps[d]
                    u2 = project(u2, c)
                    f2 = obj(u2, p2)
                    evals += 1
                    if f2 < f0:
                        u, phi, f0 = u2, p2, f2
                        steps[d] = min(steps[d] * 2, 4.0)
                        improved = True
                        break
            # a random direction helps along curved valleys
            w = rng.normal(size=2 * n)
            w /= np.linalg.norm(w)
            scale = steps.mean()
            for sign in (1.0, -1.0):
                u2 = project(u + sign * scale * w[:n], c)
                p2 = phi + sign * scale * w[n:]
                f2 = obj(u2, p2)
                evals += 1
                if f2 < f0:
                    u, phi, f0 = u2, p2, f2
                    improved = True
                    break
            if not improved:
                steps /= 2
        ends.append((_norm_ball(F, _acb_point(to_z(u, phi)), prec), s, u, phi, c))
    ends.sort(key=lambda e: (e[0], e[1]))
    best = ends[0][0]
    for val, s, u, phi, c in ends[:polish]:
        best = min(best, _polish(F, u, phi, c, logR, prec, val, rng))
    return best


def _polish(F, u, phi, c, logR, prec, start_val, rng, max_evals=2500):
    """Pattern search on (log-modulus, angle) parameters held as Arb reals."""
    n = len(u)
    with ctx.workprec(prec):
        U = [arb(float(x)) for x in u]
        Ph = [arb(float(x)) for x in phi]
        top = arb(logR)
        U[c] = top

        def value(U, Ph):
            z = [acb(U[j], Ph[j]).exp()
                 for j in range(n)]
            return _norm_ball(F, z, prec)

        best = start_val
        dirs = [d for d in range(2 * n) if d != c]
        steps = {d: 1e-6 for d in dirs}
        floor = 2.0 ** (-(prec - 24))
        evals = 0
        while evals < max_evals and max(steps.values()) > floor and best > 0:
            moved = False
            for d in dirs:
                for sign in (1.0, -1.0):
                    U2, P2 = list(U), list(Ph)
                    if d < n:
                        U2[d] = U2[d] + sign * steps[d]
                        if U2[d] > top:
                            U2[d] = top
                    else:
                        P2[d - n] = P2[d - n] + sign * steps[d]
                    v = value(U2, P2)
                    evals += 1
                    if v < best:
                        best, U, Ph = v, U2, P2
                        steps[d] *= 2
                        moved = True
                        break
            if not moved:
                for d in dirs:
                    steps[d] /= 2
    return best


# -- fitting --------------------------------------------------------------

def fit_slope(radii: Sequence[float], minima: Sequence[float], tail: Optional[int] = None) -> SlopeFit:
    """Least squares fit of ``log min`` against ``log R`` on the tail of the ladder."""
    pts = [(math.log(r), math.log(m) if 0 < m < INF else (-INF if m == 0 else INF))
           for r, m in zip(radii, minima)]
    used = tail if tail is not None else len(pts) - len(pts) // 2
    sel = pts[-used:]
    if any(math.isinf(y) for _, y in sel):
        ys = [y for _, y in sel]
        slope = -INF if any(y == -INF for y in ys) else math.nan
        return SlopeFit(tuple(pts), slope, math.nan, math.nan, used)
    xs = np.array([p[0] for p in sel])
    ys = np.array([p[1] for p in sel])
    slope, intercept = np.polyfit(xs, ys, 1)
    res = ys - (slope * xs + intercept)
    rms = float(np.sqrt(np.mean(res ** 2)))
    return SlopeFit(tuple(pts), float(slope), float(intercept), rms, used)


def estimate_exponent(F: MappingSpec, ladder: RadiusLadder = RadiusLadder()) -> EstimateReport:
    """Fit growth exponents of ``min |F|`` on S and on the whole boundary."""
    radii = ladder.radii
    seeds = np.random.SeedSequence(ladder.seed).spawn(2 * len(radii))
    mS, mF = [], []
    for idx, R in enumerate(radii):
        s1 = int(seeds[2 * idx].generate_state(1)[0])
        s2 = int(seeds[2 * idx + 1].generate_state(1)[0])
        mS.append(sample_S_min(F, R, ladder.samples_per_radius, s1))
        mF.append(sphere_min(F, R, ladder.multistarts, s2))
    restricted = fit_slope(radii, mS)
    full = fit_slope(radii, mF)
    agreement = abs(restricted.slope - full.slope)
    if math.isnan(agreement) and restricted.slope == full.slope:
        agreement = 0.0
    return EstimateReport(restricted, full, float(agreement), tuple(radii), tuple(mS), tuple(mF))


@dataclass(frozen=True)
class EscapeWitness:
    """Points of S with growing norm along which ``|F|`` stays bounded."""

    found: bool
    radii: tuple
    values: tuple
    points: tuple
    bound: float
    slope: float


def escape_search(F: MappingSpec, ladder: RadiusLadder = RadiusLadder(),
                  growth_tol: float = 0.02) -> EscapeWitness:
    """Search for an unbounded sequence on S with bounded ``|F|``.

    At each radius of the ladder the best point of S found by the sampler
    is kept.  A witness is declared when every value stays below
    ``10 * max(1, first value)`` and the log-log slope of the values does
    not exceed ``growth_tol``.  A miss proves nothing.
    """
    radii = ladder.radii
    seeds = np.random.SeedSequence(ladder.seed).spawn(len(radii))
    vals, pts = [], []
    for R, sq in zip(radii, seeds):
        v, q = _sample_S(F, R, ladder.samples_per_radius, int(sq.generate_state(1)[0]), True)
        vals.append(v)
        pts.append(q)
    bound = 10.0 * max(1.0, vals[0]) if vals[0] < INF else INF
    fit = fit_slope(radii, vals, tail=len(radii))
    slope = fit.slope
    found = (all(v <= bound for v in vals) and bound < INF
             and (slope == -INF or (not math.isnan(slope) and slope <= growth_tol)))
    return EscapeWitness(bool(found), tuple(radii), tuple(vals), tuple(pts), bound, float(slope))


# -- 2^-deg inequality harness ----------------------------------------------

def _as_fmpq_poly(p):
    if isinstance(p, fmpq_poly):
        return p
    if isinstance(p, MultiPoly):
        if p.nvars != 1:
            raise ValueError("univariate polynomials required")
        d = p.total_degree()
        coeffs = [Fraction(0)] * (max(d, 0) + 1)
        for (k,), c in p.items():
            coeffs[k] = c
        return fmpq_poly([fmpq(c.numerator, c.denominator) for c in coeffs])
    # coefficient list, lowest degree first
    return fmpq_poly([fmpq(Fraction(c).numerator, Fraction(c).denominator) for c in p])


def lemma2_check(components, probes: int = 64, seed: int = 0, slack: float = 1e-9):
    """Check ``|Phi(t)| >= 2^-deg(Phi) * min_{tau in T} |Phi(tau)|`` at probe points.

    Parameters
    ----------
    components : sequence
        Univariate polynomials (``fmpq_poly``, one-variable MultiPoly, or
        coefficient lists lowest degree first).
    probes : int
        Number of random probe points; midpoints between roots are added.

    Returns
    -------
    (bool, float)
        Whether every probe satisfied the inequality up to ``slack`` and the
        smallest observed ratio LHS/RHS (``inf`` when RHS is zero).
    """
    polys = [_as_fmpq_poly(p) for p in components]
    prod = fmpq_poly([1])
    for p in polys:
        prod *= p
    if prod.degree() < 1:
        raise ValueError("the product of the components must be nonconstant")
    deg = max(p.degree() for p in polys)
    prec = 128
    with ctx.workprec(prec):
        roots = [r for r, _ in prod.complex_roots()]
        polys_acb = [acb_poly([acb(c) for c in p.coeffs()]) if p.degree() >= 0 else acb_poly([0])
                     for p in polys]

        def norm(t):
            return max(float(abs(q(t)).mid()) for q in polys_acb)

        rhs = 2.0 ** (-deg) * min(norm(r) for r in roots)
        pts = []
        scale = 1 + max(float(abs(r).mid()) for r in roots)
        rng = np.random.default_rng(seed)
        for _ in range(probes):
            w = _random_disc(rng, 2 * scale)
            pts.append(acb(w.real, w.imag))
        for a in range(len(roots)):
            for b in range(a + 1, len(roots)):
                pts.append((roots[a] + roots[b]) / 2)
        worst = INF
        holds = True
        for t in pts:
            lhs = norm(t)
            if rhs > 0:
                worst = min(worst, lhs / rhs)
            if lhs + slack * max(1.0, rhs) < rhs:
                holds = False
    return holds, worst
