"""Exact arithmetic in towers of algebraic extensions of Q.

A tower ``Q = K0 ⊂ K1 ⊂ ... ⊂ Kn`` is built by adjoining, at each level, a
root of a monic squarefree polynomial over the previous level.  Irreducibility
is only certified for polynomials over Q itself; higher levels may be products
of fields.  Zero tests and inversions at such levels run a gcd against the
defining polynomial and raise :class:`TowerSplit` when a zero divisor shows
up, so callers can continue on each factor separately (dynamic evaluation).

Raw elements are ``fmpq`` at level 0 and tuples of level ``k-1`` elements
(dense coordinates in the power basis) at level ``k``.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from flint import acb, acb_poly, arb, ctx, fmpq, fmpq_poly

from . import upoly

SELECT_PREC = 128
_MAX_SELECT_PREC = 1024


class TowerSplit(ArithmeticError):
    """A level's defining polynomial factors as ``factor * cofactor``.

    Raised by zero tests or inversions that meet a zero divisor.  ``level`` is
    1-based; both polynomials are monic, lowest degree first, with raw
    coefficients in level ``level - 1``.
    """

    def __init__(self, level, factor, cofactor):
        super().__init__(f"tower level {level} splits "
                         f"({len(factor) - 1} + {len(cofactor) - 1})")
        self.level = level
        self.factor = tuple(factor)
        self.cofactor = tuple(cofactor)


class NotSquarefreeError(ValueError):
    pass


class _Rationals:
    """Field operations on ``fmpq``."""

    depth = 0
    certified = True

    def __init__(self):
        self.zero = fmpq(0)
        self.one = fmpq(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / a

    def iszero(self, a):
        return a == 0

    def isnull(self, a):
        return a == 0

    def from_int(self, n):
        return fmpq(n)

    def from_rational(self, q):
        if isinstance(q, fmpq):
            return q
        q = Fraction(q)
        return fmpq(q.numerator, q.denominator)


class _FractionField(_Rationals):
    """The same operations on :class:`fractions.Fraction` (for MultiPoly)."""

    def __init__(self):
        self.zero = Fraction(0)
        self.one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def from_rational(self, q):
        return Fraction(q)


QQ = _Rationals()
FRAC = _FractionField()


class _Extension:
    """Operations in ``base[T] / (minpoly)``."""

    def __init__(self, base, minpoly, level, certified):
        self.base = base
        self.minpoly = tuple(minpoly)
        self.d = len(minpoly) - 1
        self.level = level
        self.depth = level
        self.certified = certified
        self.zero = (base.zero,) * self.d
        self.one = (base.one,) + (base.zero,) * (self.d - 1)

    def add(self, a, b):
        add = self.base.add
        return tuple(add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        sub = self.base.sub
        return tuple(sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        neg = self.base.neg
        return tuple(neg(x) for x in a)

    def reduce(self, c):
        """Reduce a coefficient list of any length modulo the minimal polynomial."""
        B = self.base
        d = self.d
        m = self.minpoly
        c = list(c)
        for k in range(len(c) - 1, d - 1, -1):
            top = c[k]
            if B.isnull(top):
                continue
            for i in range(d):
                mi = m[i]
                if not B.isnull(mi):
                    c[k - d + i] = B.sub(c[k - d + i], B.mul(top, mi))
        if len(c) < d:
            c.extend([B.zero] * (d - len(c)))
        return tuple(c[:d])

    def mul(self, a, b):
        B = self.base
        if a == self.zero or b == self.zero:
            return self.zero
        d = self.d
        if d == 1:
            return (B.mul(a[0], b[0]),)
        prod = [B.zero] * (2 * d - 1)
        for i, x in enumerate(a):
            if B.isnull(x):
                continue
            for j, y in enumerate(b):
                if B.isnull(y):
                    continue
                prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        return self.reduce(prod)

    def isnull(self, a):
        return a == self.zero

    def iszero(self, a):
        if a == self.zero:
            return True
        if self.certified:
            return False
        a = upoly.strip(self.base, list(a))
        if not a:
            return True
        g = upoly.gcd(self.base, a, list(self.minpoly))
        if len(g) <= 1:
            return False
        raise TowerSplit(self.level, g,
                         upoly.exact_quo(self.base, list(self.minpoly), g))

    def inv(self, a):
        if a == self.zero:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = upoly.xgcd(self.base, list(a), list(self.minpoly))
        if len(g) > 1:
            raise TowerSplit(self.level, g,
                             upoly.exact_quo(self.base, list(self.minpoly), g))
        return self.reduce(s)

    def from_int(self, n):
        return (self.base.from_int(n),) + self.zero[1:]

    def from_rational(self, q):
        return (self.base.from_rational(q),) + self.zero[1:]

    def embed(self, b):
        """Embed an element of the base level."""
        return (b,) + self.zero[1:]

    def generator(self):
        if self.d == 1:
            return (self.base.neg(self.minpoly[0]),)
        return (self.base.zero, self.base.one) + self.zero[2:]


def ipow(F, a, n):
    """a**n in field F; negative n inverts first."""
    if n < 0:
        a = F.inv(a)
        n = -n
    result = F.one
    while n:
        if n & 1:
            result = F.mul(result, a)
        n >>= 1
        if n:
            a = F.mul(a, a)
    return result


def _is_structural_zero(raw):
    if isinstance(raw, tuple):
        return all(_is_structural_zero(c) for c in raw)
    return raw == 0


class FieldTower:
    """An immutable tower of extensions over Q with a chosen complex embedding.

    The embedding picks, at every level, the root of the defining polynomial
    that is lexicographically smallest by (real part, imaginary part); real
    parts whose enclosures cannot be separated up to 1024 bits count as equal.
    """

    def __init__(self, levels=(), names=(), hints=None):
        self.levels = tuple(levels)
        self.names = tuple(names) or tuple(f"a{i + 1}" for i in range(len(levels)))
        self._hints = list(hints) if hints is not None else [None] * len(self.levels)
        self._hints += [None] * (len(self.levels) - len(self._hints))
        self._encl_cache = {}
        self._lock = threading.RLock()

    @classmethod
    def rationals(cls):
        return _RATIONALS_TOWER

    @property
    def ops(self):
        return self.levels[-1] if self.levels else QQ

    @property
    def depth(self):
        return len(self.levels)

    @property
    def degree(self):
        return math.prod(lv.d for lv in self.levels)

    @property
    def level_degrees(self):
        return tuple(lv.d for lv in self.levels)

    def __repr__(self):
        return f"FieldTower(degrees={self.level_degrees})"

    # -- construction ------------------------------------------------------

    def extend(self, minpoly, name=None, certified=False):
        """Adjoin a root of a monic polynomial with raw top-level coefficients."""
        minpoly = tuple(minpoly)
        if len(minpoly) < 2:
            raise ValueError("defining polynomial must have positive degree")
        if minpoly[-1] != self.ops.one:
            raise ValueError("defining polynomial must be monic")
        level = _Extension(self.ops, minpoly, len(self.levels) + 1,
                           certified and not self.levels)
        name = name or f"a{len(self.levels) + 1}"
        return FieldTower(self.levels + (level,), self.names + (name,),
                          self._hints + [None])

    def lift(self, raw, from_depth):
        """Embed a raw element of level ``from_depth`` into the top level."""
        for lv in self.levels[from_depth:]:
            raw = lv.embed(raw)
        return raw

    def from_rational(self, q):
        return self.ops.from_rational(q)

    def generator(self, k):
        """Raw top-level element for the generator of level k (1-based)."""
        return self.lift(self.levels[k - 1].generator(), k)

    def split(self, level, factor):
        """The tower with level ``level`` cut down to the given monic factor."""
        old = self.levels[level - 1]
        new_levels = list(self.levels[:level - 1])
        base = old.base
        new_levels.append(_Extension(base, tuple(factor), level, False))
        for lv in self.levels[level:]:
            base = new_levels[-1]
            mp = tuple(self._project_raw(c, new_levels, level, lv.level - 1)
                       for c in lv.minpoly)
            new_levels.append(_Extension(base, mp, lv.level, False))
        hints = self._hints[:level - 1]
        return FieldTower(new_levels, self.names, hints)

    def project(self, raw, target, level):
        """Image of a raw top-level element in ``target = self.split(level, .)``."""
        return self._project_raw(raw, target.levels, level, self.depth)

    @staticmethod
    def _project_raw(raw, new_levels, level, depth):
        if depth < level:
            return raw
        if depth == level:
            return new_levels[level - 1].reduce(raw)
        return tuple(FieldTower._project_raw(c, new_levels, level, depth - 1)
                     for c in raw)

    # -- numerics ----------------------------------------------------------

    def _eval(self, raw, gens, depth=None):
        depth = self.depth if depth is None else depth
        if depth == 0:
            return acb(arb(raw))
        g = gens[depth - 1]
        acc = acb(0)
        for c in reversed(raw):
            acc = acc * g + self._eval(c, gens, depth - 1)
        return acc

    def _level_roots(self, k, gens, prec):
        lv = self.levels[k - 1]
        with ctx.workprec(prec + 32):
            coeffs = [self._eval(c, gens, k - 1) for c in lv.minpoly]
            if lv.d == 1:
                return [-coeffs[0]]
            return acb_poly(coeffs).roots(tol=2.0 ** (-prec), maxprec=8 * prec + 256)

    def _select(self, k, gens_by_prec):
        """Choose the lexicographically smallest root of level k."""
        prec = SELECT_PREC
        while True:
            roots = self._level_roots(k, gens_by_prec(prec)[:k - 1], prec)
            cands = [r for r in roots if r.real.lower() <= min(
                s.real.upper() for s in roots)]
            if len(cands) == 1:
                return cands[0]
            if prec >= _MAX_SELECT_PREC:
                break
            prec *= 2
        # equal real parts: order by imaginary part
        best = min(cands, key=lambda r: float(r.imag.mid()))
        return best

    def enclosures(self, prec=SELECT_PREC):
        """Enclosures of the chosen generator values at ``prec`` bits."""
        with self._lock:
            if prec in self._encl_cache:
                return self._encl_cache[prec]
            gens = []
            for k in range(1, self.depth + 1):
                if self._hints[k - 1] is None:
                    self._hints[k - 1] = self._select(k, self._gens_prefix)
                hint = self._hints[k - 1]
                p = max(prec, SELECT_PREC)
                while True:
                    roots = self._level_roots(k, gens, p)
                    match = [r for r in roots if r.overlaps(hint)]
                    if len(match) == 1:
                        gens.append(match[0])
                        break
                    p *= 2
                    if p > 16 * max(prec, SELECT_PREC) + 4096:
                        raise ArithmeticError("could not track chosen root")
            self._encl_cache[prec] = gens
            return gens

    def _gens_prefix(self, prec):
        # generator enclosures for the levels whose hints already exist
        gens = []
        for k in range(1, self.depth + 1):
            if self._hints[k - 1] is None:
                break
            hint = self._hints[k - 1]
            p = prec
            while True:
                roots = self._level_roots(k, gens, p)
                match = [r for r in roots if r.overlaps(hint)]
                if len(match) == 1:
                    gens.append(match[0])
                    break
                p *= 2
        return gens

    def evaluate(self, raw, prec=SELECT_PREC, gens=None):
        """Complex ball containing the value of a raw element."""
        if gens is None:
            gens = self.enclosures(prec)
        with ctx.workprec(prec + 32):
            return self._eval(raw, gens)

    def embeddings(self, prec=SELECT_PREC):
        """All generator value tuples, one per complex embedding."""
        out = [[]]
        for k in range(1, self.depth + 1):
            nxt = []
            for gens in out:
                for r in self._level_roots(k, gens, prec):
                    nxt.append(gens + [r])
            out = nxt
        return out


_RATIONALS_TOWER = FieldTower()


class AlgebraicNumber:
    """An element of a :class:`FieldTower` with exact coordinates."""

    __slots__ = ("tower", "raw")

    def __init__(self, tower, raw):
        self.tower = tower
        self.raw = raw

    @classmethod
    def rational(cls, q, tower=None):
        tower = tower or FieldTower.rationals()
        return cls(tower, tower.lift(QQ.from_rational(q), 0))

    @property
    def coordinates(self):
        return self.raw

    def _coerce(self, other):
        if isinstance(other, AlgebraicNumber):
            if other.tower is not self.tower:
                raise ValueError("elements of different towers")
            return other.raw
        return self.tower.ops.from_rational(other)

    def __add__(self, other):
        return AlgebraicNumber(self.tower, self.tower.ops.add(self.raw, self._coerce(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return AlgebraicNumber(self.tower, self.tower.ops.sub(self.raw, self._coerce(other)))

    def __rsub__(self, other):
        return AlgebraicNumber(self.tower, self.tower.ops.sub(self._coerce(other), self.raw))

    def __mul__(self, other):
        return AlgebraicNumber(self.tower, self.tower.ops.mul(self.raw, self._coerce(other)))

    __rmul__ = __mul__

    def __neg__(self):
        return AlgebraicNumber(self.tower, self.tower.ops.neg(self.raw))

    def __truediv__(self, other):
        ops = self.tower.ops
        return AlgebraicNumber(self.tower, ops.mul(self.raw, ops.inv(self._coerce(other))))

    def __rtruediv__(self, other):
        ops = self.tower.ops
        return AlgebraicNumber(self.tower, ops.mul(self._coerce(other), ops.inv(self.raw)))

    def inverse(self):
        return AlgebraicNumber(self.tower, self.tower.ops.inv(self.raw))

    def __pow__(self, n):
        return AlgebraicNumber(self.tower, ipow(self.tower.ops, self.raw, n))

    def __eq__(self, other):
        if isinstance(other, (AlgebraicNumber, int, Fraction, fmpq)):
            return (self - other).is_zero()
        return NotImplemented

    __hash__ = None

    def is_zero(self):
        """Exact zero test (may raise TowerSplit over a product of fields)."""
        return self.tower.ops.iszero(self.raw)

    def is_rational(self):
        def flat(r, depth):
            if depth == 0:
                return True
            return all(_is_structural_zero(c) for c in r[1:]) and flat(r[0], depth - 1)
        return flat(self.raw, self.tower.depth)

    def to_rational(self):
        r = self.raw
        for _ in range(self.tower.depth):
            r = r[0]
        return Fraction(int(r.p), int(r.q))

    def enclosure(self, prec=SELECT_PREC):
        """Complex ball containing the value under the tower's embedding."""
        return self.tower.evaluate(self.raw, prec)

    def __complex__(self):
        e = self.enclosure(64)
        return complex(float(e.real.mid()), float(e.imag.mid()))

    def __repr__(self):
        if self.is_rational():
            return f"AlgebraicNumber({self.to_rational()})"
        return f"AlgebraicNumber(~{complex(self):.6g}, degree {self.tower.degree})"


class UniPolyExt:
    """Univariate polynomial over a tower; ``coefficients`` highest degree first."""

    def __init__(self, tower, coefficients):
        self.tower = tower
        raw = []
        for c in reversed(list(coefficients)):
            if isinstance(c, AlgebraicNumber):
                raw.append(c.raw)
            else:
                raw.append(tower.ops.from_rational(c))
        self._low = upoly.strip_null(tower.ops, raw)

    @classmethod
    def from_raw(cls, tower, low_first):
        obj = cls.__new__(cls)
        obj.tower = tower
        obj._low = upoly.strip_null(tower.ops, list(low_first))
        return obj

    @property
    def coefficients(self):
        return [AlgebraicNumber(self.tower, c) for c in reversed(self._low)]

    @property
    def degree(self):
        return len(self._low) - 1 if self._low else -math.inf

    def __add__(self, other):
        return UniPolyExt.from_raw(self.tower, upoly.add(self.tower.ops, self._low, other._low))

    def __sub__(self, other):
        return UniPolyExt.from_raw(self.tower, upoly.sub(self.tower.ops, self._low, other._low))

    def __mul__(self, other):
        return UniPolyExt.from_raw(self.tower, upoly.mul(self.tower.ops, self._low, other._low))

    def __neg__(self):
        ops = self.tower.ops
        return UniPolyExt.from_raw(self.tower, [ops.neg(c) for c in self._low])

    def __eq__(self, other):
        if not isinstance(other, UniPolyExt):
            return NotImplemented
        return not upoly.strip(self.tower.ops, upoly.sub(self.tower.ops, self._low, other._low))

    __hash__ = None

    def __call__(self, x):
        ops = self.tower.ops
        xr = x.raw if isinstance(x, AlgebraicNumber) else ops.from_rational(x)
        return AlgebraicNumber(self.tower, upoly.evaluate(ops, self._low, xr))

    def __repr__(self):
        return f"UniPolyExt(degree={self.degree}, tower={self.tower!r})"


def _rational_poly(low):
    return fmpq_poly([c for c in low])


def tower_extend(tower, minpoly, name=None):
    """Adjoin a root of a squarefree polynomial.

    Returns ``(tower', root)``.  A linear polynomial gives its explicit root
    in the same tower.  Otherwise the new generator is the lexicographically
    smallest root (by real, then imaginary part) under the current embedding.
    Over Q the polynomial is checked for irreducibility, and the new level is
    marked as a field when it is irreducible.
    """
    ops = tower.ops
    low = upoly.strip(ops, list(minpoly._low))
    if len(low) < 2:
        raise ValueError("minimal polynomial must have degree >= 1")
    low = upoly.monic(ops, low)
    if len(low) == 2:
        return tower, AlgebraicNumber(tower, ops.neg(low[0]))
    g = upoly.gcd(ops, low, upoly.derivative(ops, low))
    if len(g) > 1:
        raise NotSquarefreeError("minimal polynomial is not squarefree")
    certified = False
    if tower.depth == 0:
        _, facs = _rational_poly(low).factor()
        certified = len(facs) == 1 and facs[0][1] == 1
    new = tower.extend(low, name=name, certified=certified)
    return new, AlgebraicNumber(new, new.generator(new.depth))
