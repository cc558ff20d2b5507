"""Sparse multivariate polynomials with exact rational coefficients."""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponent = Tuple[int, ...]
NEG_INF = float("-inf")


class VariableMismatch(ValueError):
    pass


class SingularMatrixError(ValueError):
    pass


def _grlex_key(e):
    return (sum(e), e)


class MultiPoly:
    """A polynomial in an ordered tuple of variables.

    Parameters
    ----------
    variables : sequence of str
        Variable names, in the declared order.
    terms : mapping, optional
        Exponent tuple -> coefficient.  Coefficients are converted to
        :class:`fractions.Fraction`; zeros are dropped.

    Notes
    -----
    Instances are immutable.  Term order for serialization and leading
    terms is graded lexicographic with the declared variable order.
    """

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping[Exponent, object] | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean: Dict[Exponent, Fraction] = {}
        for e, c in (terms or {}).items():
            e = tuple(int(k) for k in e)
            if len(e) != n or any(k < 0 for k in e):
                raise ValueError(f"bad exponent vector {e} for {n} variables")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self._terms = clean
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def _raw(cls, variables, terms):
        obj = cls.__new__(cls)
        obj.variables = variables
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, variables):
        return cls(variables)

    @classmethod
    def constant(cls, variables, c):
        n = len(tuple(variables))
        return cls(variables, {(0,) * n: c})

    @classmethod
    def var(cls, variables, name):
        variables = tuple(variables)
        i = variables.index(name)
        e = [0] * len(variables)
        e[i] = 1
        return cls(variables, {tuple(e): 1})

    # -- basic accessors ---------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    @property
    def nvars(self):
        return len(self.variables)

    def is_zero(self):
        return not self._terms

    def is_constant(self):
        return all(not any(e) for e in self._terms)

    def constant_value(self):
        return self._terms.get((0,) * self.nvars, Fraction(0))

    def __len__(self):
        return len(self._terms)

    def sorted_terms(self):
        """Terms in canonical (descending graded lex) order."""
        return sorted(self._terms.items(), key=lambda t: _grlex_key(t[0]), reverse=True)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self._terms, key=_grlex_key)
        return e, self._terms[e]

    def total_degree(self):
        if not self._terms:
            return NEG_INF
        return max(sum(e) for e in self._terms)

    def degree_in(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        if not self._terms:
            return NEG_INF
        return max(e[i] for e in self._terms)

    def degrees(self):
        """``(total, [deg in each variable])``; ``-inf`` for the zero polynomial."""
        return self.total_degree(), [self.degree_in(i) for i in range(self.nvars)]

    def homogeneous_part(self, d):
        return MultiPoly._raw(self.variables,
                              {e: c for e, c in self._terms.items() if sum(e) == d})

    def leading_form(self):
        return self.homogeneous_part(self.total_degree())

    # -- arithmetic --------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.constant(self.variables, other)
        elif other.variables != self.variables:
            raise VariableMismatch(f"variables {self.variables} vs {other.variables}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return MultiPoly._raw(self.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        other = self._check(other)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultiPoly._raw(self.variables, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly.constant(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        c = Fraction(c)
        if not c:
            return MultiPoly.zero(self.variables)
        return MultiPoly._raw(self.variables, {e: c * v for e, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == MultiPoly.constant(self.variables, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    def divide_exact(self, other):
        """Quotient of an exact division; raises ArithmeticError otherwise."""
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def divmod(self, other):
        """Multivariate division by a single divisor in graded lex order."""
        other = self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        le, lc = other.leading_term()
        rem = dict(self._terms)
        quo: Dict[Exponent, Fraction] = {}
        out_rem: Dict[Exponent, Fraction] = {}
        while rem:
            e = max(rem, key=_grlex_key)
            c = rem.pop(e)
            if all(a >= b for a, b in zip(e, le)):
                d = tuple(a - b for a, b in zip(e, le))
                f = c / lc
                quo[d] = quo.get(d, 0) + f
                for e2, c2 in other._terms.items():
                    if e2 == le:
                        continue
                    t = tuple(a + b for a, b in zip(d, e2))
                    v = rem.get(t, 0) - f * c2
                    if v:
                        rem[t] = v
                    else:
                        rem.pop(t, None)
            else:
                out_rem[e] = c
        return (MultiPoly._raw(self.variables, {e: c for e, c in quo.items() if c}),
                MultiPoly._raw(self.variables, out_rem))

    def divides(self, other):
        """True if self divides other exactly."""
        return other.divmod(self)[1].is_zero()

    # -- calculus / evaluation --------------------------------------------

    def diff(self, i):
        if isinstance(i, str):
            i = self.variables.index(i)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                e2 = list(e)
                e2[i] -= 1
                out[tuple(e2)] = c * e[i]
        return MultiPoly._raw(self.variables, out)

    def evaluate(self, point):
        """Evaluate at a point (any ring supporting + and * with Fractions)."""
        if len(point) != self.nvars:
            raise ValueError("point dimension does not match")
        acc = 0
        for e, c in self._terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x ** k
            acc = acc + t
        return acc

    def substitute(self, images: Sequence["MultiPoly"]):
        """Compose with polynomial images of each variable (same target ring)."""
        if len(images) != self.nvars:
            raise ValueError("need one image per variable")
        target = images[0].variables
        result = MultiPoly.zero(target)
        powers = [dict() for _ in images]

        def power(i, k):
            if k not in powers[i]:
                powers[i][k] = images[i] ** k
            return powers[i][k]

        for e, c in self._terms.items():
            t = MultiPoly.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            result = result + t
        return result

    def linear_change(self, M):
        """Return p(M·w): each variable z_i becomes sum_j M[i][j] w_j."""
        n = self.nvars
        M = [[Fraction(x) for x in row] for row in M]
        if len(M) != n or any(len(r) != n for r in M):
            raise ValueError(f"matrix must be {n}x{n}")
        if determinant(M) == 0:
            raise SingularMatrixError("linear change matrix is singular")
        images = []
        for i in range(n):
            terms = {}
            for j in range(n):
                if M[i][j]:
                    e = [0] * n
                    e[j] = 1
                    terms[tuple(e)] = M[i][j]
            images.append(MultiPoly._raw(self.variables, terms))
        return self.substitute(images)

    def coeffs_in(self, i):
        """Coefficients as polynomials in the remaining variables, keyed by degree in variable i.

        The returned polynomials keep the full variable tuple, with the
        exponent of variable i set to zero.
        """
        if isinstance(i, str):
            i = self.variables.index(i)
        out: Dict[int, Dict[Exponent, Fraction]] = {}
        for e, c in self._terms.items():
            e2 = list(e)
            k = e2[i]
            e2[i] = 0
            out.setdefault(k, {})[tuple(e2)] = c
        return {k: MultiPoly._raw(self.variables, v) for k, v in out.items()}

    def primitive(self):
        """Scale so the canonical leading coefficient is 1 (zero stays zero)."""
        if self.is_zero():
            return self
        return self.scale(1 / self.leading_term()[1])

    # -- text --------------------------------------------------------------

    def __str__(self):
        return serialize(self)

    def __repr__(self):
        return f"MultiPoly({self.variables!r}, {serialize(self)!r})"


def determinant(M):
    """Exact determinant by Gaussian elimination over Q."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    det = Fraction(1)
    for k in range(n):
        piv = next((r for r in range(k, n) if A[r][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            A[k], A[piv] = A[piv], A[k]
            det = -det
        det *= A[k][k]
        for r in range(k + 1, n):
            f = A[r][k] / A[k][k]
            if f:
                for c in range(k, n):
                    A[r][c] -= f * A[k][c]
    return det


def _format_coeff(c: Fraction):
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def serialize(p: MultiPoly) -> str:
    """Canonical text: descending graded lex order, explicit ``*`` and ``^``."""
    if p.is_zero():
        return "0"
    parts = []
    for e, c in p.sorted_terms():
        mono = "*".join(
            v if k == 1 else f"{v}^{k}" for v, k in zip(p.variables, e) if k)
        mag = abs(c)
        if not mono:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{_format_coeff(mag)}*{mono}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append((" - " if c < 0 else " + ") + body)
    return "".join(parts)


def product(polys: Iterable[MultiPoly], variables=None) -> MultiPoly:
    polys = list(polys)
    if not polys:
        return MultiPoly.constant(variables, 1)
    out = polys[0]
    for p in polys[1:]:
        out = out * p
    return out


def is_degree_regular(p: MultiPoly) -> bool:
    total, per = p.degrees()
    return all(d == total for d in per)


def isfinite_degree(d):
    return not (isinstance(d, float) and math.isinf(d))
