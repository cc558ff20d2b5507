"""Dense univariate polynomials over an abstract coefficient field.

Polynomials are plain lists of coefficients, lowest degree first.  Every
routine takes a *field* object providing ``zero``, ``one``, ``add``, ``sub``,
``neg``, ``mul``, ``inv``, ``iszero`` (semantic zero test, which may raise
:class:`~loja.poly.tower.TowerSplit` over a product of fields) and ``isnull``
(structural zero test, never raises).

The same code serves the rationals and algebraic towers, so Euclid and Yun
run unchanged over both.
"""

from __future__ import annotations


def strip(F, p):
    """Drop semantically zero leading coefficients (in place) and return p."""
    while p and F.iszero(p[-1]):
        p.pop()
    return p


def strip_null(F, p):
    while p and F.isnull(p[-1]):
        p.pop()
    return p


def degree(p):
    return len(p) - 1 if p else -1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return strip_null(F, out)


def sub(F, a, b):
    out = list(a) + [F.zero] * max(0, len(b) - len(a))
    for i, c in enumerate(b):
        out[i] = F.sub(out[i], c)
    return strip_null(F, out)


def scale(F, a, c):
    return strip_null(F, [F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if F.isnull(x):
            continue
        for j, y in enumerate(b):
            if F.isnull(y):
                continue
            out[i + j] = F.add(out[i + j], F.mul(x, y))
    return strip_null(F, out)


def derivative(F, a):
    out = []
    for i in range(1, len(a)):
        out.append(F.mul(F.from_int(i), a[i]))
    return strip_null(F, out)


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def monic(F, a):
    """Scale a semantically stripped polynomial to leading coefficient one."""
    if not a:
        return []
    lc = a[-1]
    if lc == F.one:
        return list(a)
    inv = F.inv(lc)
    out = [F.mul(inv, c) for c in a[:-1]]
    out.append(F.one)
    return out


def divmod_(F, a, b):
    """Quotient and remainder; the leading coefficient of b must be a unit."""
    a = list(a)
    db = len(b) - 1
    if db < 0:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) - 1 < db:
        return [], strip(F, a)
    lc_inv = None if b[-1] == F.one else F.inv(b[-1])
    q = [F.zero] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if F.isnull(c):
            continue
        if lc_inv is not None:
            c = F.mul(c, lc_inv)
        q[k - db] = c
        for i in range(db + 1):
            a[k - db + i] = F.sub(a[k - db + i], F.mul(c, b[i]))
    r = a[:db]
    return strip_null(F, q), strip(F, r)


def exact_quo(F, a, b):
    q, r = divmod_(F, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def gcd(F, a, b):
    """Monic gcd by the Euclidean algorithm."""
    a = strip(F, list(a))
    b = strip(F, list(b))
    while b:
        a, b = b, divmod_(F, a, b)[1]
    return monic(F, a)


def xgcd(F, a, b):
    """Return (g, s, t) with g = s*a + t*b monic."""
    r0, r1 = strip(F, list(a)), strip(F, list(b))
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], s0, t0
    inv = F.inv(r0[-1])
    return ([F.mul(inv, c) for c in r0], [F.mul(inv, c) for c in s0],
            [F.mul(inv, c) for c in t0])


def squarefree_decomposition(F, f):
    """Yun's algorithm; returns [(factor, multiplicity), ...] with monic
    pairwise coprime squarefree factors of positive degree."""
    f = monic(F, strip(F, list(f)))
    if degree(f) <= 0:
        return []
    df = derivative(F, f)
    a = gcd(F, f, df)
    b = exact_quo(F, f, a)
    c = exact_quo(F, df, a)
    d = sub(F, c, derivative(F, b))
    out = []
    i = 1
    while degree(b) > 0:
        a = gcd(F, b, d)
        if degree(a) > 0:
            out.append((a, i))
        b = exact_quo(F, b, a)
        c = exact_quo(F, d, a)
        d = sub(F, c, derivative(F, b))
        i += 1
    return out
