import cmath
from fractions import Fraction

import numpy as np
import pytest
from flint import acb, ctx
from hypothesis import given
from hypothesis import strategies as st

from loja.poly import (AlgebraicNumber, FieldTower, NotSquarefreeError, TowerSplit, UniPolyExt,
                       eval_ball, tower_extend)
from loja.poly import upoly
from loja.poly.tower import FRAC

Q = FieldTower.rationals()


def adjoin(tower, coeffs):
    return tower_extend(tower, UniPolyExt(tower, coeffs))


# -- generic univariate arithmetic over Q (Fraction field) ------------------

fr_polys = st.lists(st.builds(Fraction, st.integers(-6, 6), st.integers(1, 3)), max_size=5)


@given(fr_polys, fr_polys)
def test_upoly_divmod_and_gcd(a, b):
    a, b = upoly.strip(FRAC, a), upoly.strip(FRAC, b)
    if not b:
        return
    q, r = upoly.divmod_(FRAC, a, b)
    assert upoly.strip(FRAC, upoly.add(FRAC, upoly.mul(FRAC, q, b), r)) == a
    assert len(r) < len(b)
    g, s, t = upoly.xgcd(FRAC, a, b)
    lhs = upoly.add(FRAC, upoly.mul(FRAC, s, a), upoly.mul(FRAC, t, b))
    assert upoly.strip(FRAC, lhs) == g
    assert g == upoly.gcd(FRAC, a, b)


def test_squarefree_decomposition():
    # (t - 1)^3 (t + 2)
    f = upoly.mul(FRAC, [Fraction(-1), Fraction(3), Fraction(-3), Fraction(1)], [Fraction(2), Fraction(1)])
    parts = upoly.squarefree_decomposition(FRAC, f)
    assert {m: tuple(p) for p, m in parts} == {1: (2, 1), 3: (-1, 1)}


# -- towers ------------------------------------------------------------------

def test_sqrt2_enclosure_and_arithmetic():
    T, a = adjoin(Q, [1, 0, -2])
    assert T.level_degrees == (2,)
    with ctx.workprec(200):
        e = a.enclosure(200)
        assert (e + acb(2).sqrt()).abs_upper() < 2.0 ** -150  # smallest real part first
    assert a * a == 2
    assert (a + 1) * (a - 1) == 1
    assert (a + 1).inverse() * (a + 1) == 1
    assert abs(complex(1 / (a + 1)) - 1 / (1 - 2 ** 0.5)) < 1e-12
    assert not a.is_rational()
    assert (a * a).is_rational() and (a * a).to_rational() == 2


def test_degree_four_tower_matches_complex_arithmetic():
    T1, a = adjoin(Q, [1, 0, -2])
    T2, b = adjoin(T1, [1, 0, -3])
    a = AlgebraicNumber(T2, T2.lift(a.raw, 1))
    assert T2.degree == 4 and T2.level_degrees == (2, 2)
    za, zb = complex(a), complex(b)
    assert abs(za + 2 ** 0.5) < 1e-12 and abs(zb + 3 ** 0.5) < 1e-12
    x = (a + b) ** 3 - a * b * 5 + Fraction(1, 7)
    zx = (za + zb) ** 3 - za * zb * 5 + 1 / 7
    assert abs(complex(x) - zx) < 1e-9
    y = x.inverse()
    assert abs(complex(y) - 1 / zx) < 1e-12
    assert x * y == 1


def test_embeddings_are_all_roots():
    T, _ = adjoin(Q, [1, 0, 0, -2])  # cube root of 2
    embs = T.embeddings(64)
    vals = sorted((complex(float(g[0].real.mid()), float(g[0].imag.mid())) for g in embs),
                  key=lambda z: (z.real, z.imag))
    want = sorted(np.roots([1, 0, 0, -2]), key=lambda z: (z.real, z.imag))
    assert len(vals) == 3
    for u, v in zip(vals, want):
        assert abs(u - v) < 1e-12


def test_irreducible_over_q_is_certified_and_never_splits():
    T, a = adjoin(Q, [1, 0, -2])
    assert T.levels[0].certified
    with pytest.raises(NotSquarefreeError):
        adjoin(Q, [1, -2, 1])


def test_linear_polynomial_gives_explicit_root():
    T, r = adjoin(Q, [3, -1])
    assert T is Q and r.to_rational() == Fraction(1, 3)


def test_reducible_level_splits_on_zero_divisor():
    T1, a = adjoin(Q, [1, 0, -2])
    # b^2 = 1/8 has the roots +-a/4 inside Q(a): level 2 is not a field
    T2, b = adjoin(T1, [1, 0, Fraction(-1, 8)])
    a2 = AlgebraicNumber(T2, T2.lift(a.raw, 1))
    d = b - a2 * Fraction(1, 4)
    with pytest.raises(TowerSplit) as info:
        d.is_zero()
    err = info.value
    assert err.level == 2
    assert len(err.factor) == 2 and len(err.cofactor) == 2
    # both halves are degree-one levels; the element is zero on exactly one
    verdicts = []
    for part in (err.factor, err.cofactor):
        S = T2.split(2, part)
        assert S.level_degrees == (2, 1)
        dd = AlgebraicNumber(S, T2.project(d.raw, S, 2))
        verdicts.append(dd.is_zero())
        # ring homomorphism: projection commutes with multiplication
        prod = AlgebraicNumber(S, T2.project((d * d + a2).raw, S, 2))
        assert prod == dd * dd + AlgebraicNumber(S, S.lift(a.raw, 1))
    assert sorted(verdicts) == [False, True]


def test_inverse_of_zero_divisor_splits():
    T1, a = adjoin(Q, [1, 0, -2])
    T2, b = adjoin(T1, [1, 0, Fraction(-1, 8)])
    a2 = AlgebraicNumber(T2, T2.lift(a.raw, 1))
    with pytest.raises(TowerSplit):
        (b + a2 * Fraction(1, 4)).inverse()


def test_unipolyext_evaluation_and_ball():
    T, a = adjoin(Q, [1, 0, -2])
    p = UniPolyExt(T, [1, a, -3])   # t^2 + a t - 3
    v = p(a)
    assert v == 1
    with ctx.workprec(128):
        ball = eval_ball(p, [acb(2)], 128)
        assert abs(complex(float(ball.real.mid()), 0) - (4 - 2 * 2 ** 0.5 - 3)) < 1e-12
