from fractions import Fraction

import pytest
from flint import acb, arb, ctx, fmpq
from hypothesis import given
from hypothesis import strategies as st

from loja.poly import eval_ball, parse_poly

V = ("x", "y")


@given(st.integers(-50, 50), st.integers(1, 9), st.integers(-50, 50), st.integers(1, 9))
def test_ball_contains_exact_value(a, b, c, d):
    p = parse_poly("3*x^5*y - x^2*y^3 + 7/3*y - 1", V)
    pt = (Fraction(a, b), Fraction(c, d))
    exact = p.evaluate(pt)
    ball = eval_ball(p, pt, 64)
    # convert the exact value at high precision so its own rounding is negligible
    with ctx.workprec(2000):
        assert ball.real.contains(arb(fmpq(exact.numerator, exact.denominator)))
        assert ball.imag.contains(0)


def test_width_shrinks_with_precision():
    p = parse_poly("(x + y)^6 - x^3*y^3 + 1/7", V)
    widths = []
    for prec in (32, 64, 128, 256):
        with ctx.workprec(prec):
            pt = [acb(arb(1) / 3, arb(2).sqrt()), acb(arb(1) / 3)]
            widths.append(float(eval_ball(p, pt, prec).rad()))
    assert all(w2 <= w1 for w1, w2 in zip(widths, widths[1:]))
    assert widths[-1] < widths[0] * 2.0 ** -100


def test_precision_floor():
    with pytest.raises(ValueError):
        eval_ball(parse_poly("x", V), [1, 2], 16)
