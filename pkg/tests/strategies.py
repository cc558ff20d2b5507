"""Hypothesis strategies shared by the test modules."""

from fractions import Fraction

from hypothesis import strategies as st

from loja.poly import MultiPoly

V2 = ("x", "y")

small_fracs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 4))


@st.composite
def polys(draw, variables=V2, max_deg=4, max_terms=6):
    n = len(variables)
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.integers(0, max_deg)) for _ in range(n))
        if sum(e) > max_deg:
            continue
        terms[e] = draw(small_fracs)
    return MultiPoly(variables, terms)
