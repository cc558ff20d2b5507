"""Seeded generators of random polynomial maps and curves for test suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .engine import MappingSpec
from .poly.multipoly import MultiPoly

VARS = ("x", "y")


def random_poly(rng: random.Random, degree: int, density: float = 0.6, height: int = 3,
                variables=VARS) -> MultiPoly:
    """Random polynomial of exact total degree ``degree`` (integer coefficients)."""
    terms = {}
    for d in range(degree + 1):
        for a in range(d + 1):
            if rng.random() < density:
                c = rng.randint(-height, height)
                if c:
                    terms[(a, d - a)] = c
    # make sure the top degree is present
    top = [(a, degree - a) for a in range(degree + 1)]
    if not any(e in terms for e in top):
        terms[rng.choice(top)] = rng.choice([-1, 1]) * rng.randint(1, height)
    return MultiPoly(variables, terms)


def random_sparse(rng: random.Random, degree: int, height: int = 3, variables=VARS):
    nterms = rng.randint(2, 3)
    terms = {}
    a = rng.randint(0, degree)
    terms[(a, degree - a)] = rng.choice([-1, 1]) * rng.randint(1, height)
    while len(terms) < nterms:
        d = rng.randint(0, degree)
        a = rng.randint(0, d)
        terms[(a, d - a)] = rng.choice([-1, 1]) * rng.randint(1, height)
    return MultiPoly(variables, terms)


def _structured(rng: random.Random, variables=VARS):
    x = MultiPoly.var(variables, variables[0])
    y = MultiPoly.var(variables, variables[1])
    one = MultiPoly.constant(variables, 1)
    k = rng.randint(1, 3)
    choices = [
        lambda: (x, x * y - one),
        lambda: (y, x - y ** (k + 1)),
        lambda: (x ** k, y - x ** 2 + one),
        lambda: (x * y, x + y),
        lambda: (x - y ** 2, x * y ** 2 - one),
        lambda: (x + y ** 2, y + x ** 2),
        lambda: (x ** 2 * y - one, x),
        lambda: (y ** 2 - x ** 3, x * y - 2 * one),
    ]
    return rng.choice(choices)()


def random_map(rng: random.Random, max_degree: int = 4) -> MappingSpec:
    """A random map of two components drawn from dense, sparse and structured families."""
    kind = rng.random()
    if kind < 0.4:
        comps = tuple(random_poly(rng, rng.randint(1, max_degree), density=rng.uniform(0.3, 0.8))
                      for _ in range(2))
    elif kind < 0.75:
        comps = tuple(random_sparse(rng, rng.randint(1, max_degree)) for _ in range(2))
    else:
        comps = _structured(rng)
    return MappingSpec(VARS, comps)


def random_suite(n: int, seed: int, max_degree: int = 4):
    rng = random.Random(seed)
    return [random_map(rng, max_degree) for _ in range(n)]


def random_curve(rng: random.Random, max_degree: int = 6):
    """Random squarefree degree-regular curve ``h`` (deg h = deg_x h = deg_y h)."""
    from .poly.gcd import squarefree_part
    from .poly.multipoly import is_degree_regular

    while True:
        d = rng.randint(1, max_degree)
        kind = rng.random()
        if kind < 0.35:
            h = random_poly(rng, d, density=rng.uniform(0.3, 0.9))
        elif kind < 0.7:
            h = _singular_at_infinity(rng, max_degree)
        else:
            # product of two random factors: exercises towers with several levels
            d1 = rng.randint(1, max(1, d - 1))
            h = random_poly(rng, d1) * random_poly(rng, max(1, d - d1))
        if h.is_constant() or not is_degree_regular(h):
            continue
        if squarefree_part(h) != h.primitive():
            continue
        return h.primitive()


def _singular_at_infinity(rng: random.Random, max_degree: int):
    """Leading form with repeated factors plus random lower terms.

    Such curves have ramified places at infinity, and repeated quadratic
    factors such as ``(y^2 - 2x^2)^2`` give towers with several levels.
    """
    x = MultiPoly.var(VARS, "x")
    y = MultiPoly.var(VARS, "y")
    one = MultiPoly.constant(VARS, 1)
    if rng.random() < 0.5 and max_degree >= 4:
        a = rng.choice([2, 3, 5, -1, -2])
        base = y ** 2 - a * x ** 2 + rng.randint(-2, 2) * x * y
        k = rng.randint(2, max_degree // 2)
    else:
        a = rng.randint(-2, 2) or 1
        base = y - a * x
        k = rng.randint(2, max_degree)
    lead = base ** k
    if rng.random() < 0.5 and lead.total_degree() < max_degree:
        lead = lead * (x + rng.randint(-2, 2) * y if rng.random() < 0.5 else y + rng.randint(-2, 2) * x)
    d = lead.total_degree()
    low = random_poly(rng, rng.randint(0, d - 1), density=rng.uniform(0.2, 0.7)) if d > 1 else one
    return lead + low


def as_fraction(v):
    return v if isinstance(v, float) else Fraction(v)
