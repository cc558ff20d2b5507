import math
import random
from fractions import Fraction

import pytest
from flint import ctx

from loja import DegenerateCase, MappingSpec, is_proper, lojasiewicz_exponent
from loja.engine import branch_point
from loja.poly import MultiPoly, parse_poly
from loja.testing import random_suite

NEG_INF = float("-inf")
V = ("x", "y")


def E(*comps, seed=0):
    return lojasiewicz_exponent(MappingSpec.from_strings(comps), seed).exponent


@pytest.mark.parametrize("comps,value", [
    (("x", "y"), Fraction(1)),
    (("x", "x*y - 1"), Fraction(-1)),
    (("y", "x - y^3"), Fraction(1, 3)),
    (("x + y", "x - y"), Fraction(1)),
    (("y^2 - x^3", "x"), Fraction(2, 3)),
    (("x^2*y - 1", "x"), Fraction(-1, 2)),
    (("x", "x - y^2 + 1"), Fraction(1)),
    (("x", "-x^2 + y + 1"), Fraction(1, 2)),
])
def test_golden_values(comps, value):
    assert E(*comps) == value


def test_degenerate_cases():
    r = lojasiewicz_exponent(MappingSpec.from_strings(["x", "x"]))
    assert r.exponent == NEG_INF and r.degenerate_case is DegenerateCase.COMMON_FACTOR
    assert not r.proper
    r = lojasiewicz_exponent(MappingSpec.from_strings(["3", "-1/2"]))
    assert r.exponent == 0 and r.degenerate_case is DegenerateCase.S_EMPTY
    r = lojasiewicz_exponent(MappingSpec.from_strings(["0", "0"]))
    assert r.exponent == NEG_INF and r.degenerate_case is DegenerateCase.ALL_COMPONENTS_ZERO
    # a zero component is dropped; a common factor of the rest still counts
    assert E("0", "x*y", "x^2") == NEG_INF
    assert E("0", "x", "y") == 1


def test_rejects_other_dimensions():
    F = MappingSpec.from_strings(["x", "y", "z"], ("x", "y", "z"))
    with pytest.raises(ValueError):
        lojasiewicz_exponent(F)


SUITE = random_suite(25, 11)


@pytest.mark.parametrize("idx", range(len(SUITE)))
def test_seed_invariance_and_rationality(idx):
    F = SUITE[idx]
    reps = [lojasiewicz_exponent(F, s) for s in range(4)]
    assert len({r.exponent for r in reps}) == 1
    r = reps[0]
    if r.exponent != NEG_INF and r.degenerate_case is DegenerateCase.NONE:
        assert isinstance(r.exponent, Fraction)
        assert any(v.deg_phi % r.exponent.denominator == 0 for v in r.branch_verdicts)
        assert r.branch_verdicts[r.witness].lam == r.exponent
    assert r.proper == (r.exponent > 0)
    assert is_proper(F) == (r.proper, r.exponent)


def _invariances(F):
    base = lojasiewicz_exponent(F).exponent
    comps = list(F.components)
    # reordering and nonzero scaling of components
    assert lojasiewicz_exponent(MappingSpec(V, tuple(reversed(comps)))).exponent == base
    assert lojasiewicz_exponent(MappingSpec(V, tuple(c.scale(Fraction(-3, 2)) for c in comps))).exponent == base
    # repeating a component
    assert lojasiewicz_exponent(MappingSpec(V, tuple(comps + comps[:1]))).exponent == base
    # invertible linear change of the source
    M = [[2, 1], [1, 1]]
    assert lojasiewicz_exponent(MappingSpec(V, tuple(c.linear_change(M) for c in comps))).exponent == base
    # powers of all components multiply the exponent
    powered = lojasiewicz_exponent(MappingSpec(V, tuple(c ** 2 for c in comps))).exponent
    assert powered == (2 * base if base != NEG_INF else NEG_INF)
    return base


@pytest.mark.parametrize("idx", range(10))
def test_covariance_properties(idx):
    _invariances(SUITE[idx])


@pytest.mark.parametrize("idx", range(10))
def test_appending_a_constant(idx):
    F = SUITE[idx]
    r = lojasiewicz_exponent(F)
    if r.degenerate_case is not DegenerateCase.NONE:
        return
    G = MappingSpec(V, F.components + (MultiPoly.constant(V, 5),))
    # S is unchanged and |G| >= max(|F|, 5): each branch degree is clipped at 0
    want = min(Fraction(max(v.deg_F_compose, 0), v.deg_phi) for v in r.branch_verdicts)
    assert lojasiewicz_exponent(G).exponent == want


def test_fast_path_agrees():
    for F in SUITE[:12]:
        a = lojasiewicz_exponent(F, fast_path=True)
        b = lojasiewicz_exponent(F, fast_path=False)
        assert a.exponent == b.exponent
        assert [v.lam for v in a.branch_verdicts] == [v.lam for v in b.branch_verdicts]


def test_witness_branch_attains_the_exponent_numerically():
    F = MappingSpec.from_strings(["y", "x - y^3"])
    r = lojasiewicz_exponent(F, seed=2)
    logs = []
    for t in (1e4, 1e5):
        z, vals = branch_point(r, r.witness, t)
        nz = max(abs(complex(w)) for w in z)
        nf = max(abs(complex(v)) for v in vals)
        logs.append((math.log(nz), math.log(nf)))
    slope = (logs[1][1] - logs[0][1]) / (logs[1][0] - logs[0][0])
    assert abs(slope - 1 / 3) < 1e-3


def test_branch_points_lie_on_S():
    from dataclasses import replace

    from loja.puiseux import extend_branch

    F = MappingSpec.from_strings(["x*y - 1", "x + y^2"])
    r = lojasiewicz_exponent(F, seed=1)
    deep = replace(r, branch_verdicts=tuple(
        replace(v, branch=extend_branch(v.branch, -12)) for v in r.branch_verdicts))
    for i in range(len(r.branch_verdicts)):
        z, vals = branch_point(deep, i, 1e3)
        nz = max(abs(complex(w)) for w in z)
        prod = abs(complex(vals[0]) * complex(vals[1]))
        assert nz > 1e2
        assert prod < 1e-12 * nz ** 4
