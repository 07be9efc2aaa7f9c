import random

import pytest

from frobtorsor import bertini
from frobtorsor.algebra import FieldSpec, MultiPoly, parse_poly
from frobtorsor.descent import AlphaPowers, SpecError
from frobtorsor.frobspace import class_of
from frobtorsor.homsolver import hom_dimension
from frobtorsor.descent import build_alpha
from frobtorsor.saturation import criterion_alpha, random_poly

F2, F3 = FieldSpec(2), FieldSpec(3)
XY = ("x1", "x2")


def P(s, F=F2, vars=XY):
    return parse_poly(s, F, vars)


def test_plan_p2():
    pl = bertini.plan([[class_of(P("x1")), class_of(P("x2"))]], 2)
    assert (pl.d, pl.M, pl.N) == (1, 3, 3)
    assert pl.g == parse_poly("x1^8+x1^3", F2, ("x1",))


def test_plan_p3():
    pl = bertini.plan([[class_of(P("x1", F3))]], 2)
    assert (pl.M, pl.N) == (2, 2)


def test_plan_empty():
    pl = bertini.plan([], 3, ring=(F3, ("x1", "x2", "x3"), (False,) * 3))
    assert (pl.d, pl.M, pl.N) == (0, 1, 1)
    assert pl.g == parse_poly("x1^3*x2^3 + x1^3*x2 + x1*x2^3 + x1*x2", F3, ("x1", "x2"))


def test_plan_errors():
    with pytest.raises(SpecError):
        bertini.plan([[class_of(parse_poly("x1", F2, ("x1",)))]], 1)
    with pytest.raises(ValueError):
        bertini.BertiniPlan(2, 2, 1, 2, 3, P("x1"))


def test_substitute_and_verify_examples():
    V = [[class_of(P("x1")), class_of(P("x2"))]]
    pl = bertini.plan(V, 2)
    assert bertini.substitute_and_verify(V, pl)
    images = [class_of(bertini.apply_substitution(c.rep, pl.g)) for c in V[0]]
    assert [str(c.rep) for c in images] == ["x1", "x1^3"]
    assert bertini.substitute_and_verify([[class_of(P("0"))]], pl)
    bad = parse_poly("x1^2", F2, ("x1",))
    assert not bertini.substitute_and_verify([[class_of(P("x2"))]], pl, g=bad)


def test_reduce_examples():
    r = bertini.reduce_torsor(AlphaPowers((P("x1"), P("x2"))))
    assert r.spec.f == tuple(parse_poly(s, F2, ("x1",)) for s in ("x1", "x1^8+x1^3"))
    assert r.hom_dimension == 1
    r = bertini.reduce_torsor(AlphaPowers((P("x2"),)))
    assert r.spec.f == (parse_poly("x1^8+x1^3", F2, ("x1",)),)
    with pytest.raises(bertini.NotSaturated):
        bertini.reduce_torsor(AlphaPowers((P("x1^2"),)))
    with pytest.raises(SpecError):
        bertini.reduce_torsor(AlphaPowers((parse_poly("x", F2),)))


def test_reduce_over_f4_uses_frobenius_on_coefficients():
    F4 = FieldSpec(2, 2)
    f = (parse_poly("w*x1 + x2", F4, XY),)
    r = bertini.reduce_torsor(AlphaPowers(f))
    assert criterion_alpha(r.spec)


def _random_saturated(rng, p, nvars, count):
    F = FieldSpec(p)
    vars = tuple(f"x{i + 1}" for i in range(nvars))
    out = []
    while len(out) < count:
        f = tuple(random_poly(rng, F, vars, 3, density=0.4) for _ in range(rng.randint(1, 2)))
        if criterion_alpha(f):
            out.append(AlphaPowers(f))
    return out


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("nvars", [2, 3])
def test_iterated_reduction_stays_saturated(p, nvars):
    rng = random.Random(100 * p + nvars)
    for spec in _random_saturated(rng, p, nvars, 5):
        steps = bertini.reduce_to_line(spec)
        assert len(steps) == nvars - 1
        for s in steps:
            assert hom_dimension(build_alpha(s.spec)) == 1
        assert steps[-1].spec.f[0].nvars == 1


@pytest.mark.parametrize("p,d,n", [(2, 1, 2), (2, 3, 2), (3, 2, 2), (2, 2, 3), (5, 2, 3)])
def test_monomial_families_disjoint(p, d, n):
    F = FieldSpec(p)
    vars = tuple(f"x{i + 1}" for i in range(n))
    V = [[class_of(MultiPoly.monomial(F, vars, (d,) + (0,) * (n - 2) + (1,)))]]
    pl = bertini.plan(V, n)
    assert pl.d == d
    a, b, c = bertini.monomial_families(pl)
    assert not (a & b) and not (a & c) and not (b & c)
    assert b and c
