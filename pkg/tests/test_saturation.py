import random

import pytest
from hypothesis import given, strategies as st

from frobtorsor.algebra import FieldSpec, parse_poly
from frobtorsor.descent import AlphaPowers, GL2Char2, MuP, SL2Char2, SpecError, build_gl2_char2
from frobtorsor.frobspace import class_of, span_dim
from frobtorsor.homsolver import hom_dimension
from frobtorsor.saturation import (
    GL2_IMAGE,
    SL2_IMAGE,
    Inconclusive,
    Verdict,
    criterion_alpha,
    criterion_gl2,
    criterion_sl2,
    enumerate_candidates,
    random_sl2,
    search_saturated,
    sl2_quotient_criterion,
    verdict,
)

from helpers import F2, gl2_witness, polys, random_gl2_specs, sl2_witness

F3 = FieldSpec(3)


def test_criterion_alpha_examples():
    assert criterion_alpha(polys(["t"], vars=("t",)))
    assert not criterion_alpha(polys(["t", "t+t^2"], vars=("t",)))
    assert criterion_alpha([])


def test_criterion_sl2_examples():
    assert criterion_sl2(sl2_witness())
    assert not criterion_sl2(*polys(["1", "0", "0", "1"]))
    assert not criterion_sl2(*polys(["1", "a", "a", "1+a^2"]))
    with pytest.raises(SpecError):
        criterion_sl2(*polys(["1", "a", "a", "1"]))


def test_criterion_gl2_examples():
    b = criterion_gl2(gl2_witness())
    assert b.odd_case_hit and b.bullet == 2 and not b.even_case_hit
    b = criterion_gl2(sl2_witness().as_gl2())
    assert b.even_case_hit and b.bullet == 2
    b = criterion_gl2(GL2Char2(*polys(["1", "0", "0", "1"]), 0))
    assert not b.even_case_hit and not b.odd_case_hit and b.bullet is None


def test_gl2_witness_bullet_values():
    f11, f12, f21, f22 = gl2_witness().entries
    dim = lambda *g: span_dim([class_of(h) for h in g])
    assert dim(f12, f22) == 2
    assert dim(f11 * f21, f12 * f22) == 2
    assert dim(f11 * f12, f21 * f22, f11.monomial_like((5,))) == 3


def test_verdict_examples():
    v = verdict(MuP(6, F3))
    assert not v.saturated and v.hom_dimension == 3 and v.criterion_agrees
    v = verdict(sl2_witness())
    assert v.saturated and v.criterion_agrees and v.hom_dimension == 2 and v.image_note == SL2_IMAGE
    v = verdict(sl2_witness().as_gl2())
    assert not v.saturated and v.hom_dimension == 2 and v.image_note == SL2_IMAGE
    v = verdict(gl2_witness())
    assert v.saturated and v.hom_dimension == 1 and v.image_note == GL2_IMAGE and v.criterion_agrees


def test_verdict_methods_and_json():
    for method in ("criterion", "solver", "both"):
        v = verdict(MuP(3, F2), method)
        assert v.saturated and v.method == method
        obj = v.to_json()
        assert set(obj) >= {"format", "saturated", "method", "hom_dimension", "image_note", "all_heights"}
    with pytest.raises(ValueError):
        verdict(MuP(3, F2), "oracle")
    with pytest.raises(ValueError):
        Verdict(True, "both", all_heights=False)


def test_gl2_criterion_inconclusive_without_solver():
    for spec in random_gl2_specs(40, seed=41, max_m=7):
        if spec.m % 2 and not criterion_gl2(spec).odd_case_hit:
            with pytest.raises(Inconclusive):
                verdict(spec, "criterion")
            return
    pytest.fail("no undecided odd-m instance found")


def test_gl2_odd_bullets_imply_saturated():
    hits = 0
    for spec in random_gl2_specs(60, seed=42, degree=3, max_m=9):
        if criterion_gl2(spec).odd_case_hit:
            hits += 1
            assert hom_dimension(build_gl2_char2(spec)) == 1
    assert hits


def test_gl2_even_m_never_saturated():
    for spec in random_gl2_specs(20, seed=43):
        if spec.m % 2 == 0:
            assert hom_dimension(build_gl2_char2(spec)) >= 2


@given(st.integers(-12, 12), st.sampled_from([2, 3, 5]))
def test_mu_verdict_depends_on_m_mod_p(m, p):
    F = FieldSpec(p)
    assert verdict(MuP(m, F)).saturated == verdict(MuP(m % p, F)).saturated
    v = verdict(MuP(m, F))
    assert v.all_heights == v.saturated


def test_alpha_oracle_equivalence_p3_n2():
    rng = random.Random(44)
    for _ in range(60):
        f = [parse_poly("0", F3, ("x",)) + sum_terms(rng) for _ in range(rng.randint(1, 2))]
        v = verdict(AlphaPowers(tuple(f)), "both")
        assert v.criterion_agrees


def sum_terms(rng):
    return parse_poly(" + ".join(f"{rng.randrange(3)}*x^{k}" for k in range(5)), F3, ("x",))


def test_sl2_quotient_criterion_exhaustive():
    for spec in enumerate_candidates("sl2_char2", F2, 3):
        dim = hom_dimension(build_gl2_char2(spec.as_gl2()))
        assert sl2_quotient_criterion(spec) == (dim == 2)
        if criterion_sl2(spec):
            assert dim == 2


def test_sl2_quotient_criterion_random_degree6():
    rng = random.Random(45)
    for _ in range(25):
        spec = random_sl2(rng, F2, 6, "a")
        dim = hom_dimension(build_gl2_char2(spec.as_gl2()))
        assert sl2_quotient_criterion(spec) == (dim == 2)


def test_sl2_criterion_not_necessary():
    spec = SL2Char2(*polys(["1", "a", "a", "1+a^2"]))
    assert not criterion_sl2(spec)
    assert hom_dimension(build_gl2_char2(spec.as_gl2())) == 2


def test_search_sl2_contains_witness():
    found = search_saturated("sl2_char2", 3)
    assert sl2_witness() in found
    assert found == search_saturated("sl2_char2", 3, workers=2)


def test_search_alpha_exhaustive():
    found = search_saturated("alpha", 2)
    expected = [f for f in enumerate_candidates("alpha", F2, 2) if not class_of(f.f[0]).is_zero()]
    assert found == expected
    assert sorted(str(s) for s in found) == sorted(str(s) for s in expected)
    assert len(found) == 4


def test_search_budget_and_seed():
    assert search_saturated("alpha", 3, budget=0) == []
    a = search_saturated("sl2_char2", 4, budget=3, mode="random", seed=7)
    b = search_saturated("sl2_char2", 4, budget=3, mode="random", seed=7)
    assert a == b and len(a) == 3
    with pytest.raises(SpecError):
        search_saturated("alpha", 2, budget=2, mode="random")
    with pytest.raises(SpecError):
        search_saturated("sl2_char2", 9)


def test_random_sl2_is_sl2():
    rng = random.Random(46)
    for _ in range(20):
        s = random_sl2(rng, F2, 5, "a")
        f11, f12, f21, f22 = s.entries
        assert f11 * f22 - f12 * f21 == 1
        assert max(g.degree() for g in s.entries) <= 5
