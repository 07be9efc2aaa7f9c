import itertools

import pytest
from hypothesis import given, strategies as st

from frobtorsor import bounds
from frobtorsor.descent import MuP
from frobtorsor.algebra import FieldSpec
from frobtorsor.saturation import verdict


def test_h1_mu_examples():
    assert bounds.h1_mu(bounds.CurveData.affine_line(2), 4).rank == 0
    g = bounds.h1_mu(bounds.CurveData.multiplicative_group(2), 3)
    assert (g.modulus, g.rank, str(g)) == (8, 1, "Z/8Z")
    g = bounds.h1_mu(bounds.CurveData(5, 2, 3), 1)
    assert (g.modulus, g.rank, str(g)) == (5, 4, "(Z/5Z)^4")
    assert str(bounds.h1_mu(bounds.CurveData.affine_line(3), 1)) == "0"


def test_h1_alpha_basis():
    assert [str(t) for t in bounds.h1_alpha_basis(2, 6)] == ["t", "t^3", "t^5"]
    assert [str(t) for t in bounds.h1_alpha_basis(3, 3)] == ["t", "t^2"]
    assert bounds.h1_alpha_basis(2, 0) == []


def test_embedding_examples():
    trivial = bounds.CharacterGroup(2)
    for gamma, n in itertools.product(range(3), range(1, 4)):
        assert bounds.embedding_check(trivial, bounds.CurveData(2, gamma, n))
    for r in range(1, 6):
        assert bounds.embedding_check(bounds.CharacterGroup(2, (2**r,)), bounds.CurveData.multiplicative_group(2))
    assert not bounds.embedding_check(bounds.CharacterGroup(3, (3, 3)), bounds.CurveData.affine_line(3))


def test_validation():
    with pytest.raises(ValueError):
        bounds.CurveData(2, 0, 0)
    with pytest.raises(ValueError):
        bounds.CurveData(4, 0, 1)
    with pytest.raises(ValueError):
        bounds.CharacterGroup(2, (6,))
    with pytest.raises(ValueError):
        bounds.CharacterGroup(3, (1,))
    with pytest.raises(ValueError):
        bounds.embedding_check(bounds.CharacterGroup(2, (2,)), bounds.CurveData(3, 0, 2))
    with pytest.raises(ValueError):
        bounds.h1_mu(bounds.CurveData(2, 0, 1), 0)


def test_summarize():
    assert bounds.summarize(bounds.CharacterGroup(2)) == "1"
    assert bounds.summarize(bounds.character_group_of(2, [4, 2, 4])) == "Z/2Z x Z/4Z^2"


@given(st.sampled_from([2, 3, 5]), st.integers(0, 4), st.integers(1, 4),
       st.lists(st.integers(1, 3), max_size=6), st.integers(0, 2), st.integers(0, 2))
def test_embedding_monotone(p, gamma, n, exps, dg, dn):
    X = bounds.CharacterGroup(p, tuple(p**k for k in exps))
    if bounds.embedding_check(X, bounds.CurveData(p, gamma, n)):
        assert bounds.embedding_check(X, bounds.CurveData(p, gamma + dg, n + dn))


@given(st.sampled_from([2, 3, 5]), st.integers(0, 3), st.integers(1, 3), st.integers(1, 5))
def test_h1_mu_shape(p, gamma, n, m):
    g = bounds.h1_mu(bounds.CurveData(p, gamma, n), m)
    assert g.modulus == p**m and g.rank == gamma + n - 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_mu_tower_consistency(p):
    gm = bounds.CurveData.multiplicative_group(p)
    for m in range(1, 4):
        assert bounds.embedding_check(bounds.CharacterGroup(p, (p**m,)), gm)
    assert verdict(MuP(1, FieldSpec(p))).saturated
