import pytest
from hypothesis import given, strategies as st

from frobtorsor.algebra import FieldError, FieldSpec, FqElement

from oracles import decode, encode, poly_mulmod

FIELDS = [FieldSpec(2), FieldSpec(3), FieldSpec(5), FieldSpec(2, 2), FieldSpec(2, 3),
          FieldSpec(3, 2), FieldSpec(5, 2), FieldSpec(2, 4)]


def test_f4_uses_x2_x_1():
    F = FieldSpec(2, 2)
    assert F.modulus == (1, 1, 1)
    w = F.generator()
    assert F.add(F.mul(w, w), F.add(w, 1)) == 0


@pytest.mark.parametrize("F", [f for f in FIELDS if f.e > 1], ids=str)
def test_multiplication_matches_schoolbook(F):
    p, e = F.p, F.e
    for a in range(F.q):
        for b in range(F.q):
            ref = encode(poly_mulmod(decode(a, p, e), decode(b, p, e), F.modulus, p), p)
            assert F.mul(a, b) == ref


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_field_axioms_exhaustive(F):
    for a in range(F.q):
        assert F.add(a, F.neg(a)) == 0
        assert F.pow(a, F.q) == a
        assert F.pow(F.pth_root(a), F.p) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in range(F.q):
            s = F.add(a, b)
            assert F.sub(s, b) == a
            # additive structure is digitwise
            assert decode(s, F.p, F.e) == [(x + y) % F.p for x, y in
                                           zip(decode(a, F.p, F.e), decode(b, F.p, F.e))]


def test_f4_root_of_w():
    F = FieldSpec(2, 2)
    w = F.element(F.generator())
    assert w.pth_root() == w * w
    assert (w * w) ** 2 == w


def test_bounds_rejected():
    with pytest.raises(FieldError):
        FieldSpec(4)
    with pytest.raises(FieldError):
        FieldSpec(2, 17)
    with pytest.raises(FieldError):
        FieldSpec(2**31 + 11)
    with pytest.raises(FieldError):
        FieldSpec(3, 0)


def test_large_prime_ok():
    F = FieldSpec(2147483647)
    a = F.from_int(-5)
    assert F.mul(a, F.inv(a)) == 1


def test_cross_field_rejected():
    a = FieldSpec(2).element(1)
    b = FieldSpec(3).element(1)
    with pytest.raises(FieldError):
        a + b


@pytest.mark.parametrize("F", FIELDS, ids=str)
def test_element_wrapper(F):
    for v in range(F.q):
        x = FqElement(F, v)
        assert x + 0 == x
        assert x * 1 == x
        assert -(-x) == x
        if v:
            assert x / x == 1
            assert x.inverse() * x == 1


@given(st.integers(0, 80), st.integers(0, 80), st.integers(0, 80))
def test_f81_distributive(a, b, c):
    F = FieldSpec(3, 4)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_format_value():
    F = FieldSpec(2, 2)
    assert F.format_value(0) == "0"
    assert F.format_value(F.generator()) == "w"
    assert F.format_value(3) == "w+1"
