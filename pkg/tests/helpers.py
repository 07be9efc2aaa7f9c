"""Shared fixtures-as-functions for the test modules."""

import random

from frobtorsor.algebra import FieldSpec, parse_poly
from frobtorsor.descent import GL2Char2, SL2Char2
from frobtorsor.saturation import random_gl2

F2 = FieldSpec(2)

SL2_WITNESS_MORPHISM = ("1+a^2+a^3", "a", "a+a^2", "1")
GL2_WITNESS_F = ("a^4", "a^3", "a^5", "a^4+a")
GL2_WITNESS_MORPHISM = ("a^-1+a^-4", "a^-2", "1", "a^-1")


def polys(texts, field=F2, vars=("a",)):
    out = [parse_poly(t, field, vars) for t in texts]
    laurent = (any(f.laurent[0] for f in out),)
    return [f.with_laurent(laurent) for f in out]


def sl2_witness() -> SL2Char2:
    return SL2Char2.from_morphism(*polys(SL2_WITNESS_MORPHISM))


def gl2_witness() -> GL2Char2:
    return GL2Char2(*polys(GL2_WITNESS_F), 5)


def expset(f):
    return frozenset(e[0] for e in f.terms)


def random_gl2_specs(count, seed, degree=2, max_m=6):
    rng = random.Random(seed)
    return [random_gl2(rng, F2, degree, rng.randint(0, max_m), "a") for _ in range(count)]
