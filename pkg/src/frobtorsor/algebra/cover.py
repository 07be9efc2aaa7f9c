"""Cover rings k[u_1..u_n] with u_i^p = x_i, and the p-th root map into them."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .field import FieldSpec
from .poly import MultiPoly, RingMismatch


@dataclass(frozen=True)
class CoverRing:
    """Base ring k[x] together with its Frobenius cover k[u], u^p = x."""

    field: FieldSpec
    base_vars: tuple
    cover_vars: tuple
    laurent: tuple

    @classmethod
    def over(cls, field: FieldSpec, base_vars: Sequence[str], laurent=False, cover_vars=None):
        base_vars = tuple(base_vars)
        if cover_vars is None:
            cover_vars = tuple(v + "'" for v in base_vars)
        cover_vars = tuple(cover_vars)
        if len(cover_vars) != len(base_vars):
            raise RingMismatch("cover and base need the same number of variables")
        if isinstance(laurent, bool):
            laurent = (laurent,) * len(base_vars)
        return cls(field, base_vars, cover_vars, tuple(bool(b) for b in laurent))

    @classmethod
    def of(cls, f: MultiPoly, cover_vars=None) -> "CoverRing":
        return cls.over(f.field, f.vars, f.laurent, cover_vars)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.base_vars)

    @property
    def base_ring(self) -> tuple:
        return (self.field, self.base_vars, self.laurent)

    @property
    def cover_ring(self) -> tuple:
        return (self.field, self.cover_vars, self.laurent)

    # constructors in the cover ring
    def zero(self) -> MultiPoly:
        return MultiPoly.zero(self.field, self.cover_vars, self.laurent)

    def one(self) -> MultiPoly:
        return MultiPoly.one(self.field, self.cover_vars, self.laurent)

    def constant(self, c) -> MultiPoly:
        return MultiPoly.constant(self.field, self.cover_vars, c, self.laurent)

    def monomial(self, exp, c=1) -> MultiPoly:
        return MultiPoly.monomial(self.field, self.cover_vars, exp, c, self.laurent)

    def var(self, i: int) -> MultiPoly:
        return MultiPoly.variable(self.field, self.cover_vars, self.cover_vars[i], self.laurent)

    def _check_base(self, f: MultiPoly):
        if f.ring != self.base_ring:
            raise RingMismatch(f"{f!r} is not in the base ring {self.base_vars}")

    def _check_cover(self, g: MultiPoly):
        if g.ring != self.cover_ring:
            raise RingMismatch(f"{g!r} is not in the cover ring {self.cover_vars}")

    def embed(self, f: MultiPoly) -> MultiPoly:
        """f(x) viewed in the cover: x_i -> u_i^p."""
        self._check_base(f)
        p = self.p
        return MultiPoly._raw(
            self.field,
            self.cover_vars,
            self.laurent,
            {tuple(p * k for k in e): c for e, c in f.terms.items()},
        )

    def root(self, f: MultiPoly) -> MultiPoly:
        """The unique g in the cover with g^p = f(u^p)."""
        self._check_base(f)
        r = self.field.pth_root
        return MultiPoly._raw(
            self.field, self.cover_vars, self.laurent, {e: r(c) for e, c in f.terms.items()}
        )

    def in_base(self, g: MultiPoly) -> bool:
        self._check_cover(g)
        return is_in_base_subring(g)

    def descend(self, g: MultiPoly) -> MultiPoly:
        """The base polynomial f with embed(f) = g; g must lie in the base subring."""
        self._check_cover(g)
        if not is_in_base_subring(g):
            raise ValueError(f"{g} has an exponent not divisible by {self.p}")
        p = self.p
        return MultiPoly._raw(
            self.field,
            self.base_vars,
            self.laurent,
            {tuple(k // p for k in e): c for e, c in g.terms.items()},
        )

    def to_json(self) -> dict:
        return {
            "base_vars": list(self.base_vars),
            "cover_vars": list(self.cover_vars),
            "laurent": list(self.laurent),
        }


def pth_root_to_cover(f: MultiPoly, cover: CoverRing | None = None) -> MultiPoly:
    """g in cover variables with g^p = f(x -> u^p): coefficient roots, exponents copied."""
    if cover is None:
        cover = CoverRing.of(f)
    return cover.root(f)


def is_in_base_subring(g: MultiPoly) -> bool:
    """True iff every exponent of g is divisible by p."""
    p = g.field.p
    return all(k % p == 0 for e in g.terms for k in e)
