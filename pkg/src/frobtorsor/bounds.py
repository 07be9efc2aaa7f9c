"""Necessary conditions from cohomology of affine curves.

For a smooth affine curve U = X minus n >= 1 points, with X of p-rank gamma,
H^1_fpqc(U, mu_{p^m}) = (Z/p^m)^(gamma + n - 1).  A finite local G can only
be realised over U if its character group embeds into (Q_p/Z_p)^(gamma+n-1).
A finite abelian p-group embeds into (Q_p/Z_p)^r exactly when it needs at
most r generators: its p-torsion must fit in (Z/p)^r, and conversely each
cyclic factor embeds into its own copy of Q_p/Z_p.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable

from .algebra import FieldSpec, MultiPoly
from .algebra.field import _is_prime


@dataclass(frozen=True)
class CurveData:
    p: int
    gamma: int
    n: int

    def __post_init__(self):
        if not _is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.gamma < 0:
            raise ValueError(f"p-rank gamma must be >= 0, got {self.gamma}")
        if self.n < 1:
            raise ValueError(f"an affine curve has n >= 1 punctures, got {self.n}")

    @property
    def rank(self) -> int:
        return self.gamma + self.n - 1

    @classmethod
    def affine_line(cls, p: int) -> "CurveData":
        return cls(p, 0, 1)

    @classmethod
    def multiplicative_group(cls, p: int) -> "CurveData":
        return cls(p, 0, 2)


@dataclass(frozen=True)
class CharacterGroup:
    """A finite abelian p-group given by its cyclic factor orders."""

    p: int
    orders: tuple = ()

    def __post_init__(self):
        orders = tuple(sorted(int(o) for o in self.orders))
        for o in orders:
            k = o
            while k % self.p == 0 and k > 1:
                k //= self.p
            if o < self.p or k != 1:
                raise ValueError(f"cyclic factor order {o} is not a positive power of {self.p}")
        object.__setattr__(self, "orders", orders)

    @property
    def generator_count(self) -> int:
        return len(self.orders)

    def to_json(self) -> dict:
        return {"p": self.p, "orders": list(self.orders)}


@dataclass(frozen=True)
class GroupDescriptor:
    """(Z / modulus)^rank."""

    modulus: int
    rank: int

    def to_json(self) -> dict:
        return {"modulus": self.modulus, "rank": self.rank}

    def __str__(self):
        if self.rank == 0:
            return "0"
        base = f"Z/{self.modulus}Z"
        return base if self.rank == 1 else f"({base})^{self.rank}"


def h1_mu(curve: CurveData, m: int) -> GroupDescriptor:
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    return GroupDescriptor(curve.p**m, curve.rank)


def h1_alpha_exponents(p: int, degree_bound: int) -> list:
    """Exponents k with p not dividing k and 1 <= k <= degree_bound."""
    if not _is_prime(p):
        raise ValueError(f"p must be prime, got {p}")
    return [k for k in range(1, degree_bound + 1) if k % p]


def h1_alpha_basis(p: int, degree_bound: int, var: str = "t") -> list:
    """The monomials t^k spanning H^1(A^1, alpha_p) up to the degree bound."""
    field = FieldSpec(p)
    return [MultiPoly.monomial(field, (var,), (k,)) for k in h1_alpha_exponents(p, degree_bound)]


def embedding_check(X: CharacterGroup, curve: CurveData) -> bool:
    if X.p != curve.p:
        raise ValueError(f"character group is a {X.p}-group but the curve has p = {curve.p}")
    return X.generator_count <= curve.rank


def character_group_of(p: int, factors: Iterable[int]) -> CharacterGroup:
    return CharacterGroup(p, tuple(factors))


def summarize(X: CharacterGroup) -> str:
    if not X.orders:
        return "1"
    counts = Counter(X.orders)
    return " x ".join(f"Z/{o}Z" + (f"^{c}" if c > 1 else "") for o, c in sorted(counts.items()))
