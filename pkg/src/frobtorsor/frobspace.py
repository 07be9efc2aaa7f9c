"""The Frobenius quotient k[x_1..x_n] / k[x_1^p..x_n^p] and ranks inside it.

A class is stored by its canonical representative: the polynomial with
every term whose exponent vector is divisible by p deleted.  The quotient
has the non-p-divisible monomials as a basis, so rank questions reduce to
Gaussian elimination on coefficient vectors over that (lazily built) basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import linalg
from .algebra import MultiPoly, RingMismatch, grlex_key


def _is_p_divisible(exp, p) -> bool:
    return all(k % p == 0 for k in exp)


@dataclass(frozen=True)
class FrobClass:
    """Residue class of a polynomial modulo the subring of p-th powers."""

    rep: MultiPoly

    def __post_init__(self):
        p = self.rep.field.p
        if any(_is_p_divisible(e, p) for e in self.rep.terms):
            raise ValueError("representative has a term with all exponents divisible by p")

    @property
    def ring(self):
        return self.rep.ring

    def is_zero(self) -> bool:
        return self.rep.is_zero()

    def __bool__(self):
        return not self.is_zero()

    def __add__(self, other: "FrobClass") -> "FrobClass":
        return FrobClass(self.rep + other.rep)

    def __sub__(self, other: "FrobClass") -> "FrobClass":
        return FrobClass(self.rep - other.rep)

    def scale(self, c) -> "FrobClass":
        return FrobClass(self.rep.scale(c))

    def monomials(self) -> list:
        return sorted(self.rep.terms, key=grlex_key)

    def __str__(self):
        return f"[{self.rep}]"


def class_of(f: MultiPoly) -> FrobClass:
    p = f.field.p
    return FrobClass(f.like({e: c for e, c in f.terms.items() if not _is_p_divisible(e, p)}))


def _as_class(x) -> FrobClass:
    return x if isinstance(x, FrobClass) else class_of(x)


def coefficient_matrix(classes: Sequence[FrobClass]):
    """(rows, monomial basis): row i holds the coefficients of classes[i]."""
    classes = [_as_class(c) for c in classes]
    if classes:
        ring = classes[0].ring
        for c in classes[1:]:
            if c.ring != ring:
                raise RingMismatch("classes from different rings")
    basis = sorted({e for c in classes for e in c.rep.terms}, key=grlex_key)
    index = {e: j for j, e in enumerate(basis)}
    rows = []
    for c in classes:
        row = [0] * len(basis)
        for e, v in c.rep.terms.items():
            row[index[e]] = v
        rows.append(row)
    return rows, basis


def span_dim(classes: Iterable) -> int:
    """dim over F_q of the span of the given classes (polynomials are reduced first)."""
    classes = [_as_class(c) for c in classes]
    if not classes:
        return 0
    rows, basis = coefficient_matrix(classes)
    if not basis:
        return 0
    return linalg.rank(rows, len(basis), classes[0].rep.field)


def independent(classes: Iterable) -> bool:
    classes = list(classes)
    return span_dim(classes) == len(classes)
