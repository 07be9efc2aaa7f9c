"""Dimension of the invariant sections of a descent matrix.

For A with rows indexed by the e basis and columns by the z basis, the Hom
space is {a in F_q^s : A a has every entry in the base subring k[u^p]}.
Each row i and each cover monomial mu with an exponent not divisible by p
gives the linear condition sum_j coeff(A[i][j], mu) a_j = 0.  The solution
space is the nullspace of these conditions over F_q, which has the same
dimension over any extension of F_q.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .descent import DescentMatrix, NotInvertible


@dataclass(frozen=True)
class HomSolution:
    dimension: int
    basis: tuple
    size: int

    def to_json(self, with_basis: bool = True) -> dict:
        obj = {"format": 1, "dimension": self.dimension, "size": self.size}
        if with_basis:
            obj["basis"] = [list(v) for v in self.basis]
        return obj


def constraint_rows(A: DescentMatrix):
    """Yield one coefficient row per (matrix row, non-base cover monomial)."""
    p = A.field.p
    n = A.size
    for row in A.entries:
        by_mono: dict = {}
        for j, a in enumerate(row):
            for exp, c in a.terms.items():
                if any(k % p for k in exp):
                    by_mono.setdefault(exp, {})[j] = c
        for exp in sorted(by_mono):
            coeffs = by_mono[exp]
            vec = [0] * n
            for j, c in coeffs.items():
                vec[j] = c
            yield vec


def solve_hom(A: DescentMatrix, check_invertible: bool = True) -> HomSolution:
    if check_invertible and not A.is_invertible():
        raise NotInvertible(f"determinant {A.determinant()} is not a unit of the cover ring")
    reducer = linalg.RowReducer(A.size, A.field)
    for vec in constraint_rows(A):
        reducer.add(vec)
    basis = tuple(tuple(v) for v in reducer.nullspace())
    return HomSolution(len(basis), basis, A.size)


def hom_dimension(A: DescentMatrix) -> int:
    return solve_hom(A).dimension


def is_saturated_dim(A: DescentMatrix) -> bool:
    return solve_hom(A).dimension == 1
