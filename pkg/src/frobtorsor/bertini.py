"""Dropping one affine dimension while keeping a torsor saturated.

Given finite-dimensional subspaces V_i of k[x_1..x_n]/k[x_1^p..x_n^p], the
substitution x_n -> g(x_1..x_{n-1}) with g = prod_{i<n} (x_i^(p^N) + x_i^M)
is injective on every V_i once every exponent occurring is at most d,
M > d, p does not divide M, and p^N > d (M + 1).  For an alpha-power torsor
the V_i are the row spans of the descent matrix with the Hom column removed.
Injectivity on them means the pulled-back matrix admits no new invariant
vector, so saturation survives the closed immersion x_n = g.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .algebra import MultiPoly
from .descent import AlphaPowers, SpecError, build_alpha
from .frobspace import FrobClass, class_of, span_dim
from .homsolver import solve_hom


class NotSaturated(ValueError):
    """The torsor to be reduced is not saturated."""


@dataclass(frozen=True)
class BertiniPlan:
    p: int
    n: int
    d: int
    M: int
    N: int
    g: MultiPoly

    def __post_init__(self):
        if not (self.M > self.d and self.M % self.p and self.p**self.N > self.d * (self.M + 1)):
            raise ValueError("parameters violate M > d, p does not divide M, p^N > d(M+1)")

    def to_json(self) -> dict:
        return {"format": 1, "p": self.p, "n": self.n, "d": self.d, "M": self.M, "N": self.N,
                "g": self.g.to_json(with_format=False), "g_text": str(self.g)}


def _reps(V) -> list:
    return [c.rep if isinstance(c, FrobClass) else class_of(c).rep for space in V for c in space]


def plan(V: Sequence[Sequence], n: int, ring=None) -> BertiniPlan:
    """Smallest admissible (M, N) for the subspaces V (lists of classes).

    ``ring`` = (field, vars, laurent) names the n-variable ring when V is empty.
    """
    if n < 2:
        raise SpecError(f"dimension reduction needs n >= 2, got n = {n}")
    reps = _reps(V)
    if ring is None:
        if not reps:
            raise SpecError("give the ring explicitly when there are no classes")
        ring = reps[0].ring
    field, vars, laurent = ring
    if len(vars) != n:
        raise SpecError(f"classes live in {len(vars)} variables, expected n = {n}")
    for r in reps:
        if r.ring != ring:
            raise SpecError("all classes must share one ring")
        if any(k < 0 for e in r.terms for k in e):
            raise SpecError("dimension reduction works over affine space; negative exponents found")
    p = field.p
    d = max((r.max_exponent() for r in reps), default=0)
    M = d + 1
    while M % p == 0:
        M += 1
    N = 1
    while p**N <= d * (M + 1):
        N += 1
    sub_vars = tuple(vars[: n - 1])
    sub_laurent = tuple(laurent[: n - 1])
    g = MultiPoly.one(field, sub_vars, sub_laurent)
    for i in range(n - 1):
        e_big = tuple(p**N if j == i else 0 for j in range(n - 1))
        e_small = tuple(M if j == i else 0 for j in range(n - 1))
        g = g * MultiPoly(field, sub_vars, {e_big: 1, e_small: 1}, sub_laurent)
    return BertiniPlan(p, n, d, M, N, g)


def apply_substitution(f: MultiPoly, g: MultiPoly) -> MultiPoly:
    """f(x_1..x_{n-1}, g) in the ring of g."""
    if f.vars[:-1] != g.vars:
        raise SpecError(f"substitution polynomial in {g.vars} does not fit {f.vars}")
    return f.substitute({f.vars[-1]: g}, target=g.ring)


def substitute_and_verify(V: Sequence[Sequence], bplan: BertiniPlan, g: MultiPoly | None = None) -> bool:
    """True iff x_n -> g keeps the dimension of every V_i (g defaults to the plan's)."""
    g = bplan.g if g is None else g
    for space in V:
        classes = [c if isinstance(c, FrobClass) else class_of(c) for c in space]
        before = span_dim(classes)
        after = span_dim([class_of(apply_substitution(c.rep, g)) for c in classes])
        if after != before:
            return False
    return True


def monomial_families(bplan: BertiniPlan) -> tuple:
    """The three exponent families whose images stay independent, as sets."""
    p, d, M, N, k = bplan.p, bplan.d, bplan.M, bplan.N, bplan.n - 1
    box = list(itertools.product(range(d + 1), repeat=k))
    first = {m for m in box if any(x % p for x in m)}
    second = set()
    third = set()
    for mn in range(1, d + 1):
        for m in box:
            if all(x % p == 0 for x in m):
                if mn % p:
                    second.add(tuple(x + mn * M for x in m))
            else:
                third.add(tuple(x + mn * p**N for x in m))
    return first, second, third


@dataclass(frozen=True)
class Reduction:
    spec: AlphaPowers
    plan: BertiniPlan
    eliminated: str
    immersion: MultiPoly  # eliminated variable = immersion(remaining ones)
    hom_dimension: int

    def to_json(self) -> dict:
        return {
            "format": 1,
            "plan": self.plan.to_json(),
            "immersion": {"var": self.eliminated, "g": self.immersion.to_json(with_format=False),
                          "g_text": str(self.immersion)},
            "reduced": self.spec.to_json(),
            "hom_dimension": self.hom_dimension,
        }


def reduce_torsor(spec: AlphaPowers) -> Reduction:
    """Pull an alpha-power torsor over A^n back along x_n = G(x_1..x_{n-1})."""
    if not isinstance(spec, AlphaPowers):
        raise SpecError("reduce_torsor takes an AlphaPowers spec")
    field, vars, laurent = spec.f[0].ring
    n = len(vars)
    if n < 2:
        raise SpecError(f"dimension reduction needs at least two variables, got {vars}")
    if any(laurent):
        raise SpecError("dimension reduction works over affine space, not a torus")
    A = build_alpha(spec)
    sol = solve_hom(A)
    if sol.dimension != 1:
        raise NotSaturated(f"input torsor is not saturated (hom dimension {sol.dimension})")
    unit = tuple(1 if j == 0 else 0 for j in range(A.size))
    if sol.basis[0] != unit:  # pragma: no cover - the first column is always the unit
        raise AssertionError("unexpected invariant vector for an alpha-power torsor")
    V = [[class_of(a) for a in row[1:]] for row in A.entries]
    bplan = plan(V, n, ring=A.cover.cover_ring)
    if not substitute_and_verify(V, bplan):  # pragma: no cover - guaranteed by the choice of M, N
        raise AssertionError("substitution failed to stay injective")
    # u_n -> g(u') in the cover is x_n -> g with p-th-powered coefficients in the base
    sub_vars = vars[: n - 1]
    G = bplan.g.map_coeffs(field.frobenius).rename(sub_vars)
    reduced = AlphaPowers(tuple(apply_substitution(f, G) for f in spec.f))
    dim = solve_hom(build_alpha(reduced)).dimension
    if dim != 1:  # pragma: no cover - guaranteed by injectivity
        raise AssertionError(f"reduced torsor lost saturation (dimension {dim})")
    return Reduction(reduced, bplan, vars[-1], G, dim)


def reduce_to_line(spec: AlphaPowers) -> list:
    """Apply :func:`reduce_torsor` until one variable remains; returns every step."""
    steps = []
    while spec.f[0].nvars > 1:
        step = reduce_torsor(spec)
        steps.append(step)
        spec = step.spec
    return steps
