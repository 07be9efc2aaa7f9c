"""Descent matrices of height-one torsors.

Convention (used by every builder and by the Hom solver): rows are labelled
by the invariant basis e of the torsor's pushed-forward algebra, columns by
the monomial basis z of the group's coordinate ring, and

    A[i][j] = coefficient of e_i when z_j is written in the e basis,

with coefficients in the cover ring k[u], u^p = x.  A Hom vector a is then a
constant combination sum_j a_j z_j whose e-coordinates A a lie in k[x].

Families:

* ``MuP``: x^m viewed as a mu_p torsor over G_m.  e_j = (y z)^j with y = u^m,
  so A = diag(u^(-m j)).
* ``AlphaPowers``: (f_1..f_n) as an alpha_p^n torsor.  e_i = y_i + z_i with
  y_i the p-th root of f_i, so z^k expands by the binomial theorem and A is
  upper unitriangular in graded order.
* ``GL2Char2`` / ``SL2Char2``: f in GL_2(k[x^{+-1}]) with det f = x^m (p = 2).
  The classifying morphism of the torsor is g = adj(f) x^(-m), i.e.
  ((f22, -f12), (-f21, f11)) x^(-m); ``from_morphism`` goes the other way.
  With F' the entrywise root of f, e = Y z with Y = F'^{-1}, so z = F' e; monomials in z are expanded inside
  k[u^{+-1}][e] / (e_ij^2 - s_ij) where s_ij = y_ij^2 is forced by z^2 = 1.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Mapping, Sequence

from .algebra import (
    CoverRing,
    FieldSpec,
    MultiPoly,
    RingMismatch,
    grlex_key,
    pth_root_to_cover,
)

FORMAT_VERSION = 1
DEFAULT_CAP = 4096


class SpecError(ValueError):
    """A torsor description violates its family's preconditions."""


def size_cap() -> int:
    raw = os.environ.get("FROBTORSOR_CAP")
    if raw is None:
        return DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise SpecError(f"FROBTORSOR_CAP must be an integer, got {raw!r}") from None
    if cap < 1:
        raise SpecError("FROBTORSOR_CAP must be positive")
    return cap


# --- torsor descriptions -------------------------------------------------------------


def _same_ring(polys: Sequence[MultiPoly], what: str):
    if not polys:
        return
    ring = polys[0].ring
    for f in polys[1:]:
        if f.ring != ring:
            raise SpecError(f"{what} must all lie in one polynomial ring")


@dataclass(frozen=True)
class TorsorSpec:
    family = "abstract"

    @property
    def field(self) -> FieldSpec:  # pragma: no cover - overridden
        raise NotImplementedError

    def to_json(self) -> dict:  # pragma: no cover - overridden
        raise NotImplementedError

    @staticmethod
    def from_json(obj: Mapping) -> "TorsorSpec":
        family = obj.get("family")
        cls = FAMILIES.get(family)
        if cls is None:
            raise SpecError(f"unknown family {family!r}; expected one of {sorted(FAMILIES)}")
        return cls._from_json(obj)


def _field_json(field: FieldSpec) -> dict:
    d = {"p": field.p, "e": field.e}
    if field.e > 1:
        d["modulus"] = list(field.modulus)
    return d


def _field_from_json(obj: Mapping) -> FieldSpec:
    try:
        return FieldSpec(int(obj["p"]), int(obj.get("e", 1)))
    except KeyError:
        raise SpecError("missing field characteristic 'p'") from None


def _polys_from_json(items, field) -> list:
    out = []
    for t in items:
        if isinstance(t, str):
            raise SpecError("polynomials in a spec must be JSON objects; parse text first")
        out.append(MultiPoly.from_json(t, field))
    return out


@dataclass(frozen=True)
class AlphaPowers(TorsorSpec):
    """The alpha_p^n torsor defined by f = (f_1..f_n)."""

    f: tuple
    family = "alpha"

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(self.f))
        if len(self.f) < 1:
            raise SpecError("AlphaPowers needs at least one polynomial (n >= 1)")
        _same_ring(self.f, "AlphaPowers polynomials")

    @property
    def field(self):
        return self.f[0].field

    @property
    def n(self) -> int:
        return len(self.f)

    @property
    def vars(self):
        return self.f[0].vars

    def to_json(self):
        return {
            "format": FORMAT_VERSION,
            "family": self.family,
            **_field_json(self.field),
            "f": [g.to_json(with_format=False) for g in self.f],
        }

    @classmethod
    def _from_json(cls, obj):
        field = _field_from_json(obj)
        return cls(tuple(_polys_from_json(obj.get("f", []), field)))

    def __str__(self):
        return "alpha(" + ", ".join(str(g) for g in self.f) + ")"


@dataclass(frozen=True)
class MuP(TorsorSpec):
    """The mu_p torsor over G_m given by the unit x^m."""

    m: int
    field_spec: FieldSpec
    var: str = "x"
    family = "mu_p"

    def __post_init__(self):
        if not isinstance(self.m, int) or isinstance(self.m, bool):
            raise SpecError(f"m must be an integer, got {self.m!r}")

    @property
    def field(self):
        return self.field_spec

    def to_json(self):
        return {"format": FORMAT_VERSION, "family": self.family, **_field_json(self.field),
                "m": self.m, "var": self.var}

    @classmethod
    def _from_json(cls, obj):
        if "m" not in obj:
            raise SpecError("mu_p spec needs 'm'")
        return cls(int(obj["m"]), _field_from_json(obj), obj.get("var", "x"))

    def __str__(self):
        return f"mu_{self.field.p}(x^{self.m})"


def _det2(f11, f12, f21, f22):
    return f11 * f22 - f12 * f21


def _check_gl2_entries(entries, name):
    _same_ring(entries, f"{name} entries")
    f = entries[0]
    if f.field.p != 2:
        raise SpecError(f"{name} requires characteristic 2, got p={f.field.p}")
    if f.nvars != 1:
        raise SpecError(f"{name} entries must be univariate, got variables {f.vars}")


@dataclass(frozen=True)
class GL2Char2(TorsorSpec):
    """f in GL_2(k[x^{+-1}]) with det f = x^m, m >= 0, over G_m (p = 2)."""

    f11: MultiPoly
    f12: MultiPoly
    f21: MultiPoly
    f22: MultiPoly
    m: int
    family = "gl2_char2"

    def __post_init__(self):
        entries = [self.f11, self.f12, self.f21, self.f22]
        _check_gl2_entries(entries, "GL2Char2")
        if not isinstance(self.m, int) or self.m < 0:
            raise SpecError(f"GL2Char2 needs an integer m >= 0, got {self.m!r}")
        entries = [g.with_laurent(True) for g in entries]
        for name, g in zip(("f11", "f12", "f21", "f22"), entries):
            object.__setattr__(self, name, g)
        det = _det2(*entries)
        if det != entries[0].monomial_like((self.m,)):
            raise SpecError(f"GL2Char2 needs det(f) = x^{self.m} exactly, got det(f) = {det}")

    @property
    def field(self):
        return self.f11.field

    @property
    def entries(self) -> tuple:
        return (self.f11, self.f12, self.f21, self.f22)

    @property
    def var(self) -> str:
        return self.f11.vars[0]

    @classmethod
    def from_morphism(cls, g11, g12, g21, g22) -> "GL2Char2":
        """The torsor whose classifying morphism is g = ((g11, g12), (g21, g22)).

        det g must be x^(-m) with m >= 0; then f = adj(g) x^m.
        """
        g = [h.with_laurent(True) for h in (g11, g12, g21, g22)]
        det = _det2(*g)
        if not det.is_monomial():
            raise SpecError(f"det of the morphism must be a monomial x^(-m), got {det}")
        (exp, c), = det.terms.items()
        if c != 1 or exp[0] > 0:
            raise SpecError(f"det of the morphism must be x^(-m) with m >= 0, got {det}")
        m = -exp[0]
        xm = g[0].monomial_like((m,))
        return cls(g[3] * xm, -g[1] * xm, -g[2] * xm, g[0] * xm, m)

    def morphism(self) -> tuple:
        """Entries (g11, g12, g21, g22) of the classifying morphism adj(f) x^(-m)."""
        f11, f12, f21, f22 = self.entries
        xm = f11.monomial_like((-self.m,))
        return (f22 * xm, -f12 * xm, -f21 * xm, f11 * xm)

    def translate(self, g0) -> "GL2Char2":
        """g0 f for a constant matrix g0 = ((a, b), (c, d)) with det 1."""
        (a, b), (c, d) = g0
        f11, f12, f21, f22 = self.entries
        F = self.field
        if F.sub(F.mul(a, d), F.mul(b, c)) != 1:
            raise SpecError("left translation needs a determinant-one constant matrix")
        return GL2Char2(
            f11.scale(a) + f21.scale(b),
            f12.scale(a) + f22.scale(b),
            f11.scale(c) + f21.scale(d),
            f12.scale(c) + f22.scale(d),
            self.m,
        )

    def to_json(self):
        return {"format": FORMAT_VERSION, "family": self.family, **_field_json(self.field),
                "m": self.m, "f": [g.to_json(with_format=False) for g in self.entries]}

    @classmethod
    def _from_json(cls, obj):
        field = _field_from_json(obj)
        f = _polys_from_json(obj.get("f", []), field)
        if len(f) != 4:
            raise SpecError("gl2_char2 spec needs four entries f11, f12, f21, f22")
        if "m" not in obj:
            raise SpecError("gl2_char2 spec needs 'm'")
        return cls(*f, int(obj["m"]))

    def __str__(self):
        return f"gl2(({self.f11}, {self.f12}), ({self.f21}, {self.f22}); m={self.m})"


@dataclass(frozen=True)
class SL2Char2(TorsorSpec):
    """f in SL_2(k[x]) over the affine line (p = 2)."""

    f11: MultiPoly
    f12: MultiPoly
    f21: MultiPoly
    f22: MultiPoly
    family = "sl2_char2"

    def __post_init__(self):
        entries = [self.f11, self.f12, self.f21, self.f22]
        _check_gl2_entries(entries, "SL2Char2")
        det = _det2(*entries)
        if det != 1:
            raise SpecError(f"SL2Char2 needs det(f) = 1, got det(f) = {det}")

    @property
    def field(self):
        return self.f11.field

    @property
    def entries(self) -> tuple:
        return (self.f11, self.f12, self.f21, self.f22)

    @classmethod
    def from_morphism(cls, g11, g12, g21, g22) -> "SL2Char2":
        """The torsor whose classifying morphism is g; f = adj(g)."""
        return cls(g22, -g12, -g21, g11)

    def morphism(self) -> tuple:
        f11, f12, f21, f22 = self.entries
        return (f22, -f12, -f21, f11)

    def as_gl2(self) -> GL2Char2:
        """The same matrix restricted to G_m, as a GL_2 torsor with m = 0."""
        return GL2Char2(*self.entries, 0)

    def to_json(self):
        return {"format": FORMAT_VERSION, "family": self.family, **_field_json(self.field),
                "f": [g.to_json(with_format=False) for g in self.entries]}

    @classmethod
    def _from_json(cls, obj):
        field = _field_from_json(obj)
        f = _polys_from_json(obj.get("f", []), field)
        if len(f) != 4:
            raise SpecError("sl2_char2 spec needs four entries f11, f12, f21, f22")
        return cls(*f)

    def __str__(self):
        return f"sl2(({self.f11}, {self.f12}), ({self.f21}, {self.f22}))"


FAMILIES = {cls.family: cls for cls in (AlphaPowers, MuP, GL2Char2, SL2Char2)}


# --- matrices ---------------------------------------------------------------------


class NotInvertible(ArithmeticError):
    """The determinant of a descent matrix is not a unit of the cover ring."""


@dataclass(frozen=True)
class DescentMatrix:
    cover: CoverRing
    entries: tuple
    row_labels: tuple
    col_labels: tuple
    _det: list = dc_field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        entries = tuple(tuple(r) for r in self.entries)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "row_labels", tuple(self.row_labels))
        object.__setattr__(self, "col_labels", tuple(self.col_labels))
        n = len(entries)
        if any(len(r) != n for r in entries):
            raise ValueError("descent matrix must be square")
        if len(self.row_labels) != n or len(self.col_labels) != n:
            raise ValueError("label count does not match matrix size")
        ring = self.cover.cover_ring
        for r in entries:
            for a in r:
                if a.ring != ring:
                    raise RingMismatch("matrix entry outside the cover ring")

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def field(self) -> FieldSpec:
        return self.cover.field

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def block(self, bi: int, bj: int, k: int) -> list:
        return [list(r[bj * k:(bj + 1) * k]) for r in self.entries[bi * k:(bi + 1) * k]]

    def is_upper_triangular(self) -> bool:
        return all(self.entries[i][j].is_zero() for i in range(self.size) for j in range(i))

    def is_lower_triangular(self) -> bool:
        return all(
            self.entries[i][j].is_zero() for i in range(self.size) for j in range(i + 1, self.size)
        )

    def determinant(self) -> MultiPoly:
        if not self._det:
            self._det.append(determinant(self.entries, self.cover.one()))
        return self._det[0]

    def is_invertible(self) -> bool:
        return self.determinant().is_monomial()

    def matmul(self, other: "DescentMatrix") -> list:
        n = self.size
        zero = self.cover.zero()
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                s = zero
                for k in range(n):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            s = s + a * b
                row.append(s)
            out.append(row)
        return out

    def to_json(self) -> dict:
        f = self.field
        return {
            "format": FORMAT_VERSION,
            "kind": "descent_matrix",
            **_field_json(f),
            "cover": self.cover.to_json(),
            "row_labels": list(self.row_labels),
            "col_labels": list(self.col_labels),
            "entries": [[a.to_json(with_format=False) for a in r] for r in self.entries],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "DescentMatrix":
        try:
            field = _field_from_json(obj)
            c = obj["cover"]
            cover = CoverRing.over(field, c["base_vars"], c.get("laurent", False), c["cover_vars"])
            rows = []
            for r in obj["entries"]:
                row = []
                for t in r:
                    g = MultiPoly.from_json(t, field)
                    if g.vars != cover.cover_vars:
                        raise SpecError(f"entry variables {g.vars} differ from cover {cover.cover_vars}")
                    row.append(g.with_laurent(cover.laurent))
                rows.append(row)
            n = len(rows)
            rl = obj.get("row_labels") or [f"e{i}" for i in range(n)]
            cl = obj.get("col_labels") or [f"z{i}" for i in range(n)]
        except (KeyError, TypeError) as exc:
            raise SpecError(f"malformed matrix JSON: {exc!r}") from None
        return cls(cover, rows, rl, cl)


def determinant(entries, one: MultiPoly) -> MultiPoly:
    """Exact determinant: diagonal product if triangular, else fraction-free Bareiss."""
    n = len(entries)
    if n == 0:
        return one
    upper = all(entries[i][j].is_zero() for i in range(n) for j in range(i))
    lower = all(entries[i][j].is_zero() for i in range(n) for j in range(i + 1, n))
    if upper or lower:
        d = one
        for i in range(n):
            d = d * entries[i][i]
        return d
    m = [list(r) for r in entries]
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = next((i for i in range(k + 1, n) if not m[i][k].is_zero()), None)
            if swap is None:
                return one.zero_like()
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[i][j] * m[k][k] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = one.zero_like()
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def identity_matrix(size: int, field: FieldSpec, var: str = "x", laurent: bool = False) -> DescentMatrix:
    cover = CoverRing.over(field, (var,), laurent)
    one, zero = cover.one(), cover.zero()
    rows = [[one if i == j else zero for j in range(size)] for i in range(size)]
    return DescentMatrix(cover, rows, [f"e{i}" for i in range(size)], [f"z{i}" for i in range(size)])


# --- builders -----------------------------------------------------------------------


def build_mu_p(m: int, field: FieldSpec, var: str = "x") -> DescentMatrix:
    p = field.p
    cover = CoverRing.over(field, (var,), True)
    zero = cover.zero()
    rows = []
    for i in range(p):
        rows.append([cover.monomial((-m * i,)) if i == j else zero for j in range(p)])
    row_labels = ["1" if j == 0 else f"(yz)^{j}" for j in range(p)]
    col_labels = ["1" if j == 0 else f"z^{j}" for j in range(p)]
    return DescentMatrix(cover, rows, row_labels, col_labels)


def graded_exponents(p: int, n: int) -> list:
    """[0, p)^n ordered by total degree, then lexicographically."""
    return sorted(itertools.product(range(p), repeat=n), key=grlex_key)


def _label(prefix: str, exp, n: int) -> str:
    parts = []
    for i, k in enumerate(exp):
        if k:
            name = prefix if n == 1 else f"{prefix}{i + 1}"
            parts.append(name if k == 1 else f"{name}^{k}")
    return "*".join(parts) or "1"


def build_alpha(f: Sequence[MultiPoly] | AlphaPowers, field: FieldSpec | None = None) -> DescentMatrix:
    spec = f if isinstance(f, AlphaPowers) else AlphaPowers(tuple(f))
    if field is not None and field != spec.field:
        raise SpecError(f"polynomials are over {spec.field}, not {field}")
    field = spec.field
    p, n = field.p, spec.n
    cap = size_cap()
    if p**n > cap:
        raise SpecError(f"matrix size {p}^{n} = {p ** n} exceeds the cap {cap} (FROBTORSOR_CAP)")
    cover = CoverRing.of(spec.f[0])
    neg_roots = [-pth_root_to_cover(g, cover) for g in spec.f]
    powers = [[cover.one()] for _ in range(n)]
    for i in range(n):
        for _ in range(p - 1):
            powers[i].append(powers[i][-1] * neg_roots[i])
    basis = graded_exponents(p, n)
    zero = cover.zero()
    rows = []
    for j in basis:
        row = []
        for k in basis:
            if any(a > b for a, b in zip(j, k)):
                row.append(zero)
                continue
            c = 1
            for a, b in zip(j, k):
                c *= comb(b, a)
            if c % p == 0:
                row.append(zero)
                continue
            t = cover.constant(field.from_int(c))
            for i in range(n):
                if k[i] > j[i]:
                    t = t * powers[i][k[i] - j[i]]
            row.append(t)
        rows.append(row)
    return DescentMatrix(
        cover,
        rows,
        [_label("e", j, n) for j in basis],
        [_label("z", k, n) for k in basis],
    )


# GL_2 Frobenius kernel in characteristic 2

GL2_INDEX = ((1, 1), (1, 2), (2, 1), (2, 2))

GL2_BASIS = (
    (),
    ((1, 1), (2, 1)),
    ((1, 2), (2, 2)),
    ((1, 1), (1, 2), (2, 1), (2, 2)),
    ((1, 1),),
    ((1, 2),),
    ((2, 1),),
    ((2, 2),),
    ((1, 1), (1, 2)),
    ((1, 1), (2, 2)),
    ((1, 2), (2, 1)),
    ((2, 1), (2, 2)),
    ((1, 1), (1, 2), (2, 1)),
    ((1, 1), (1, 2), (2, 2)),
    ((1, 1), (2, 1), (2, 2)),
    ((1, 2), (2, 1), (2, 2)),
)

_GL2_POS = {frozenset(b): i for i, b in enumerate(GL2_BASIS)}


def _gl2_label(prefix, mono) -> str:
    return "*".join(f"{prefix}{i}{j}" for i, j in mono) or "1"


class SquareFreeAlgebra:
    """R[g_1..g_k] / (g_i^2 - s_i) over a commutative coefficient ring R.

    Elements are dicts from frozensets of generators to nonzero coefficients.
    """

    def __init__(self, squares: Mapping, one: MultiPoly):
        self.squares = dict(squares)
        self.one_coeff = one

    def one(self) -> dict:
        return {frozenset(): self.one_coeff}

    def linear(self, coeffs: Mapping) -> dict:
        return {frozenset((g,)): c for g, c in coeffs.items() if c}

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                c = ca * cb
                for g in ma & mb:
                    c = c * self.squares[g]
                if not c:
                    continue
                mono = ma ^ mb
                s = out.get(mono)
                out[mono] = c if s is None else s + c
        return {k: v for k, v in out.items() if v}


def _gl2_setup(spec: GL2Char2):
    base = spec.f11
    cover = CoverRing.of(base)
    roots = {ij: pth_root_to_cover(g, cover)
             for ij, g in zip(GL2_INDEX, spec.entries)}
    # Y = F'^{-1} = adj(F') / det(F'), det(F') = u^m
    inv_det = cover.monomial((-spec.m,))
    Y = {
        (1, 1): roots[(2, 2)] * inv_det,
        (1, 2): -roots[(1, 2)] * inv_det,
        (2, 1): -roots[(2, 1)] * inv_det,
        (2, 2): roots[(1, 1)] * inv_det,
    }
    return cover, roots, Y


def build_gl2_char2(spec: GL2Char2 | SL2Char2, squares: str = "torsor") -> DescentMatrix:
    """The 16 x 16 descent matrix, by expanding z-monomials in the e basis.

    ``squares="torsor"`` uses the relation e_ij^2 = y_ij^2 that follows from
    z_ij^2 = delta_ij; ``squares="display"`` uses e_ij^2 = delta_ij instead,
    which reproduces a commonly displayed closed form but is not the descent
    datum of the torsor.  It is kept only for comparison.
    """
    if isinstance(spec, SL2Char2):
        spec = spec.as_gl2()
    if not isinstance(spec, GL2Char2):
        raise SpecError("build_gl2_char2 takes a GL2Char2 or SL2Char2 spec")
    cover, roots, Y = _gl2_setup(spec)
    one = cover.one()
    if squares == "torsor":
        sq = {ij: Y[ij] ** 2 for ij in GL2_INDEX}
    elif squares == "display":
        sq = {ij: one if ij[0] == ij[1] else cover.zero() for ij in GL2_INDEX}
    else:
        raise ValueError(f"squares must be 'torsor' or 'display', not {squares!r}")
    alg = SquareFreeAlgebra(sq, one)
    # z_ij = sum_q f'_iq e_qj
    z = {(i, j): alg.linear({(1, j): roots[(i, 1)], (2, j): roots[(i, 2)]}) for i, j in GL2_INDEX}
    zero = cover.zero()
    rows = [[zero] * 16 for _ in range(16)]
    for col, mono in enumerate(GL2_BASIS):
        el = alg.one()
        for g in mono:
            el = alg.mul(el, z[g])
        for emono, c in el.items():
            rows[_GL2_POS[emono]][col] = c
    return DescentMatrix(
        cover,
        rows,
        [_gl2_label("e", b) for b in GL2_BASIS],
        [_gl2_label("z", b) for b in GL2_BASIS],
    )


def gl2_forward_matrix(spec: GL2Char2 | SL2Char2) -> DescentMatrix:
    """S with S[i][j] = coefficient of z_i in e_j, e = Y z expanded mod z^2 = 1.

    This is the inverse of :func:`build_gl2_char2` computed independently.
    """
    if isinstance(spec, SL2Char2):
        spec = spec.as_gl2()
    cover, _, Y = _gl2_setup(spec)
    one = cover.one()
    sq = {ij: one if ij[0] == ij[1] else cover.zero() for ij in GL2_INDEX}
    alg = SquareFreeAlgebra(sq, one)
    e = {(i, j): alg.linear({(1, j): Y[(i, 1)], (2, j): Y[(i, 2)]}) for i, j in GL2_INDEX}
    zero = cover.zero()
    rows = [[zero] * 16 for _ in range(16)]
    for col, mono in enumerate(GL2_BASIS):
        el = alg.one()
        for g in mono:
            el = alg.mul(el, e[g])
        for zmono, c in el.items():
            rows[_GL2_POS[zmono]][col] = c
    return DescentMatrix(
        cover,
        rows,
        [_gl2_label("z", b) for b in GL2_BASIS],
        [_gl2_label("e", b) for b in GL2_BASIS],
    )


def _kron2(X, Y):
    return [[X[i // 2][k // 2] * Y[i % 2][k % 2] for k in range(4)] for i in range(4)]


def closed_form_blocks(spec: GL2Char2 | SL2Char2) -> dict:
    """The closed-form 4 x 4 blocks of the GL_2 matrix, keyed by name.

    Values are ((block_row, block_col), 4 x 4 list); ``None`` marks the one
    entry of C that has no closed form here.  With B = [[f'11, f'21],
    [f'12, f'22]] and D = [[0, f'12 f'22], [f'11 f'21, 0]] the blocks are C
    at (0, 0), B(x)E at (1, 1), B(x)D at (1, 3), B(x)B at (2, 2) and
    B(x)u^m E at (3, 3).
    """
    if isinstance(spec, SL2Char2):
        spec = spec.as_gl2()
    cover = CoverRing.of(spec.f11)
    r11, r12, r21, r22 = [pth_root_to_cover(g, cover) for g in spec.entries]
    m = spec.m
    one, zero = cover.one(), cover.zero()
    um = cover.monomial((m,))
    B = [[r11, r21], [r12, r22]]
    E = [[one, zero], [zero, one]]
    D = [[zero, r12 * r22], [r11 * r21, zero]]
    C = [
        [one, r11 * r21, r12 * r22, None],
        [zero, um, zero, r12 * r22 * um],
        [zero, zero, um, r11 * r21 * um],
        [zero, zero, zero, cover.monomial((2 * m,))],
    ]
    return {
        "B": (None, B),
        "C": ((0, 0), C),
        "BxE": ((1, 1), _kron2(B, E)),
        "BxD": ((1, 3), _kron2(B, D)),
        "BxB": ((2, 2), _kron2(B, B)),
        "BxumE": ((3, 3), _kron2(B, [[um, zero], [zero, um]])),
    }


def compare_blocks(A: DescentMatrix, spec) -> dict:
    """{block name: list of (i, j) where A differs from the closed form}."""
    out = {}
    for name, (pos, blk) in closed_form_blocks(spec).items():
        if pos is None:
            continue
        bi, bj = pos
        bad = []
        for i in range(4):
            for j in range(4):
                if blk[i][j] is not None and A[4 * bi + i, 4 * bj + j] != blk[i][j]:
                    bad.append((i, j))
        out[name] = bad
    return out


def build(spec: TorsorSpec, **kwargs) -> DescentMatrix:
    """The descent matrix of any supported torsor description."""
    if isinstance(spec, MuP):
        return build_mu_p(spec.m, spec.field, spec.var)
    if isinstance(spec, AlphaPowers):
        return build_alpha(spec)
    if isinstance(spec, (GL2Char2, SL2Char2)):
        return build_gl2_char2(spec, **kwargs)
    raise SpecError(f"no descent matrix for {type(spec).__name__}")
