"""Saturation verdicts: closed-form criteria, solver verdicts and bounded search.

SL_2 in characteristic 2.  Besides the two-bullet sufficient condition
(:func:`criterion_sl2`) this module has :func:`sl2_quotient_criterion`.
The derived algebra of sl_2 is spanned by h, and a restricted subalgebra
surjecting onto sl_2 / <h> contains [e + a h, f + b h] = h, so a torsor is
saturated for SL_2(1) iff its pushforward to the abelianization
alpha_2 x alpha_2 is.  The pushed-forward classes match those of f11 f12 and
f21 f22; that identification is checked against the solver (exhaustively
for degree <= 3, randomly beyond), not derived in closed form.
"""

from __future__ import annotations

import itertools
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Sequence

from .algebra import FieldSpec, MultiPoly
from .descent import (
    AlphaPowers,
    GL2Char2,
    MuP,
    SL2Char2,
    SpecError,
    TorsorSpec,
    build_alpha,
    build_gl2_char2,
    build_mu_p,
)
from .frobspace import class_of, span_dim
from .homsolver import solve_hom

METHODS = ("criterion", "solver", "both")
EXHAUSTIVE_LIMIT = 2**22
SL2_IMAGE = "image = SL₂(₁)"
GL2_IMAGE = "image = GL₂(₁)"


class Inconclusive(ValueError):
    """The closed-form criterion does not decide this input."""


@dataclass(frozen=True)
class GL2Bullets:
    even_case_hit: bool
    odd_case_hit: bool
    bullet: int | None

    def to_json(self):
        return {"even_case_hit": self.even_case_hit, "odd_case_hit": self.odd_case_hit,
                "bullet": self.bullet}


@dataclass(frozen=True)
class Verdict:
    saturated: bool
    method: str
    hom_dimension: int | None = None
    image_note: str | None = None
    all_heights: bool = dc_field(default=None)
    criterion_agrees: bool | None = None

    def __post_init__(self):
        # saturation of the height-one torsor propagates to every height
        if self.all_heights is None:
            object.__setattr__(self, "all_heights", self.saturated)
        if self.all_heights != self.saturated:
            raise ValueError("all_heights must equal saturated")
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}")

    def to_json(self) -> dict:
        obj = {
            "format": 1,
            "saturated": self.saturated,
            "method": self.method,
            "hom_dimension": self.hom_dimension,
            "image_note": self.image_note,
            "all_heights": self.all_heights,
        }
        if self.criterion_agrees is not None:
            obj["criterion_agrees"] = self.criterion_agrees
        return obj


# --- closed-form criteria -------------------------------------------------------------


def criterion_alpha(f: Sequence[MultiPoly] | AlphaPowers) -> bool:
    if isinstance(f, AlphaPowers):
        f = f.f
    f = list(f)
    return span_dim([class_of(g) for g in f]) == len(f)


def _sl2_entries(args):
    if len(args) == 1 and isinstance(args[0], (SL2Char2, GL2Char2)):
        return args[0].entries
    if len(args) == 1:
        args = tuple(args[0])
    if len(args) != 4:
        raise SpecError("expected four entries f11, f12, f21, f22")
    return args


def _dim(*polys) -> int:
    return span_dim([class_of(g) for g in polys])


def criterion_sl2(*args) -> bool:
    """The two-bullet condition; sufficient for saturation of SL_2(1)."""
    entries = _sl2_entries(args)
    spec = SL2Char2(*entries)  # validates p = 2 and det = 1
    f11, f12, f21, f22 = spec.entries
    products = _dim(f11 * f21, f12 * f22) == 2
    return products and (_dim(f11, f21) == 2 or _dim(f12, f22) == 2)


def sl2_quotient_criterion(*args) -> bool:
    """SL_2(1) saturation via the alpha_2 x alpha_2 quotient: classes of f11 f12, f21 f22."""
    entries = _sl2_entries(args)
    spec = SL2Char2(*entries)
    f11, f12, f21, f22 = spec.entries
    return _dim(f11 * f12, f21 * f22) == 2


def criterion_gl2(spec: GL2Char2) -> GL2Bullets:
    """Evaluate the parity-appropriate pair of bullets."""
    if not isinstance(spec, GL2Char2):
        raise SpecError("criterion_gl2 takes a GL2Char2 spec")
    f11, f12, f21, f22 = spec.entries
    products = _dim(f11 * f21, f12 * f22) == 2
    first = _dim(f11, f21) == 2
    second = _dim(f12, f22) == 2
    if spec.m % 2 == 0:
        ok = products
    else:
        ok = products and _dim(f11 * f12, f21 * f22, f11.monomial_like((spec.m,))) == 3
    bullet = None
    if ok:
        bullet = 1 if first else (2 if second else None)
    hit = bullet is not None
    return GL2Bullets(hit and spec.m % 2 == 0, hit and spec.m % 2 == 1, bullet)


# --- verdicts -----------------------------------------------------------------------------


def _image_note(dim: int, m_even: bool) -> str:
    if dim == 1:
        return GL2_IMAGE
    if dim == 2 and m_even:
        return SL2_IMAGE
    return f"image of order {16 // dim}"


def verdict(spec: TorsorSpec, method: str = "both") -> Verdict:
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, not {method!r}")
    use_criterion = method in ("criterion", "both")
    use_solver = method in ("solver", "both")

    if isinstance(spec, MuP):
        crit = spec.m % spec.field.p != 0
        dim = solve_hom(build_mu_p(spec.m, spec.field, spec.var)).dimension if use_solver else None
        sat = (dim == 1) if use_solver else crit
        return Verdict(sat, method, dim, None, criterion_agrees=(crit == sat) if method == "both" else None)

    if isinstance(spec, AlphaPowers):
        crit = criterion_alpha(spec) if use_criterion else None
        dim = solve_hom(build_alpha(spec)).dimension if use_solver else None
        sat = (dim == 1) if use_solver else crit
        return Verdict(sat, method, dim, None, criterion_agrees=(crit == sat) if method == "both" else None)

    if isinstance(spec, SL2Char2):
        crit = sl2_quotient_criterion(spec) if use_criterion else None
        dim = note = None
        if use_solver:
            dim = solve_hom(build_gl2_char2(spec.as_gl2())).dimension
            note = _image_note(dim, True)
            sat = dim == 2
        else:
            sat = crit
            note = SL2_IMAGE if crit else None
        return Verdict(sat, method, dim, note, criterion_agrees=(crit == sat) if method == "both" else None)

    if isinstance(spec, GL2Char2):
        crit = None
        if use_criterion:
            if spec.m % 2 == 0:
                # det f = x^m is a square: the determinant character is trivial
                crit = False
            elif criterion_gl2(spec).odd_case_hit:
                crit = True
            elif not use_solver:
                raise Inconclusive("no bullet holds for this odd-m GL2 input; use the solver")
        dim = note = None
        if use_solver:
            dim = solve_hom(build_gl2_char2(spec)).dimension
            note = _image_note(dim, spec.m % 2 == 0)
            sat = dim == 1
        else:
            sat = crit
        agrees = None
        if method == "both" and crit is not None:
            agrees = crit == sat
        return Verdict(sat, method, dim, note, criterion_agrees=agrees)

    raise SpecError(f"no verdict for {type(spec).__name__}")


# --- univariate helpers for random SL_2 elements --------------------------------------


def _udivmod(a: MultiPoly, b: MultiPoly):
    F = a.field
    lead = b.degree()
    inv = F.inv(b.terms[(lead,)])
    q = a.zero_like()
    r = a
    while not r.is_zero() and r.degree() >= lead:
        d = r.degree()
        c = F.mul(r.terms[(d,)], inv)
        t = a.monomial_like((d - lead,), c)
        q = q + t
        r = r - t * b
    return q, r


def xgcd(a: MultiPoly, b: MultiPoly):
    """(g, s, t) with s a + t b = g = gcd(a, b), g monic (univariate)."""
    r0, r1 = a, b
    s0, s1 = a.const_like(1), a.zero_like()
    t0, t1 = a.zero_like(), a.const_like(1)
    while not r1.is_zero():
        q, r = _udivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    inv = a.field.inv(r0.terms[(r0.degree(),)])
    return r0.scale(inv), s0.scale(inv), t0.scale(inv)


def random_poly(rng: random.Random, field: FieldSpec, vars, degree: int, density: float = 1.0,
                laurent=False) -> MultiPoly:
    """Random polynomial with every exponent at most ``degree`` (total degree bound)."""
    vars = tuple(vars)
    terms = {}
    for exp in itertools.product(range(degree + 1), repeat=len(vars)):
        if sum(exp) <= degree and rng.random() < density:
            terms[exp] = rng.randrange(field.q)
    return MultiPoly(field, vars, terms, laurent)


def random_sl2(rng: random.Random, field: FieldSpec, degree: int, var: str = "x") -> SL2Char2:
    """A random element of SL_2(F_q[x]) with entries of degree <= degree."""
    while True:
        f11 = random_poly(rng, field, (var,), degree)
        f12 = random_poly(rng, field, (var,), degree)
        if f11.is_zero() and f12.is_zero():
            continue
        g, s, t = xgcd(f11, f12)
        if g.is_zero() or g.degree() != 0:
            continue
        # f11 s + f12 t = 1  ->  f22 = s, f21 = -t
        f22, f21 = s, -t
        room = degree - max(f11.degree(), f12.degree())
        if room >= 0:
            c = random_poly(rng, field, (var,), room)
            f21 = f21 + c * f11
            f22 = f22 + c * f12
        if max(f21.degree(), f22.degree()) <= degree:
            return SL2Char2(f11, f12, f21, f22)


def random_gl2(rng: random.Random, field: FieldSpec, degree: int, m: int, var: str = "x") -> GL2Char2:
    """A random GL2Char2 spec: S diag(x^a, x^(m-a)) T with S, T in SL_2."""
    s = random_sl2(rng, field, degree, var).entries
    t = random_sl2(rng, field, degree, var).entries
    a = rng.randint(0, m)
    x = s[0].monomial_like
    d1, d2 = x((a,)), x((m - a,))
    # (S D) T
    sd = (s[0] * d1, s[1] * d2, s[2] * d1, s[3] * d2)
    f = (
        sd[0] * t[0] + sd[1] * t[2],
        sd[0] * t[1] + sd[1] * t[3],
        sd[2] * t[0] + sd[3] * t[2],
        sd[2] * t[1] + sd[3] * t[3],
    )
    return GL2Char2(*f, m)


# --- search ---------------------------------------------------------------------------------


def _poly_space(field: FieldSpec, vars, degree: int) -> list:
    """All polynomials with total degree <= degree, in graded order of coefficient tuples."""
    monos = sorted(
        (e for e in itertools.product(range(degree + 1), repeat=len(vars)) if sum(e) <= degree),
        key=lambda e: (sum(e), e),
    )
    out = []
    for coeffs in itertools.product(range(field.q), repeat=len(monos)):
        out.append((coeffs, MultiPoly(field, vars, dict(zip(monos, coeffs)))))
    return monos, out


def _candidate_key(coeff_tuples):
    # graded: number of nonzero coefficients, then lexicographic on the tuple
    flat = tuple(c for t in coeff_tuples for c in t)
    return (sum(1 for c in flat if c), flat)


def _evaluate(spec):
    return verdict(spec, "solver").saturated


def _filter(candidates: list, budget, workers: int | None):
    found = []
    if workers and workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunk = max(1, len(candidates) // (4 * workers))
            for spec, ok in zip(candidates, pool.map(_evaluate, candidates, chunksize=chunk)):
                if ok:
                    found.append(spec)
                    if budget is not None and len(found) >= budget:
                        break
        return found
    for spec in candidates:
        if _evaluate(spec):
            found.append(spec)
            if budget is not None and len(found) >= budget:
                break
    return found


def enumerate_candidates(family: str, field: FieldSpec, degree_bound: int, n: int = 1,
                         nvars: int = 1) -> list:
    """Every spec of the family with entries in the degree box, in search order."""
    vars = ("a",) if nvars == 1 else tuple(f"x{i + 1}" for i in range(nvars))
    monos = [e for e in itertools.product(range(degree_bound + 1), repeat=len(vars))
             if sum(e) <= degree_bound]
    arity = 4 if family == "sl2_char2" else n
    total = field.q ** (len(monos) * arity)
    if total > EXHAUSTIVE_LIMIT:
        raise SpecError(
            f"exhaustive search over {total} candidates exceeds {EXHAUSTIVE_LIMIT}; "
            "lower the degree bound or use random mode"
        )
    _, space = _poly_space(field, vars, degree_bound)
    out = []
    if family == "sl2_char2":
        if field.p != 2:
            raise SpecError("SL2Char2 search needs p = 2")
        for combo in itertools.product(space, repeat=4):
            polys = [g for _, g in combo]
            if polys[0] * polys[3] - polys[1] * polys[2] == 1:
                out.append((_candidate_key([c for c, _ in combo]), SL2Char2(*polys)))
    elif family == "alpha":
        for combo in itertools.product(space, repeat=n):
            out.append((_candidate_key([c for c, _ in combo]), AlphaPowers(tuple(g for _, g in combo))))
    else:
        raise SpecError(f"search supports sl2_char2 and alpha, not {family!r}")
    out.sort(key=lambda kv: kv[0])
    return [spec for _, spec in out]


def search_saturated(family: str, degree_bound: int, budget: int | None = None,
                     mode: str = "exhaustive", seed: int | None = None, field: FieldSpec | None = None,
                     n: int = 1, nvars: int = 1, workers: int | None = None,
                     max_attempts: int | None = None) -> list:
    """Saturated specs of the family, in deterministic order.

    Exhaustive mode lists candidates ordered by number of nonzero
    coefficients and then lexicographically by their coefficient tuples.
    Random mode needs a seed and a budget, and draws candidates until the
    budget is met or ``max_attempts`` (default 50 per requested spec) is hit.
    """
    field = field or FieldSpec(2)
    if budget is not None and budget < 0:
        raise SpecError("budget must be nonnegative")
    if budget == 0:
        return []
    if degree_bound < 0:
        raise SpecError("degree bound must be nonnegative")
    if mode == "exhaustive":
        candidates = enumerate_candidates(family, field, degree_bound, n, nvars)
        return _filter(candidates, budget, workers)
    if mode != "random":
        raise SpecError(f"mode must be exhaustive or random, not {mode!r}")
    if seed is None:
        raise SpecError("random search needs an explicit seed")
    if budget is None:
        raise SpecError("random search needs a budget")
    rng = random.Random(seed)
    attempts = max_attempts if max_attempts is not None else 50 * budget
    vars = ("a",) if nvars == 1 else tuple(f"x{i + 1}" for i in range(nvars))
    candidates = []
    for _ in range(attempts):
        if family == "sl2_char2":
            candidates.append(random_sl2(rng, field, degree_bound, "a"))
        elif family == "alpha":
            candidates.append(AlphaPowers(tuple(random_poly(rng, field, vars, degree_bound)
                                                for _ in range(n))))
        else:
            raise SpecError(f"search supports sl2_char2 and alpha, not {family!r}")
    return _filter(candidates, budget, workers)
