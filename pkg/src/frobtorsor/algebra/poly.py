"""Exact multivariate (optionally Laurent) polynomials over F_q.

Terms live in a dict from exponent tuples to encoded nonzero coefficients.
Laurent support is a per-variable flag: a variable flagged Laurent may carry
negative exponents, the others may not.  Printing and serialization use the
graded-lexicographic order (total degree, then exponent tuple), ascending.
"""

from __future__ import annotations

import re
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .field import FieldError, FieldSpec, FqElement

Exponent = tuple

FORMAT_VERSION = 1


class RingMismatch(ValueError):
    """Operands live in different polynomial rings."""


class NotDivisible(ArithmeticError):
    """Raised by exact division when the quotient is not a polynomial."""


def grlex_key(exp: Exponent):
    return (sum(exp), exp)


def _flags(laurent, n: int) -> tuple:
    if isinstance(laurent, bool):
        return (laurent,) * n
    flags = tuple(bool(b) for b in laurent)
    if len(flags) != n:
        raise RingMismatch(f"{len(flags)} Laurent flags given for {n} variables")
    return flags


class MultiPoly:
    """A polynomial in ``vars`` over ``field``; immutable once built."""

    __slots__ = ("field", "vars", "laurent", "_terms", "_hash")

    def __init__(self, field: FieldSpec, vars: Sequence[str], terms=(), laurent=False):
        vars = tuple(vars)
        if len(set(vars)) != len(vars):
            raise RingMismatch(f"repeated variable names in {vars}")
        flags = _flags(laurent, len(vars))
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        for exp, c in items:
            exp = tuple(int(k) for k in exp)
            if len(exp) != len(vars):
                raise RingMismatch(f"exponent {exp} does not match variables {vars}")
            for k, ok in zip(exp, flags):
                if k < 0 and not ok:
                    raise RingMismatch(f"negative exponent {exp} on a non-Laurent variable")
            v = field.normalize(c)
            if v:
                acc[exp] = field.add(acc[exp], v) if exp in acc else v
        self.field = field
        self.vars = vars
        self.laurent = flags
        self._terms = {k: v for k, v in acc.items() if v}
        self._hash = None

    @classmethod
    def _raw(cls, field, vars, laurent, terms: dict) -> "MultiPoly":
        obj = cls.__new__(cls)
        obj.field, obj.vars, obj.laurent = field, vars, laurent
        obj._terms = terms
        obj._hash = None
        return obj

    # --- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, field, vars, laurent=False):
        return cls(field, vars, {}, laurent)

    @classmethod
    def constant(cls, field, vars, c, laurent=False):
        return cls(field, vars, {(0,) * len(tuple(vars)): c}, laurent)

    @classmethod
    def one(cls, field, vars, laurent=False):
        return cls.constant(field, vars, 1, laurent)

    @classmethod
    def monomial(cls, field, vars, exp, c=1, laurent=False):
        return cls(field, vars, {tuple(exp): c}, laurent)

    @classmethod
    def variable(cls, field, vars, name, laurent=False):
        vars = tuple(vars)
        exp = tuple(int(v == name) for v in vars)
        if name not in vars:
            raise RingMismatch(f"{name!r} is not one of {vars}")
        return cls(field, vars, {exp: 1}, laurent)

    def like(self, terms) -> "MultiPoly":
        """A polynomial in the same ring with the given terms."""
        return MultiPoly(self.field, self.vars, terms, self.laurent)

    def zero_like(self) -> "MultiPoly":
        return MultiPoly._raw(self.field, self.vars, self.laurent, {})

    def const_like(self, c) -> "MultiPoly":
        return self.like({(0,) * len(self.vars): c})

    def monomial_like(self, exp, c=1) -> "MultiPoly":
        return self.like({tuple(exp): c})

    # --- basic accessors -------------------------------------------------------

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    @property
    def ring(self) -> tuple:
        return (self.field, self.vars, self.laurent)

    @property
    def nvars(self) -> int:
        return len(self.vars)

    def sorted_terms(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coeff(self, exp) -> FqElement:
        return FqElement(self.field, self._terms.get(tuple(exp), 0))

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0,) * len(self.vars)}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def leading_term(self):
        exp = max(self._terms, key=grlex_key)
        return exp, self._terms[exp]

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def degree(self, var=0) -> int:
        i = self.vars.index(var) if isinstance(var, str) else var
        if not self._terms:
            return -1
        return max(e[i] for e in self._terms)

    def max_exponent(self) -> int:
        """Largest single exponent over all terms and variables (0 for constants)."""
        return max((max(e, default=0) for e in self._terms), default=0)

    def support_vars(self) -> set:
        return {self.vars[i] for e in self._terms for i, k in enumerate(e) if k}

    # --- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.ring != self.ring:
                if other.field != self.field:
                    raise RingMismatch(f"fields differ: {self.field} vs {other.field}")
                raise RingMismatch(
                    f"rings differ: {self.vars}/{self.laurent} vs {other.vars}/{other.laurent}"
                )
            return other
        if isinstance(other, int):
            return self.const_like(self.field.from_int(other))
        if isinstance(other, FqElement):
            return self.const_like(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        add = self.field.add
        out = dict(self._terms)
        for exp, c in other._terms.items():
            if exp in out:
                s = add(out[exp], c)
                if s:
                    out[exp] = s
                else:
                    del out[exp]
            else:
                out[exp] = c
        return MultiPoly._raw(self.field, self.vars, self.laurent, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.field.neg
        return MultiPoly._raw(
            self.field, self.vars, self.laurent, {e: neg(c) for e, c in self._terms.items()}
        )

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self._terms or not other._terms:
            return self.zero_like()
        f = self.field
        mul, add = f.mul, f.add
        out: dict = {}
        a_items = list(self._terms.items())
        b_items = list(other._terms.items())
        if len(self.vars) == 1:
            for (ea,), ca in a_items:
                for (eb,), cb in b_items:
                    k = (ea + eb,)
                    c = mul(ca, cb)
                    out[k] = add(out[k], c) if k in out else c
        else:
            for ea, ca in a_items:
                for eb, cb in b_items:
                    k = tuple(x + y for x, y in zip(ea, eb))
                    c = mul(ca, cb)
                    out[k] = add(out[k], c) if k in out else c
        return MultiPoly._raw(f, self.vars, self.laurent, {k: v for k, v in out.items() if v})

    __rmul__ = __mul__

    def scale(self, c) -> "MultiPoly":
        c = self.field.normalize(c)
        if c == 0:
            return self.zero_like()
        mul = self.field.mul
        return MultiPoly._raw(
            self.field, self.vars, self.laurent, {e: mul(v, c) for e, v in self._terms.items()}
        )

    def shift(self, exp) -> "MultiPoly":
        """Multiply by the monomial x^exp."""
        exp = tuple(exp)
        return self.like({tuple(a + b for a, b in zip(e, exp)): c for e, c in self._terms.items()})

    def frobenius(self) -> "MultiPoly":
        """The p-th power, computed termwise (char p)."""
        p, frob = self.field.p, self.field.frobenius
        return MultiPoly._raw(
            self.field,
            self.vars,
            self.laurent,
            {tuple(p * k for k in e): frob(c) for e, c in self._terms.items()},
        )

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible("negative powers exist only for monomials")
            (exp, c), = self._terms.items()
            return self.like({tuple(-k for k in exp): self.field.inv(c)}) ** (-n)
        if n == 0:
            return self.const_like(1)
        p = self.field.p
        if n % p == 0:
            return (self ** (n // p)).frobenius()
        result, base = None, self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def exact_div(self, other: "MultiPoly") -> "MultiPoly":
        """The quotient self / other in this ring; raises NotDivisible otherwise."""
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return self.zero_like()
        n = len(self.vars)
        sa = tuple(min(e[i] for e in self._terms) for i in range(n))
        sb = tuple(min(e[i] for e in other._terms) for i in range(n))
        rem = {tuple(a - s for a, s in zip(e, sa)): c for e, c in self._terms.items()}
        div = {tuple(a - s for a, s in zip(e, sb)): c for e, c in other._terms.items()}
        f = self.field
        lt = max(div, key=grlex_key)
        lc_inv = f.inv(div[lt])
        quot: dict = {}
        while rem:
            top = max(rem, key=grlex_key)
            d = tuple(a - b for a, b in zip(top, lt))
            if min(d, default=0) < 0:
                raise NotDivisible(f"{other} does not divide {self}")
            c = f.mul(rem[top], lc_inv)
            quot[d] = c
            for e, v in div.items():
                k = tuple(a + b for a, b in zip(e, d))
                s = f.sub(rem.get(k, 0), f.mul(c, v))
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        offset = tuple(a - b for a, b in zip(sa, sb))
        try:
            return self.like({tuple(a + o for a, o in zip(e, offset)): c for e, c in quot.items()})
        except RingMismatch as exc:
            raise NotDivisible(str(exc)) from None

    # --- ring changes and substitution ------------------------------------------

    def map_exponents(self, fn, vars=None, laurent=None) -> "MultiPoly":
        vars = self.vars if vars is None else tuple(vars)
        laurent = self.laurent if laurent is None else laurent
        return MultiPoly(self.field, vars, [(fn(e), c) for e, c in self._terms.items()], laurent)

    def map_coeffs(self, fn) -> "MultiPoly":
        return self.like({e: fn(c) for e, c in self._terms.items()})

    def with_laurent(self, laurent) -> "MultiPoly":
        return MultiPoly(self.field, self.vars, self._terms, laurent)

    def rename(self, vars: Sequence[str]) -> "MultiPoly":
        vars = tuple(vars)
        if len(vars) != len(self.vars):
            raise RingMismatch(f"cannot rename {self.vars} to {vars}")
        return MultiPoly._raw(self.field, vars, self.laurent, dict(self._terms))

    def substitute(self, mapping: Mapping[str, "MultiPoly"], target=None) -> "MultiPoly":
        """Replace variables by polynomials of a common target ring.

        Variables not in ``mapping`` must also exist (by name) in the target
        ring, where they are kept as they are.
        """
        if target is None:
            if not mapping:
                return self
            sample = next(iter(mapping.values()))
            target = (sample.field, sample.vars, sample.laurent)
        field, tvars, tlaurent = target
        if field != self.field:
            raise RingMismatch("substitution changes the coefficient field")
        images = []
        for v in self.vars:
            if v in mapping:
                img = mapping[v]
                if img.ring != target:
                    raise RingMismatch(f"image of {v} is not in the target ring")
            else:
                img = MultiPoly.variable(field, tvars, v, tlaurent)
            images.append(img)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = MultiPoly.zero(field, tvars, tlaurent)
        for exp, c in self._terms.items():
            t = MultiPoly.constant(field, tvars, c, tlaurent)
            for i, k in enumerate(exp):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    # --- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, FqElement)):
            try:
                return self == self._coerce(other)
            except FieldError:
                return False
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self._terms.items())))
        return self._hash

    # --- text and JSON -------------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for exp, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, exp) if k
            )
            cs = self.field.format_value(c)
            if self.field.e > 1 and "+" in cs:
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append(mono)
            else:
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"MultiPoly({self.field}, {self.vars}, {self})"

    def to_json(self, with_format: bool = True) -> dict:
        f = self.field
        obj = {}
        if with_format:
            obj["format"] = FORMAT_VERSION
        obj.update(p=f.p, e=f.e)
        if f.e > 1:
            obj["modulus"] = list(f.modulus)
        obj["vars"] = list(self.vars)
        obj["laurent"] = list(self.laurent)
        obj["terms"] = [
            {"exp": list(exp), "coeff": c if f.e == 1 else f.coords(c)}
            for exp, c in self.sorted_terms()
        ]
        return obj

    @classmethod
    def from_json(cls, obj: Mapping, field: FieldSpec | None = None) -> "MultiPoly":
        try:
            if field is None:
                field = FieldSpec(int(obj["p"]), int(obj.get("e", 1)))
            elif "p" in obj and (obj["p"], obj.get("e", 1)) != (field.p, field.e):
                raise RingMismatch(f"polynomial over GF({obj['p']}^{obj.get('e', 1)}) given for {field}")
            if field.e > 1 and "modulus" in obj and tuple(obj["modulus"]) != field.modulus:
                raise FieldError(f"modulus {obj['modulus']} does not match {list(field.modulus)}")
            vars = tuple(obj["vars"])
            laurent = obj.get("laurent", False)
            terms = []
            for t in obj.get("terms", []):
                c = t["coeff"]
                if field.e > 1:
                    if not isinstance(c, list):
                        raise FieldError("extension-field coefficients must be coordinate lists")
                    c = field.from_coords(c)
                elif not isinstance(c, int):
                    raise FieldError(f"prime-field coefficient must be an integer, got {c!r}")
                terms.append((t["exp"], c))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed polynomial JSON: {exc!r}") from None
        return cls(field, vars, terms, laurent)


# --- text parsing ---------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_']*)|(\^|\*\*)|(\*)|([+-])|(\()|(\)))")


def _natural_key(name: str):
    return [int(t) if t.isdigit() else t for t in re.split(r"(\d+)", name)]


def parse_poly(text: str, field: FieldSpec, vars: Sequence[str] | None = None, laurent=None) -> MultiPoly:
    """Parse ``"1 + a^2 + 3*a^-1*b"``-style text.

    Coefficients are integers; over an extension field the symbol ``w``
    (the power-basis generator) may also appear as a coefficient factor.
    Exponents may be negative (``x^-1`` or ``x^(-1)``).  When ``vars`` is
    omitted the variables are the names that occur, in natural sort order.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial {text!r} at position {pos}")
        pos = m.end()
        kind = m.lastindex
        tokens.append((kind, m.group(kind)))
    gen_name = "w" if field.e > 1 and (vars is None or "w" not in vars) else None

    terms_raw = []  # (sign, coeff int-encoded, {var: exp})
    i = 0

    def read_int():
        nonlocal i
        sign = 1
        if i < len(tokens) and tokens[i][0] == 5:
            sign = -1 if tokens[i][1] == "-" else 1
            i += 1
        if i < len(tokens) and tokens[i][0] == 6:
            i += 1
            v = read_int()
            if i >= len(tokens) or tokens[i][0] != 7:
                raise ValueError(f"unbalanced parenthesis in {text!r}")
            i += 1
            return sign * v
        if i >= len(tokens) or tokens[i][0] != 1:
            raise ValueError(f"expected an integer exponent in {text!r}")
        v = int(tokens[i][1])
        i += 1
        return sign * v

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i][0] == 5:
            if tokens[i][1] == "-":
                sign = -sign
            i += 1
        coeff = field.from_int(sign)
        mono: dict = {}
        expect_factor = True
        while i < len(tokens) and expect_factor:
            kind, val = tokens[i]
            if kind == 1:
                i += 1
                coeff = field.mul(coeff, field.from_int(int(val)))
            elif kind == 2:
                i += 1
                k = 1
                if i < len(tokens) and tokens[i][0] == 3:
                    i += 1
                    k = read_int()
                if val == gen_name:
                    coeff = field.mul(coeff, field.pow(field.generator(), k))
                else:
                    mono[val] = mono.get(val, 0) + k
            else:
                raise ValueError(f"unexpected {val!r} in polynomial {text!r}")
            if i < len(tokens) and tokens[i][0] == 4:
                i += 1
            else:
                expect_factor = False
        terms_raw.append((coeff, mono))
        if i < len(tokens) and tokens[i][0] != 5:
            raise ValueError(f"unexpected {tokens[i][1]!r} in polynomial {text!r}")

    names = sorted({v for _, mono in terms_raw for v in mono}, key=_natural_key)
    if vars is None:
        vars = tuple(names) or ("x",)
    else:
        vars = tuple(vars)
        extra = set(names) - set(vars)
        if extra:
            raise RingMismatch(f"unknown variables {sorted(extra)} (ring has {vars})")
    if laurent is None:
        neg = {v for _, mono in terms_raw for v, k in mono.items() if k < 0}
        laurent = tuple(v in neg for v in vars)
    items = [(tuple(mono.get(v, 0) for v in vars), c) for c, mono in terms_raw]
    return MultiPoly(field, vars, items, laurent)


def poly_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    """``a + b`` or ``a * b``; raises RingMismatch across rings."""
    if not isinstance(a, MultiPoly) or not isinstance(b, MultiPoly):
        raise TypeError("poly_arith takes two MultiPoly operands")
    a._coerce(b)
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}; expected 'add' or 'mul'")
