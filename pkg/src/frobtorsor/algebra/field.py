"""Finite fields F_q, q = p^e, with elements encoded as integers.

An element of F_{p^e} is stored as the integer ``sum(c_i * p**i)`` where
``(c_0, ..., c_{e-1})`` are its coordinates in the power basis
``1, w, ..., w^(e-1)``.  Here ``w`` is a root of the *first* monic primitive
polynomial of degree ``e`` over F_p, candidates being ordered by the integer
encoding of their non-leading coefficients.  For F_4 this is ``x^2 + x + 1``.

Size bounds (all arithmetic stays exact in machine integers):

* prime fields: ``p < 2**31`` so products fit in a signed 64-bit word;
* extension fields: ``q = p**e <= 2**16``; these use log/antilog tables
  and Zech logarithms, each of length ``q``.

Everything downstream works over such an F_q in place of an algebraically
closed field.  That is sound for every quantity computed in this package:
each one is the rank of a matrix with entries in F_q, and the rank of such
a matrix does not change under field extension.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

MAX_PRIME = 2**31
MAX_EXTENSION_ORDER = 2**16


class FieldError(ValueError):
    """Invalid field parameters or operands from different fields."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


@dataclass(frozen=True)
class FieldSpec:
    """The field F_{p^e}.  Arithmetic methods act on encoded integers."""

    p: int
    e: int = 1

    def __post_init__(self):
        if not isinstance(self.p, int) or not _is_prime(self.p):
            raise FieldError(f"characteristic must be prime, got {self.p!r}")
        if not isinstance(self.e, int) or self.e < 1:
            raise FieldError(f"extension degree must be >= 1, got {self.e!r}")
        if self.e == 1 and self.p >= MAX_PRIME:
            raise FieldError(f"prime fields need p < 2**31, got {self.p}")
        if self.e > 1 and self.p**self.e > MAX_EXTENSION_ORDER:
            raise FieldError(
                f"extension fields need p**e <= {MAX_EXTENSION_ORDER}, got {self.p}**{self.e}"
            )

    def __str__(self):
        return f"GF({self.p})" if self.e == 1 else f"GF({self.p}^{self.e})"

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def is_prime(self) -> bool:
        return self.e == 1

    # --- tables for extension fields -------------------------------------

    @cached_property
    def _tables(self):
        p, e, q = self.p, self.e, self.q
        for cand in range(p**e):
            low = [(cand // p**i) % p for i in range(e)]
            exp = self._power_sequence(low)
            if exp is not None:
                break
        else:  # pragma: no cover - a primitive polynomial always exists
            raise FieldError(f"no primitive polynomial for {self}")
        log = [-1] * q
        for k, v in enumerate(exp):
            log[v] = k
        zech = [-1] * (q - 1)
        for k, v in enumerate(exp):
            s = self._digit_add(v, 1)
            zech[k] = log[s] if s else -1
        return tuple(low) + (1,), exp + exp, log, zech

    def _power_sequence(self, low: Sequence[int]) -> list[int] | None:
        """Encoded powers w^0..w^(q-2) if x^e + low(x) is primitive, else None."""
        p, e, q = self.p, self.e, self.q
        coords = [1] + [0] * (e - 1)
        seen, out = set(), []
        for _ in range(q - 1):
            v = sum(c * p**i for i, c in enumerate(coords))
            if v == 0 or v in seen:
                return None
            seen.add(v)
            out.append(v)
            top = coords[-1]
            coords = [0] + coords[:-1]
            if top:
                coords = [(c - top * a) % p for c, a in zip(coords, low)]
        return out if coords == [1] + [0] * (e - 1) else None

    def _digit_add(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        out, place = 0, 1
        while a or b:
            out += ((a % p + b % p) % p) * place
            a, b, place = a // p, b // p, place * p
        return out

    @property
    def modulus(self) -> tuple[int, ...]:
        """Coefficients (low to high, monic) of the defining polynomial of w."""
        if self.e == 1:
            return (0, 1)
        return self._tables[0]

    @property
    def exp_table(self) -> list[int]:
        """w^k for k in [0, 2(q-1)); doubled so sums of two logs index directly."""
        return self._tables[1]

    @property
    def log_table(self) -> list[int]:
        return self._tables[2]

    @property
    def zech_table(self) -> list[int]:
        """zech[k] = log(1 + w^k), or -1 where 1 + w^k = 0."""
        return self._tables[3]

    # --- arithmetic on encoded values ----------------------------------------

    def normalize(self, value) -> int:
        if isinstance(value, FqElement):
            if value.field != self:
                raise FieldError(f"element of {value.field} used in {self}")
            return value.value
        if not isinstance(value, int):
            raise FieldError(f"cannot interpret {value!r} as an element of {self}")
        if self.e == 1:
            return value % self.p
        if not 0 <= value < self.q:
            raise FieldError(f"encoded value {value} out of range for {self}")
        return value

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if a == 0:
            return b
        if b == 0:
            return a
        log, qm1 = self.log_table, self.q - 1
        la = log[a]
        z = self.zech_table[(log[b] - la) % qm1]
        return 0 if z < 0 else self.exp_table[la + z]

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2 or a == 0:
            return a
        # -1 = w^((q-1)/2) for odd q
        return self.exp_table[self.log_table[a] + (self.q - 1) // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.e == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        return self.exp_table[self.log_table[a] + self.log_table[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"division by zero in {self}")
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.exp_table[(self.q - 1 - self.log_table[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            return self.pow(self.inv(a), -n)
        if self.e == 1:
            return pow(a, n, self.p)
        if a == 0:
            return 0 if n else 1
        return self.exp_table[self.log_table[a] * n % (self.q - 1)]

    def frobenius(self, a: int) -> int:
        """a -> a^p."""
        return a if self.e == 1 else self.pow(a, self.p)

    def pth_root(self, a: int) -> int:
        """The unique b with b^p = a, namely a^(p^(e-1))."""
        return a if self.e == 1 else self.pow(a, self.p ** (self.e - 1))

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> F_q."""
        return n % self.p

    # --- coordinates and elements ---------------------------------------------

    def coords(self, a: int) -> list[int]:
        return [(a // self.p**i) % self.p for i in range(self.e)]

    def from_coords(self, coords: Sequence[int]) -> int:
        if len(coords) != self.e:
            raise FieldError(f"{self} needs {self.e} coordinates, got {len(coords)}")
        return sum((c % self.p) * self.p**i for i, c in enumerate(coords))

    def generator(self) -> int:
        """Encoded w (the primitive root; for prime fields the least one)."""
        if self.e > 1:
            return self.p
        order = self.p - 1
        factors = _prime_factors(order)
        for g in range(1, self.p):
            if all(pow(g, order // r, self.p) != 1 for r in factors):
                return g
        raise AssertionError("unreachable")  # pragma: no cover

    def element(self, value) -> "FqElement":
        return FqElement(self, self.normalize(value))

    def elements(self) -> Iterator["FqElement"]:
        for v in range(self.q):
            yield FqElement(self, v)

    def format_value(self, a: int) -> str:
        if self.e == 1:
            return str(a)
        parts = []
        for i, c in reversed(list(enumerate(self.coords(a)))):
            if c == 0:
                continue
            mono = "" if i == 0 else ("w" if i == 1 else f"w^{i}")
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FqElement:
    """An element of F_q, value being the canonical encoded representative."""

    field: FieldSpec
    value: int

    def __post_init__(self):
        if not isinstance(self.value, int) or not 0 <= self.value < self.field.q:
            raise FieldError(f"value {self.value!r} is not canonical in {self.field}")

    def _coerce(self, other) -> int:
        if isinstance(other, FqElement):
            if other.field != self.field:
                raise FieldError(f"cannot combine {self.field} and {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def _wrap(self, v: int) -> "FqElement":
        return FqElement(self.field, v)

    def __add__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(self.value, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.sub(b, self.value))

    def __mul__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(self.value, b))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        return NotImplemented if b is NotImplemented else self._wrap(self.field.div(b, self.value))

    def __neg__(self):
        return self._wrap(self.field.neg(self.value))

    def __pow__(self, n: int):
        return self._wrap(self.field.pow(self.value, n))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FqElement):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def inverse(self) -> "FqElement":
        return self._wrap(self.field.inv(self.value))

    def frobenius(self) -> "FqElement":
        return self._wrap(self.field.frobenius(self.value))

    def pth_root(self) -> "FqElement":
        return self._wrap(self.field.pth_root(self.value))

    def __repr__(self):
        return f"FqElement({self.field}, {self.field.format_value(self.value)})"

    def __str__(self):
        return self.field.format_value(self.value)
