"""Pure-Python reduced row echelon form over F_q.

Rows are lists of encoded field values.  GF(2) rows are packed into Python
ints (bit j = column j), odd prime fields use modular lists, extension
fields go through the table arithmetic of FieldSpec.
"""

from __future__ import annotations

from ..algebra.field import FieldSpec


def _rref_gf2(rows, ncols):
    packed = []
    for r in rows:
        v = 0
        for j, c in enumerate(r):
            if c:
                v |= 1 << j
        if v:
            packed.append(v)
    basis: dict = {}  # pivot column -> row with lowest set bit at pivot
    for v in packed:
        while v:
            low = v & -v
            piv = low.bit_length() - 1
            b = basis.get(piv)
            if b is None:
                basis[piv] = v
                break
            v ^= b
    pivots = sorted(basis)
    # back substitution to reduced form
    for i in reversed(range(len(pivots))):
        pv = basis[pivots[i]]
        bit = 1 << pivots[i]
        for j in range(i):
            if basis[pivots[j]] & bit:
                basis[pivots[j]] ^= pv
    out = []
    for piv in pivots:
        v = basis[piv]
        out.append([(v >> j) & 1 for j in range(ncols)])
    return out, pivots


def _rref_prime(rows, ncols, p):
    m = [[c % p for c in r] for r in rows]
    m = [r for r in m if any(r)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][col], p - 2, p)
        row = [c * inv % p for c in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = m[i][col]
                mi = m[i]
                m[i] = [(a - c * b) % p for a, b in zip(mi, row)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def _rref_field(rows, ncols, field: FieldSpec):
    add, mul, neg, inv = field.add, field.mul, field.neg, field.inv
    m = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        s = inv(m[r][col])
        row = [mul(c, s) for c in m[r]]
        m[r] = row
        for i in range(len(m)):
            if i != r and m[i][col]:
                c = neg(m[i][col])
                m[i] = [add(a, mul(c, b)) for a, b in zip(m[i], row)]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rref(rows, ncols: int, field: FieldSpec):
    """(nonzero rows of the RREF, pivot columns)."""
    if field.e == 1:
        if field.p == 2:
            return _rref_gf2(rows, ncols)
        return _rref_prime(rows, ncols, field.p)
    return _rref_field(rows, ncols, field)
