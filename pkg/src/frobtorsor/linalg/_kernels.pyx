# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan elimination over F_q (in-place on numpy buffers)."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t

cnp.import_array()


cdef inline int64_t _inv_mod(int64_t a, int64_t p):
    cdef int64_t result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result


def rref_prime(int64_t[:, ::1] m, int64_t p):
    """Reduce m (entries in [0, p)) in place; returns the pivot columns."""
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, col, i, j, piv
    cdef int64_t inv, c, t
    pivots = []
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        inv = _inv_mod(m[r, col], p)
        for j in range(col, ncols):
            m[r, j] = m[r, j] * inv % p
        for i in range(nrows):
            if i != r:
                c = m[i, col]
                if c != 0:
                    c = p - c
                    for j in range(col, ncols):
                        if m[r, j] != 0:
                            m[i, j] = (m[i, j] + c * m[r, j]) % p
        pivots.append(col)
        r += 1
    return pivots


def rref_gf2(uint64_t[:, ::1] m, Py_ssize_t ncols):
    """Reduce a bit-packed GF(2) matrix in place (column j = bit j%64 of word j//64)."""
    cdef Py_ssize_t nrows = m.shape[0], nwords = m.shape[1]
    cdef Py_ssize_t r = 0, col, i, k, piv, w
    cdef uint64_t bit, t
    pivots = []
    for col in range(ncols):
        if r == nrows:
            break
        w = col >> 6
        bit = (<uint64_t>1) << (col & 63)
        piv = -1
        for i in range(r, nrows):
            if m[i, w] & bit:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for k in range(nwords):
                t = m[r, k]
                m[r, k] = m[piv, k]
                m[piv, k] = t
        for i in range(nrows):
            if i != r and (m[i, w] & bit):
                for k in range(w, nwords):
                    m[i, k] ^= m[r, k]
        pivots.append(col)
        r += 1
    return pivots


def rref_tables(int64_t[:, ::1] m, int64_t[::1] exp, int64_t[::1] log,
                int64_t[::1] zech, int64_t q, int64_t p):
    """Reduce m over F_q given antilog table (length 2(q-1)), log and Zech tables."""
    cdef Py_ssize_t nrows = m.shape[0], ncols = m.shape[1]
    cdef Py_ssize_t r = 0, col, i, j, piv
    cdef int64_t qm1 = q - 1, half = (q - 1) // 2
    cdef int64_t linv, lc, a, b, prod, la, z, t
    pivots = []
    for col in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i, col] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                t = m[r, j]
                m[r, j] = m[piv, j]
                m[piv, j] = t
        linv = (qm1 - log[m[r, col]]) % qm1
        for j in range(col, ncols):
            if m[r, j] != 0:
                m[r, j] = exp[log[m[r, j]] + linv]
        for i in range(nrows):
            if i == r or m[i, col] == 0:
                continue
            # row_i -= c * row_r, i.e. row_i += (-c) * row_r
            lc = log[m[i, col]]
            if p != 2:
                lc = (lc + half) % qm1
            for j in range(col, ncols):
                b = m[r, j]
                if b == 0:
                    continue
                prod = exp[lc + log[b]]
                a = m[i, j]
                if p == 2:
                    m[i, j] = a ^ prod
                elif a == 0:
                    m[i, j] = prod
                else:
                    la = log[a]
                    z = zech[(log[prod] - la + qm1) % qm1]
                    m[i, j] = 0 if z < 0 else exp[la + z]
        pivots.append(col)
        r += 1
    return pivots
