"""Exact linear algebra over F_q: rank, RREF, nullspace.

Two interchangeable elimination backends exist: a compiled Cython kernel
(``_kernels``) and a pure-Python fallback (``_pure``).  The compiled one is
used when it imports; set ``FROBTORSOR_BACKEND=python`` (or call
:func:`set_backend`) to force the fallback.  Both return identical results.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from typing import Sequence

from ..algebra.field import FieldSpec
from . import _pure

try:
    import numpy as np

    from . import _kernels
except ImportError:  # compiled extension not built
    _kernels = None

AVAILABLE = ("cython", "python") if _kernels is not None else ("python",)

_backend = None


def _initial_backend() -> str:
    wanted = os.environ.get("FROBTORSOR_BACKEND", "auto").lower()
    if wanted == "auto":
        return AVAILABLE[0]
    if wanted not in ("cython", "python"):
        raise ValueError(f"FROBTORSOR_BACKEND must be auto, cython or python, not {wanted!r}")
    if wanted not in AVAILABLE:
        raise ImportError("the compiled elimination kernel is not built")
    return wanted


def get_backend() -> str:
    global _backend
    if _backend is None:
        _backend = _initial_backend()
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in AVAILABLE:
        raise ValueError(f"backend {name!r} unavailable; choose from {AVAILABLE}")
    _backend = name


@contextmanager
def using_backend(name: str):
    old = get_backend()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(old)


def _rref_compiled(rows, ncols, field: FieldSpec):
    nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    if field.e == 1 and field.p == 2:
        nwords = (ncols + 63) // 64
        dense = np.zeros((nrows, 64 * nwords), dtype=np.uint8)
        dense[:, :ncols] = np.array(rows, dtype=np.int64) & 1
        m = np.ascontiguousarray(np.packbits(dense, axis=1, bitorder="little").view("<u8"))
        pivots = _kernels.rref_gf2(m, ncols)
        r = len(pivots)
        bits = np.unpackbits(m[:r].view(np.uint8), axis=1, bitorder="little")[:, :ncols]
        return bits.astype(int).tolist(), pivots
    m = np.array(rows, dtype=np.int64).reshape(nrows, ncols)
    if field.e == 1:
        m %= field.p
        pivots = _kernels.rref_prime(m, field.p)
    else:
        exp = np.array(field.exp_table, dtype=np.int64)
        log = np.array(field.log_table, dtype=np.int64)
        zech = np.array(field.zech_table, dtype=np.int64)
        pivots = _kernels.rref_tables(m, exp, log, zech, field.q, field.p)
    return m[: len(pivots)].tolist(), pivots


def rref(rows: Sequence[Sequence[int]], ncols: int, field: FieldSpec):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a matrix with {ncols} columns")
    if get_backend() == "cython":
        return _rref_compiled(rows, ncols, field)
    return _pure.rref(rows, ncols, field)


def rank(rows, ncols: int, field: FieldSpec) -> int:
    return len(rref(rows, ncols, field)[1])


def nullspace_from_rref(reduced, pivots, ncols: int, field: FieldSpec) -> list:
    """Basis of {a : M a = 0}, one vector per free column, in column order."""
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, piv in zip(reduced, pivots):
            c = row[free]
            if c:
                v[piv] = field.neg(c)
        basis.append(v)
    return basis


def nullspace(rows, ncols: int, field: FieldSpec) -> list:
    reduced, pivots = rref(rows, ncols, field)
    return nullspace_from_rref(reduced, pivots, ncols, field)


class RowReducer:
    """Accumulates rows and keeps a reduced basis of their span.

    Rows are buffered and folded into the basis in chunks so memory stays
    bounded by the rank plus the chunk size.
    """

    def __init__(self, ncols: int, field: FieldSpec, chunk: int = 512):
        self.ncols = ncols
        self.field = field
        self.chunk = chunk
        self._basis: list = []
        self._pivots: list = []
        self._buffer: list = []
        self._seen: set = set()

    def add(self, row) -> None:
        key = tuple(row)
        if len(key) != self.ncols:
            raise ValueError(f"row of length {len(key)} for {self.ncols} columns")
        if not any(key) or key in self._seen:
            return
        self._seen.add(key)
        self._buffer.append(list(key))
        if len(self._buffer) >= self.chunk:
            self.flush()

    def flush(self) -> None:
        if not self._buffer:
            return
        self._basis, self._pivots = rref(self._basis + self._buffer, self.ncols, self.field)
        self._buffer = []
        if len(self._seen) > 4 * self.chunk:
            self._seen = set()

    @property
    def rank(self) -> int:
        self.flush()
        return len(self._pivots)

    def rref(self):
        self.flush()
        return self._basis, self._pivots

    def nullspace(self) -> list:
        self.flush()
        return nullspace_from_rref(self._basis, self._pivots, self.ncols, self.field)


__all__ = [
    "AVAILABLE",
    "RowReducer",
    "get_backend",
    "nullspace",
    "nullspace_from_rref",
    "rank",
    "rref",
    "set_backend",
    "using_backend",
]
