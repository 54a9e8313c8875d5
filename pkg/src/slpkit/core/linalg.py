"""Exact dense linear algebra over QQ and F_p.

Matrices are numpy arrays of ``dtype=object`` holding Python ints or
Fractions, so nothing ever touches floating point.  Ranks over QQ are found
by fraction-free (Bareiss) elimination on an integer rescaling of the rows.

Most ranks the Lefschetz code asks for are full, so the rational path first
reduces modulo a 26-bit prime with vectorised int64 elimination.  Reduction
can only lower the rank, so a full modular rank certifies the rational one;
anything short of full falls through to Bareiss.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm

import numpy as np

from .fields import FieldSpec

# Largest prime below 2**26: products of two residues fit in 52 bits, so an
# int64 dot product may accumulate 2**11 terms before overflowing.
MOD_PRIME = 67108859
_CHUNK = 2048
_INT64_SAFE = 1 << 26

RATIONALS = FieldSpec(0)


def as_matrix(data, rows: int | None = None, cols: int | None = None) -> np.ndarray:
    """Coerce nested sequences into a 2-d object array with the given shape."""
    if isinstance(data, np.ndarray) and data.dtype == object and data.ndim == 2:
        m = data
    else:
        m = np.array(data, dtype=object)
        if m.size == 0:
            m = np.zeros((rows or 0, cols or 0), dtype=object)
    if m.ndim != 2:
        m = m.reshape(rows if rows is not None else -1, cols if cols is not None else -1)
    return m


def zeros(rows: int, cols: int) -> np.ndarray:
    m = np.empty((rows, cols), dtype=object)
    m.fill(0)
    return m


def identity(n: int) -> np.ndarray:
    m = zeros(n, n)
    for i in range(n):
        m[i, i] = 1
    return m


def matmul(a: np.ndarray, b: np.ndarray, field: FieldSpec = RATIONALS) -> np.ndarray:
    out = a.dot(b) if a.shape[1] else zeros(a.shape[0], b.shape[1])
    if not field.is_rational:
        out = out % field.characteristic
    return out


def integer_rows(m: np.ndarray) -> list[list[int]]:
    """Scale each row by the lcm of its denominators; rank is unchanged."""
    rows = []
    for row in m.tolist():
        den = 1
        for x in row:
            if isinstance(x, Fraction) and x.denominator != 1:
                den = lcm(den, x.denominator)
        rows.append([int(x * den) for x in row])
    return rows


def to_residues(m: np.ndarray | list, p: int) -> np.ndarray:
    """Integer matrix to an int64 array of residues mod p (requires p < 2**26)."""
    if isinstance(m, np.ndarray) and m.dtype == np.int64:
        return m % p
    arr = np.array(m, dtype=object)
    if arr.size == 0:
        return np.zeros(np.shape(m) if isinstance(m, np.ndarray) else (len(m), 0), dtype=np.int64)
    return (arr % p).astype(np.int64)


def matmul_mod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Product of two int64 residue matrices, reduced mod p."""
    k = a.shape[1]
    if k <= _CHUNK:
        return (a @ b) % p
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
    for s in range(0, k, _CHUNK):
        out = (out + (a[:, s:s + _CHUNK] @ b[s:s + _CHUNK]) % p) % p
    return out


def rank_mod(a: np.ndarray, p: int) -> int:
    """Rank of an int64 residue matrix over F_p by Gaussian elimination."""
    a = np.array(a, dtype=np.int64, copy=True)
    rows, cols = a.shape
    if rows > cols:
        a = a.T.copy()
        rows, cols = cols, rows
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), -1, p)
        a[r, c:] = (a[r, c:] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below, c:] = (a[below, c:] - np.outer(a[below, c], a[r, c:])) % p
        r += 1
    return r


def _rank_mod_python(rows: list[list[int]], p: int) -> int:
    # Fallback for primes too large for int64 products.
    rows = [[x % p for x in row] for row in rows]
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c], -1, p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(r + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        r += 1
    return r


def bareiss_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by single-step fraction-free elimination.

    Every intermediate entry is a minor of the input, so the exact divisions
    never leave the integers.
    """
    m = [list(row) for row in rows if any(row)]
    if not m:
        return 0
    ncols = len(m[0])
    nrows = len(m)
    r = 0
    prev = 1
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pv = m[r][c]
        prow = m[r]
        for i in range(r + 1, nrows):
            row = m[i]
            f = row[c]
            if f:
                m[i] = [(pv * row[j] - f * prow[j]) // prev if j > c else 0 for j in range(ncols)]
            elif pv != prev:
                m[i] = [(pv * x) // prev for x in row]
        prev = pv
        r += 1
    return r


def exact_rank(matrix, field: FieldSpec = RATIONALS) -> int:
    """Rank of ``matrix`` over ``field``, computed without floating point."""
    m = as_matrix(matrix)
    if m.shape[0] == 0 or m.shape[1] == 0:
        return 0
    if not field.is_rational:
        p = field.characteristic
        if p < _INT64_SAFE:
            return rank_mod(to_residues(integer_rows(m), p), p)
        return _rank_mod_python(integer_rows(m), p)
    rows = integer_rows(m)
    full = min(m.shape)
    if rank_mod(to_residues(rows, MOD_PRIME), MOD_PRIME) == full:
        return full
    return bareiss_rank(rows)
