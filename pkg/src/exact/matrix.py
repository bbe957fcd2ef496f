"""
Exact matrices over the rationals.

Matrices and vectors are numpy arrays with dtype=object whose entries are
Fractions. numpy supplies indexing, stacking and the elementwise/matmul
operators; every reduction below is exact, so there is no tolerance anywhere.
"""

from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence

import numpy as np

from src.exact.rational import as_rational
from src.utils.errors import DimensionMismatchError


class RowReduction(NamedTuple):
    """Result of rref: nonzero rows of the reduced form, pivot columns and rank."""
    reduced: np.ndarray
    pivots: List[int]
    rank: int


def zeros(rows: int, cols: int) -> np.ndarray:
    return np.full((rows, cols), Fraction(0), dtype=object)


def zero_vector(dim: int) -> np.ndarray:
    return np.full(dim, Fraction(0), dtype=object)


def identity(dim: int) -> np.ndarray:
    m = zeros(dim, dim)
    for i in range(dim):
        m[i, i] = Fraction(1)
    return m


def unit_vector(dim: int, index: int) -> np.ndarray:
    v = zero_vector(dim)
    v[index] = Fraction(1)
    return v


def to_vector(values: Iterable) -> np.ndarray:
    items = [as_rational(x) for x in values]
    v = np.empty(len(items), dtype=object)
    for i, x in enumerate(items):
        v[i] = x
    return v


def to_matrix(rows: Sequence[Sequence], cols: Optional[int] = None) -> np.ndarray:
    """
    Build an exact matrix from nested sequences (or another array).

    Args:
        rows: row-major entries; ints, Fractions or rational literals
        cols: column count, needed only when rows is empty

    Returns:
        (len(rows) x cols) object array of Fractions
    """
    if isinstance(rows, np.ndarray) and rows.ndim == 2:
        out = np.empty(rows.shape, dtype=object)
        for idx, x in np.ndenumerate(rows):
            out[idx] = as_rational(x) if not isinstance(x, Fraction) else x
        return out
    rows = [list(r) for r in rows]
    if not rows:
        return zeros(0, cols or 0)
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise DimensionMismatchError("every row must have the same number of entries")
    out = np.empty((len(rows), width), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = as_rational(x)
    return out


def freeze(a: np.ndarray) -> np.ndarray:
    """Mark an array read-only and return it."""
    a.flags.writeable = False
    return a


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix product that stays exact when an inner dimension is zero."""
    if a.shape[-1] != b.shape[0]:
        raise DimensionMismatchError(f"cannot multiply shapes {a.shape} and {b.shape}")
    if a.shape[-1] == 0:
        if a.ndim == 1:
            return zero_vector(b.shape[1]) if b.ndim == 2 else Fraction(0)
        return zeros(a.shape[0], b.shape[1]) if b.ndim == 2 else zero_vector(a.shape[0])
    return a @ b


def is_zero(v: np.ndarray) -> bool:
    return not any(x != 0 for x in v.flat)


def vector_key(v: np.ndarray) -> tuple:
    return tuple(Fraction(x) for x in v.flat)


def rref(m: np.ndarray) -> RowReduction:
    """
    Reduced row-echelon form.

    Pivot rows are chosen as the first nonzero entry at or below the current
    row; zero rows are dropped from the result.

    Args:
        m: exact matrix

    Returns:
        RowReduction(reduced, pivots, rank)
    """
    a = to_matrix(m) if m.size else np.array(m, dtype=object).reshape(m.shape)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            a[[r, p]] = a[[p, r]]
        pivot = a[r, c]
        if pivot != 1:
            a[r] = a[r] / pivot
        for i in range(rows):
            if i != r and a[i, c] != 0:
                a[i] = a[i] - a[i, c] * a[r]
        pivots.append(c)
        r += 1
    return RowReduction(a[:r].copy(), pivots, r)


def rank(m: np.ndarray) -> int:
    return rref(m).rank


def solve(a: np.ndarray, rhs: np.ndarray) -> Optional[np.ndarray]:
    """
    One solution of a·x = rhs, free variables set to zero.

    Args:
        a: (r x c) matrix
        rhs: length-r vector

    Returns:
        length-c solution vector, or None when the system is inconsistent
    """
    rows, cols = a.shape
    if len(rhs) != rows:
        raise DimensionMismatchError(f"right-hand side has length {len(rhs)}, expected {rows}")
    augmented = zeros(rows, cols + 1)
    augmented[:, :cols] = a
    augmented[:, cols] = rhs
    reduction = rref(augmented)
    if cols in reduction.pivots:
        return None
    x = zero_vector(cols)
    for i, c in enumerate(reduction.pivots):
        x[c] = reduction.reduced[i, cols]
    return x


def determinant(m: np.ndarray) -> Fraction:
    n, k = m.shape
    if n != k:
        raise DimensionMismatchError("determinant of a non-square matrix")
    a = to_matrix(m) if m.size else zeros(0, 0)
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if a[i, c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[[c, p]] = a[[p, c]]
            det = -det
        pivot = a[c, c]
        det *= pivot
        for i in range(c + 1, n):
            if a[i, c] != 0:
                a[i] = a[i] - (a[i, c] / pivot) * a[c]
    return det


def inverse(m: np.ndarray) -> np.ndarray:
    n, k = m.shape
    if n != k:
        raise DimensionMismatchError("inverse of a non-square matrix")
    augmented = zeros(n, 2 * n)
    augmented[:, :n] = m
    augmented[:, n:] = identity(n)
    reduction = rref(augmented)
    if reduction.pivots[:n] != list(range(n)) or reduction.rank < n:
        raise DimensionMismatchError("matrix is singular")
    return reduction.reduced[:, n:].copy()


def block_diagonal(*blocks: np.ndarray) -> np.ndarray:
    size = sum(b.shape[0] for b in blocks)
    out = zeros(size, size)
    offset = 0
    for b in blocks:
        k = b.shape[0]
        out[offset:offset + k, offset:offset + k] = b
        offset += k
    return out
