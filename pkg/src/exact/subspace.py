"""
Subspaces in canonical form.

A Subspace stores the nonzero rows of the reduced row-echelon form of any
spanning set, so two Subspace values are equal exactly when their stored
bases are entry-wise identical.
"""

from fractions import Fraction
from typing import Iterable, List, Sequence

import numpy as np

from src.exact.matrix import freeze, is_zero, mat_mul, rref, to_matrix, unit_vector, zeros
from src.utils.errors import DimensionMismatchError


class Subspace:
    """Subspace of Q^ambient_dim held by its canonical (RREF) basis."""

    def __init__(self, ambient_dim: int, basis: np.ndarray, pivots: Sequence[int]):
        # Callers outside this module go through span()/zero()/full().
        self._ambient_dim = ambient_dim
        self._basis = freeze(basis)
        self._pivots = tuple(pivots)

    @classmethod
    def span(cls, vectors: Iterable, ambient_dim: int) -> "Subspace":
        """
        Canonical subspace spanned by the given vectors.

        Args:
            vectors: iterable of length-ambient_dim vectors (or a 2-D array of rows)
            ambient_dim: dimension of the ambient space

        Returns:
            Subspace
        """
        if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
            rows = vectors
        else:
            rows = [list(v) for v in vectors]
            rows = to_matrix(rows, cols=ambient_dim)
        if rows.shape[1] != ambient_dim:
            raise DimensionMismatchError(
                f"vectors have length {rows.shape[1]}, ambient dimension is {ambient_dim}"
            )
        reduction = rref(rows)
        return cls(ambient_dim, reduction.reduced, reduction.pivots)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, zeros(0, ambient_dim), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.span([unit_vector(ambient_dim, i) for i in range(ambient_dim)], ambient_dim)

    @property
    def ambient_dim(self) -> int:
        return self._ambient_dim

    @property
    def basis(self) -> np.ndarray:
        return self._basis

    @property
    def pivots(self) -> tuple:
        return self._pivots

    @property
    def dim(self) -> int:
        return self._basis.shape[0]

    def is_zero(self) -> bool:
        return self.dim == 0

    def is_full(self) -> bool:
        return self.dim == self._ambient_dim

    def vectors(self) -> List[np.ndarray]:
        return [self._basis[i] for i in range(self.dim)]

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Residual of v after clearing its pivot entries against the basis."""
        self._check_length(v)
        r = np.array(v, dtype=object)
        for row, p in zip(self._basis, self._pivots):
            if r[p] != 0:
                r = r - r[p] * row
        return r

    def contains(self, v: np.ndarray) -> bool:
        return is_zero(self.reduce(v))

    def coordinates(self, v: np.ndarray) -> np.ndarray:
        """Coordinates of v in the canonical basis (read off at the pivots)."""
        if not self.contains(v):
            raise DimensionMismatchError("vector does not lie in the subspace")
        coords = np.empty(self.dim, dtype=object)
        for i, p in enumerate(self._pivots):
            coords[i] = Fraction(v[p])
        return coords

    def is_subspace_of(self, other: "Subspace") -> bool:
        _check_ambient(self, other)
        return all(other.contains(row) for row in self._basis)

    def pivot_complement(self) -> List[int]:
        """Standard basis indices not used as pivots, lowest first."""
        used = set(self._pivots)
        return [i for i in range(self._ambient_dim) if i not in used]

    def sort_key(self) -> tuple:
        return (self.dim, self._pivots, tuple(tuple(Fraction(x) for x in row) for row in self._basis))

    def _check_length(self, v) -> None:
        if len(v) != self._ambient_dim:
            raise DimensionMismatchError(
                f"vector has length {len(v)}, ambient dimension is {self._ambient_dim}"
            )

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self._ambient_dim == other._ambient_dim
            and self._basis.shape == other._basis.shape
            and bool(np.all(self._basis == other._basis))
        )

    def __hash__(self) -> int:
        return hash((self._ambient_dim, self.sort_key()))

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self._ambient_dim}, dim={self.dim}, pivots={list(self._pivots)})"


def _check_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"ambient dimensions differ: {a.ambient_dim} and {b.ambient_dim}"
        )


def kernel(m: np.ndarray) -> Subspace:
    """
    Null space {x : m·x = 0}.

    Args:
        m: (r x c) exact matrix

    Returns:
        Subspace of Q^c of dimension c - rank(m)
    """
    cols = m.shape[1]
    reduction = rref(m)
    pivot_set = set(reduction.pivots)
    vectors = []
    for f in range(cols):
        if f in pivot_set:
            continue
        x = unit_vector(cols, f)
        for i, p in enumerate(reduction.pivots):
            x[p] = -reduction.reduced[i, f]
        vectors.append(x)
    return Subspace.span(vectors, cols)


def annihilator(s: Subspace) -> Subspace:
    """Vectors orthogonal to s under the standard dot product."""
    return kernel(s.basis)


def span_sum(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a, b)
    return Subspace.span(np.vstack([a.basis, b.basis]), a.ambient_dim)


def span_intersect(a: Subspace, b: Subspace) -> Subspace:
    """a ∩ b as the common kernel of both annihilators."""
    _check_ambient(a, b)
    constraints = np.vstack([annihilator(a).basis, annihilator(b).basis])
    return kernel(constraints)


def image(m: np.ndarray, s: Subspace) -> Subspace:
    """Image of s under the linear map with matrix m (acting on column vectors)."""
    if m.shape[1] != s.ambient_dim:
        raise DimensionMismatchError("matrix does not act on the subspace's ambient space")
    return Subspace.span(mat_mul(s.basis, m.T), m.shape[0])
