"""
Symmetric bilinear forms.

Signature is computed by exact congruence diagonalization (Sylvester
inertia); perp, restriction and orthogonal sums are the form-level
operations the structure theory needs. Isometries are produced by the
Cayley transform of form-skew matrices so that they stay rational.
"""

import logging
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from src.exact.matrix import (
    block_diagonal,
    freeze,
    identity,
    inverse,
    mat_mul,
    to_matrix,
    zeros,
)
from src.exact.subspace import Subspace, kernel, span_intersect
from src.utils.errors import ConstructionError, DegenerateFormError, DimensionMismatchError
from src.utils.random_source import SplitMix64

logger = logging.getLogger(__name__)


class Signature(NamedTuple):
    """Inertia triple: positive, negative and zero counts."""
    p: int
    q: int
    z: int

    def __str__(self) -> str:
        return f"({self.p},{self.q},{self.z})"


class SymmetricForm:
    """Symmetric bilinear form given by its Gram matrix in the standard basis."""

    def __init__(self, gram):
        """
        Args:
            gram: square symmetric matrix (array or nested sequences of rationals)
        """
        g = to_matrix(gram)
        if g.shape[0] != g.shape[1]:
            raise DimensionMismatchError(f"Gram matrix must be square, got {g.shape}")
        if not bool(np.all(g == g.T)):
            raise DimensionMismatchError("Gram matrix is not symmetric")
        self._gram = freeze(g)
        self._signature: Optional[Signature] = None

    @classmethod
    def diagonal(cls, entries) -> "SymmetricForm":
        entries = list(entries)
        g = zeros(len(entries), len(entries))
        for i, x in enumerate(entries):
            g[i, i] = Fraction(x)
        return cls(g)

    @property
    def gram(self) -> np.ndarray:
        return self._gram

    @property
    def dim(self) -> int:
        return self._gram.shape[0]

    def pair(self, x: np.ndarray, y: np.ndarray) -> Fraction:
        if self.dim == 0:
            return Fraction(0)
        return Fraction(mat_mul(mat_mul(x, self._gram), y))

    def signature(self) -> Signature:
        if self._signature is None:
            self._signature = signature(self)
        return self._signature

    def is_nondegenerate(self) -> bool:
        return self.signature().z == 0

    def is_diagonal(self) -> bool:
        g = self._gram
        return all(g[i, j] == 0 for i in range(self.dim) for j in range(self.dim) if i != j)

    def restrict(self, basis: np.ndarray) -> "SymmetricForm":
        """Induced form B·G·Bᵀ on the row space of basis."""
        if basis.shape[0] == 0:
            return SymmetricForm(zeros(0, 0))
        return SymmetricForm(mat_mul(mat_mul(basis, self._gram), basis.T))

    def congruent(self, p: np.ndarray) -> "SymmetricForm":
        """Gram matrix Pᵀ·G·P of the same form in the basis given by the columns of P."""
        return SymmetricForm(mat_mul(mat_mul(p.T, self._gram), p))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SymmetricForm):
            return NotImplemented
        return self._gram.shape == other._gram.shape and bool(np.all(self._gram == other._gram))

    def __hash__(self) -> int:
        return hash(tuple(Fraction(x) for x in self._gram.flat))

    def __repr__(self) -> str:
        return f"SymmetricForm(dim={self.dim}, signature={self.signature()})"


def signature(f: SymmetricForm) -> Signature:
    """
    Sylvester inertia of f.

    Diagonalizes by simultaneous row/column operations, lowest index first. A
    zero diagonal pivot with a nonzero entry further along its row is repaired
    by swapping in a later nonzero diagonal entry if there is one, otherwise by
    adding row and column j to row and column i.

    Args:
        f: symmetric form

    Returns:
        Signature(p, q, z) with p + q + z = dim
    """
    a = np.array(f.gram, dtype=object)
    d = a.shape[0]
    for i in range(d):
        if a[i, i] == 0:
            j = next((k for k in range(i + 1, d) if a[i, k] != 0), None)
            if j is None:
                continue
            swap = next((k for k in range(i + 1, d) if a[k, k] != 0), None)
            if swap is not None:
                a[[i, swap]] = a[[swap, i]]
                a[:, [i, swap]] = a[:, [swap, i]]
            else:
                a[i] = a[i] + a[j]
                a[:, i] = a[:, i] + a[:, j]
        pivot = a[i, i]
        if pivot == 0:
            continue
        for k in range(i + 1, d):
            if a[k, i] != 0:
                factor = a[k, i] / pivot
                a[k] = a[k] - factor * a[i]
                a[:, k] = a[:, k] - factor * a[:, i]
    diag = [a[i, i] for i in range(d)]
    return Signature(
        sum(1 for x in diag if x > 0),
        sum(1 for x in diag if x < 0),
        sum(1 for x in diag if x == 0),
    )


def is_nondegenerate(f: SymmetricForm) -> bool:
    return f.is_nondegenerate()


def perp(f: SymmetricForm, w: Subspace) -> Subspace:
    """
    Orthogonal complement of w under a nondegenerate form.

    Raises:
        DegenerateFormError: if f is degenerate
        DimensionMismatchError: if w lives in another space
    """
    if w.ambient_dim != f.dim:
        raise DimensionMismatchError(
            f"subspace lives in dimension {w.ambient_dim}, form in dimension {f.dim}"
        )
    if not f.is_nondegenerate():
        raise DegenerateFormError("perp requires a nondegenerate form")
    if w.is_zero():
        return Subspace.full(f.dim)
    return kernel(mat_mul(w.basis, f.gram))


def orthogonal_sum(a: SymmetricForm, b: SymmetricForm) -> SymmetricForm:
    return SymmetricForm(block_diagonal(a.gram, b.gram))


def pairing(f: SymmetricForm, left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """Matrix of ⟨left_i, right_j⟩ for two stacks of row vectors."""
    return mat_mul(mat_mul(left, f.gram), right.T)


def classify_subspace(f: SymmetricForm, w: Subspace) -> str:
    """
    Position of w relative to its perp.

    Returns:
        "nondegenerate" (w ∩ w⊥ = 0), "isotropic" (w ⊆ w⊥), "coisotropic"
        (w⊥ ⊆ w) or "degenerate" otherwise. The zero subspace is reported as
        nondegenerate; the whole space is nondegenerate as well.
    """
    w_perp = perp(f, w)
    if span_intersect(w, w_perp).is_zero():
        return "nondegenerate"
    if w.is_subspace_of(w_perp):
        return "isotropic"
    if w_perp.is_subspace_of(w):
        return "coisotropic"
    return "degenerate"


def cayley_isometry(f: SymmetricForm, skew: np.ndarray) -> np.ndarray:
    """
    Isometry P = (I − K)⁻¹(I + K) with K = G⁻¹·S.

    Args:
        f: nondegenerate form with Gram matrix G
        skew: skew-symmetric matrix S

    Returns:
        P with Pᵀ·G·P = G

    Raises:
        DimensionMismatchError: if I − K is singular or S is not skew
    """
    s = to_matrix(skew)
    if not bool(np.all(s == -s.T)):
        raise DimensionMismatchError("Cayley transform needs a skew-symmetric matrix")
    k = mat_mul(inverse(f.gram), s)
    ident = identity(f.dim)
    return mat_mul(inverse(ident - k), ident + k)


def random_isometry(f: SymmetricForm, rng: SplitMix64, attempts: int = 32) -> np.ndarray:
    """
    Seeded rational isometry of f drawn through the Cayley transform.

    Raises:
        ConstructionError: if every drawn skew matrix makes the transform singular
    """
    d = f.dim
    for _ in range(attempts):
        s = zeros(d, d)
        for i in range(d):
            for j in range(i + 1, d):
                x = rng.rational()
                s[i, j] = x
                s[j, i] = -x
        try:
            return cayley_isometry(f, s)
        except DimensionMismatchError:
            logger.debug("Cayley transform singular for drawn skew matrix, redrawing")
    logger.warning("no Cayley isometry in %d attempt(s) for a form of dimension %d", attempts, d)
    raise ConstructionError(f"could not draw a random isometry in {attempts} attempt(s)")
