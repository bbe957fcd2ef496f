"""
Lie n-algebra data model.

StructureTensor holds the structure constants of an alternating k-ary
bracket on Q^d, keyed by strictly increasing basis tuples. NLieAlgebra is a
StructureTensor of arity n >= 2; MetricNLieAlgebra pairs one with a
nondegenerate symmetric form and records whether both defining identities
have been verified.
"""

import itertools
from fractions import Fraction
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from src.exact.forms import SymmetricForm
from src.exact.matrix import (
    determinant,
    freeze,
    inverse,
    is_zero,
    mat_mul,
    solve,
    to_vector,
    unit_vector,
    zero_vector,
    zeros,
)
from src.utils.errors import ArityMismatchError, DegenerateFormError, DimensionMismatchError

IndexTuple = Tuple[int, ...]


def permutation_sign(indices: Sequence[int]) -> Tuple[int, IndexTuple]:
    """
    Sort a tuple of indices and report the sign of the sorting permutation.

    Returns:
        (sign, sorted tuple); sign is 0 when an index repeats
    """
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, tuple(sorted(items))
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


class StructureTensor:
    """
    Alternating k-linear map (Q^d)^k -> Q^d given on increasing basis tuples.

    Arity 1 is admitted: it is the lower bracket of a one-dimensional double
    extension of a Lie 2-algebra.

    The bracket table is fixed at construction. The only mutable state is
    _ad_cache, an internal memo of read-only ad matrices filled lazily by
    ad_matrix; equality and hashing never look at it.
    """

    def __init__(self, arity: int, dim: int, brackets: Optional[Mapping[IndexTuple, Iterable]] = None):
        """
        Args:
            arity: number of bracket slots (>= 1)
            dim: dimension of the underlying space (>= 0)
            brackets: map from index tuples to coefficient vectors; tuples may come
                in any order of distinct indices and are normalised by sign
        """
        if arity < 1:
            raise ArityMismatchError(f"bracket arity must be at least 1, got {arity}")
        if dim < 0:
            raise DimensionMismatchError(f"dimension must be non-negative, got {dim}")
        self._arity = arity
        self._dim = dim
        self._tensor: Dict[IndexTuple, np.ndarray] = {}
        self._ad_cache: Dict[IndexTuple, np.ndarray] = {}  # memo for ad_matrix, values frozen
        for key, value in (brackets or {}).items():
            key = tuple(int(i) for i in key)
            if len(key) != arity:
                raise ArityMismatchError(f"tuple {key} does not have {arity} entries")
            if any(i < 0 or i >= dim for i in key):
                raise DimensionMismatchError(f"tuple {key} has an index outside 0..{dim - 1}")
            sign, canonical = permutation_sign(key)
            if sign == 0:
                raise DimensionMismatchError(f"tuple {key} repeats an index")
            vector = value if isinstance(value, np.ndarray) else to_vector(value)
            if len(vector) != dim:
                raise DimensionMismatchError(f"bracket value for {key} has length {len(vector)}")
            vector = np.array([Fraction(x) * sign for x in vector], dtype=object)
            if canonical in self._tensor:
                if not bool(np.all(self._tensor[canonical] == vector)):
                    raise DimensionMismatchError(f"conflicting values given for tuple {canonical}")
                continue
            if not is_zero(vector):
                self._tensor[canonical] = freeze(vector)
        self._tensor = dict(sorted(self._tensor.items()))

    @property
    def arity(self) -> int:
        return self._arity

    @property
    def dim(self) -> int:
        return self._dim

    def items(self) -> Iterator[Tuple[IndexTuple, np.ndarray]]:
        """Nonzero stored brackets in lexicographic tuple order."""
        return iter(self._tensor.items())

    def support(self) -> List[IndexTuple]:
        return list(self._tensor.keys())

    def is_zero(self) -> bool:
        return not self._tensor

    def tuples(self) -> Iterator[IndexTuple]:
        """All strictly increasing basis tuples of the bracket's arity."""
        return itertools.combinations(range(self._dim), self._arity)

    def ad_tuples(self) -> Iterator[IndexTuple]:
        """All strictly increasing tuples of length arity - 1."""
        return itertools.combinations(range(self._dim), self._arity - 1)

    def basis_bracket(self, indices: Sequence[int]) -> np.ndarray:
        """Bracket of basis vectors in any order; zero on repeated indices."""
        sign, canonical = permutation_sign(indices)
        if sign == 0:
            return zero_vector(self._dim)
        value = self._tensor.get(canonical)
        if value is None:
            return zero_vector(self._dim)
        return value * sign if sign < 0 else np.array(value, dtype=object)

    def bracket(self, *vectors: np.ndarray) -> np.ndarray:
        """
        Multilinear alternating evaluation on arbitrary vectors.

        Computed as the sum over stored tuples S of det(X[:, S])·f_S where the
        rows of X are the arguments.
        """
        if len(vectors) != self._arity:
            raise ArityMismatchError(f"expected {self._arity} arguments, got {len(vectors)}")
        for v in vectors:
            if len(v) != self._dim:
                raise DimensionMismatchError(
                    f"argument has length {len(v)}, algebra dimension is {self._dim}"
                )
        x = np.array([list(v) for v in vectors], dtype=object).reshape(self._arity, self._dim)
        result = zero_vector(self._dim)
        for key, value in self._tensor.items():
            minor = x[:, list(key)]
            det = determinant(minor)
            if det != 0:
                result = result + det * value
        return result

    def ad_matrix(self, indices: Sequence[int]) -> np.ndarray:
        """Matrix of y -> [e_i1 ... e_i(k-1) y] for an increasing (k-1)-tuple; cached."""
        key = tuple(indices)
        cached = self._ad_cache.get(key)
        if cached is not None:
            return cached
        m = zeros(self._dim, self._dim)
        if len(set(key)) == len(key):
            for j in range(self._dim):
                if j in key:
                    continue
                m[:, j] = self.basis_bracket(key + (j,))
        self._ad_cache[key] = freeze(m)
        return self._ad_cache[key]

    def ad(self, *vectors: np.ndarray) -> np.ndarray:
        """Matrix of y -> [x_1 ... x_(k-1) y] for arbitrary vectors."""
        if len(vectors) != self._arity - 1:
            raise ArityMismatchError(f"expected {self._arity - 1} arguments, got {len(vectors)}")
        if self._arity == 1:
            return np.array(self.ad_matrix(()), dtype=object)
        x = np.array([list(v) for v in vectors], dtype=object).reshape(self._arity - 1, self._dim)
        result = zeros(self._dim, self._dim)
        for key in self.ad_tuples():
            det = determinant(x[:, list(key)])
            if det != 0:
                result = result + det * self.ad_matrix(key)
        return result

    def ad_matrices(self) -> List[Tuple[IndexTuple, np.ndarray]]:
        """(tuple, matrix) for every increasing (k-1)-tuple with a nonzero ad matrix."""
        out = []
        for key in self.ad_tuples():
            m = self.ad_matrix(key)
            if not is_zero(m):
                out.append((key, m))
        return out

    def transform(self, p: np.ndarray) -> "StructureTensor":
        """
        Same bracket written in the basis given by the columns of P.

        f'_T = P⁻¹ [P e_t1 ... P e_tk] for every increasing tuple T.
        """
        p_inv = inverse(p)
        columns = [np.array(p[:, j], dtype=object) for j in range(self._dim)]
        brackets = {}
        for key in self.tuples():
            value = self.bracket(*[columns[i] for i in key])
            if not is_zero(value):
                brackets[key] = mat_mul(p_inv, value)
        return self._rebuild(brackets)

    def restrict(self, basis: np.ndarray) -> "StructureTensor":
        """
        Bracket on the row span of basis, in coordinates of those rows.

        Raises:
            DimensionMismatchError: if a bracket of basis rows leaves their span
        """
        k = basis.shape[0]
        brackets = {}
        for key in itertools.combinations(range(k), self._arity):
            value = self.bracket(*[basis[i] for i in key])
            if is_zero(value):
                continue
            coords = solve(basis.T, value)
            if coords is None:
                raise DimensionMismatchError("subspace is not closed under the bracket")
            brackets[key] = coords
        return self._rebuild(brackets, dim=k)

    def _rebuild(self, brackets, dim: Optional[int] = None) -> "StructureTensor":
        return StructureTensor(self._arity, self._dim if dim is None else dim, brackets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, StructureTensor):
            return NotImplemented
        if (self._arity, self._dim) != (other._arity, other._dim):
            return False
        if self.support() != other.support():
            return False
        return all(bool(np.all(v == other._tensor[k])) for k, v in self._tensor.items())

    def __hash__(self) -> int:
        return hash((self._arity, self._dim, tuple(self.support())))

    def __repr__(self) -> str:
        return (
            f"{type(self).__name__}(arity={self._arity}, dim={self._dim}, "
            f"nonzero_tuples={len(self._tensor)})"
        )


class NLieAlgebra(StructureTensor):
    """Vector space with an alternating n-bracket, n >= 2 (n-Jacobi checked separately)."""

    def __init__(self, n: int, dim: int, brackets: Optional[Mapping[IndexTuple, Iterable]] = None):
        if n < 2:
            raise ArityMismatchError(f"a Lie n-algebra needs n >= 2, got {n}")
        super().__init__(n, dim, brackets)

    @property
    def n(self) -> int:
        return self.arity

    @classmethod
    def from_tensor(cls, tensor: StructureTensor) -> "NLieAlgebra":
        return cls(tensor.arity, tensor.dim, dict(tensor.items()))

    def _rebuild(self, brackets, dim: Optional[int] = None) -> "NLieAlgebra":
        return NLieAlgebra(self.n, self.dim if dim is None else dim, brackets)


class LieAlgebraPresentation(NLieAlgebra):
    """Ordinary Lie algebra by structure constants c_ij^k (the n = 2 case)."""

    def __init__(self, dim: int, brackets: Optional[Mapping[IndexTuple, Iterable]] = None):
        super().__init__(2, dim, brackets)

    def _rebuild(self, brackets, dim: Optional[int] = None) -> "LieAlgebraPresentation":
        return LieAlgebraPresentation(self.dim if dim is None else dim, brackets)


class Endomorphism:
    """Linear map of Q^d given by its matrix on column vectors."""

    def __init__(self, matrix: np.ndarray):
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"endomorphism matrix must be square, got {matrix.shape}")
        self._matrix = freeze(np.array(matrix, dtype=object))

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def apply(self, v: np.ndarray) -> np.ndarray:
        return mat_mul(self._matrix, v)

    def compose(self, other: "Endomorphism") -> "Endomorphism":
        return Endomorphism(mat_mul(self._matrix, other._matrix))

    def commutator(self, other: "Endomorphism") -> "Endomorphism":
        return Endomorphism(
            mat_mul(self._matrix, other._matrix) - mat_mul(other._matrix, self._matrix)
        )

    def trace(self) -> Fraction:
        return sum((self._matrix[i, i] for i in range(self.dim)), Fraction(0))

    def is_zero(self) -> bool:
        return is_zero(self._matrix)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Endomorphism):
            return NotImplemented
        return self._matrix.shape == other._matrix.shape and bool(np.all(self._matrix == other._matrix))

    def __hash__(self) -> int:
        return hash(tuple(Fraction(x) for x in self._matrix.flat))

    def __repr__(self) -> str:
        return f"Endomorphism(dim={self.dim})"


class MetricNLieAlgebra:
    """
    Lie n-algebra with a nondegenerate symmetric form.

    The validated flag is set only by src.core.validation.validate_metric after
    the n-Jacobi and invariance checks both pass, or carried over by a change
    of basis.
    """

    def __init__(self, algebra: NLieAlgebra, metric: SymmetricForm, validated: bool = False):
        if metric.dim != algebra.dim:
            raise DimensionMismatchError(
                f"metric has dimension {metric.dim}, algebra has dimension {algebra.dim}"
            )
        if not metric.is_nondegenerate():
            raise DegenerateFormError("the metric of a metric Lie n-algebra must be nondegenerate")
        self._algebra = algebra
        self._metric = metric
        self._validated = validated

    @property
    def algebra(self) -> NLieAlgebra:
        return self._algebra

    @property
    def metric(self) -> SymmetricForm:
        return self._metric

    @property
    def n(self) -> int:
        return self._algebra.n

    @property
    def dim(self) -> int:
        return self._algebra.dim

    @property
    def validated(self) -> bool:
        return self._validated

    def signature(self):
        return self._metric.signature()

    def transform(self, p: np.ndarray) -> "MetricNLieAlgebra":
        """Change of basis to the columns of P; tensor and Gram matrix move together."""
        return MetricNLieAlgebra(
            self._algebra.transform(p), self._metric.congruent(p), validated=self._validated
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, MetricNLieAlgebra):
            return NotImplemented
        return self._algebra == other._algebra and self._metric == other._metric

    def __hash__(self) -> int:
        return hash((self._algebra, self._metric))

    def __repr__(self) -> str:
        return (
            f"MetricNLieAlgebra(n={self.n}, dim={self.dim}, "
            f"signature={self.signature()}, validated={self._validated})"
        )


def is_homomorphism(a: NLieAlgebra, b: NLieAlgebra, phi: np.ndarray) -> bool:
    """True iff phi [x_1 ... x_n] = [phi x_1 ... phi x_n] on all increasing basis tuples of a."""
    if a.n != b.n:
        raise ArityMismatchError(f"arities differ: {a.n} and {b.n}")
    if phi.shape != (b.dim, a.dim):
        raise DimensionMismatchError(f"map has shape {phi.shape}, expected {(b.dim, a.dim)}")
    images = [np.array(phi[:, j], dtype=object) for j in range(a.dim)]
    for key in a.tuples():
        left = mat_mul(phi, a.basis_bracket(key))
        right = b.bracket(*[images[i] for i in key])
        if not bool(np.all(left == right)):
            return False
    return True


def basis_vectors(dim: int) -> List[np.ndarray]:
    return [unit_vector(dim, i) for i in range(dim)]
