"""
Derivations and inner derivations.

ad V is the span of the matrices y -> [x_1 ... x_(n-1) y]; it is a Lie
algebra under the commutator, and its Killing form decides semisimplicity:
an algebra with zero centre is semisimple exactly when ad V is.
"""

import logging
from typing import Dict, List, NamedTuple, Tuple

import numpy as np

from src.core.algebra import Endomorphism, LieAlgebraPresentation, NLieAlgebra, StructureTensor
from src.core.validation import derivation_residual
from src.exact.forms import SymmetricForm
from src.exact.matrix import is_zero, mat_mul, zero_vector, zeros
from src.exact.subspace import Subspace, kernel
from src.utils.errors import DimensionMismatchError, NotValidatedError

logger = logging.getLogger(__name__)


class InnerDerivationAlgebra(NamedTuple):
    """Basis of ad V, its Lie structure in that basis and the commutator expansions."""
    basis: List[Endomorphism]
    lie: LieAlgebraPresentation
    expansion: Dict[Tuple[int, int], np.ndarray]

    @property
    def dim(self) -> int:
        return len(self.basis)


def inner_derivation(a: StructureTensor, *vectors: np.ndarray) -> Endomorphism:
    return Endomorphism(a.ad(*vectors))


def is_derivation(a: StructureTensor, d: Endomorphism) -> bool:
    """D[x_1 ... x_n] = Σ_i [x_1 ... D x_i ... x_n] on every increasing basis tuple."""
    if d.dim != a.dim:
        raise DimensionMismatchError(f"endomorphism has dimension {d.dim}, algebra {a.dim}")
    return all(is_zero(derivation_residual(a, d.matrix, y)) for y in a.tuples())


def _flatten(m: np.ndarray) -> np.ndarray:
    return np.array(m, dtype=object).reshape(-1)


def _unflatten(v: np.ndarray, dim: int) -> np.ndarray:
    return np.array(v, dtype=object).reshape(dim, dim)


def inner_derivation_span(a: StructureTensor) -> Subspace:
    """span{ad_T} inside gl(d), vectorised row-major."""
    d = a.dim
    rows = [_flatten(m) for _, m in a.ad_matrices()]
    return Subspace.span(rows, d * d)


def inner_derivation_algebra(a: StructureTensor) -> InnerDerivationAlgebra:
    """
    Basis of ad V with its Lie algebra structure constants.

    Raises:
        NotValidatedError: if the span is not closed under commutators, which
            happens only when the n-Jacobi identity fails
    """
    d = a.dim
    span = inner_derivation_span(a)
    basis = [Endomorphism(_unflatten(row, d)) for row in span.vectors()]
    brackets = {}
    expansion = {}
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            c = basis[i].commutator(basis[j])
            flat = _flatten(c.matrix)
            if not span.contains(flat):
                raise NotValidatedError("inner derivations are not closed under the commutator")
            coords = span.coordinates(flat)
            expansion[(i, j)] = coords
            if not is_zero(coords):
                brackets[(i, j)] = coords
    lie = LieAlgebraPresentation(len(basis), brackets)
    logger.debug("ad V has dimension %d", len(basis))
    return InnerDerivationAlgebra(basis, lie, expansion)


def derivation_space(a: StructureTensor) -> Subspace:
    """
    Der V as a subspace of gl(d), vectorised row-major (entry D[r, c] at r*d + c).

    One linear equation per increasing tuple y and output component r:
    Σ_c D[r,c] f_y[c] - Σ_s Σ_k D[k, y_s] [y with y_s -> k][r] = 0.
    """
    d = a.dim
    rows = []
    for y in a.tuples():
        value = a.basis_bracket(y)
        replaced = {}
        for s, ys in enumerate(y):
            for k in range(d):
                replaced[(s, k)] = a.basis_bracket(y[:s] + (k,) + y[s + 1:])
        for r in range(d):
            row = zero_vector(d * d)
            for c in range(d):
                if value[c] != 0:
                    row[r * d + c] += value[c]
            for s, ys in enumerate(y):
                for k in range(d):
                    coeff = replaced[(s, k)][r]
                    if coeff != 0:
                        row[k * d + ys] -= coeff
            if not is_zero(row):
                rows.append(row)
    if not rows:
        return Subspace.full(d * d)
    return kernel(np.array(rows, dtype=object))


def killing_form(g: LieAlgebraPresentation) -> SymmetricForm:
    """K(x_i, x_j) = trace(ad_i ad_j)."""
    k = g.dim
    ads = [g.ad_matrix((i,)) for i in range(k)]
    gram = zeros(k, k)
    for i in range(k):
        for j in range(i, k):
            gram[i, j] = gram[j, i] = np.trace(mat_mul(ads[i], ads[j]))
    return SymmetricForm(gram)


def killing_nondegenerate(g: LieAlgebraPresentation) -> bool:
    """Cartan's criterion; the zero Lie algebra counts as semisimple."""
    if g.dim == 0:
        return True
    return killing_form(g).is_nondegenerate()


def _center_is_zero(a: StructureTensor) -> bool:
    mats = [m for _, m in a.ad_matrices()]
    if not mats:
        return a.dim == 0
    return kernel(np.vstack(mats)).is_zero()


def is_reductive(a: NLieAlgebra) -> bool:
    """ad V semisimple, i.e. the radical coincides with the centre."""
    return killing_nondegenerate(inner_derivation_algebra(a).lie)


def is_semisimple(a: NLieAlgebra) -> bool:
    """Zero centre and ad V semisimple."""
    return _center_is_zero(a) and is_reductive(a)


def has_only_inner_derivations(a: NLieAlgebra) -> bool:
    """Der V = ad V."""
    return derivation_space(a) == inner_derivation_span(a)
