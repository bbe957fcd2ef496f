"""
Ideals, centre, centraliser and derived series.

Every subspace here is a canonical Subspace of the algebra's underlying
space. Brackets of subspaces are spans of brackets of basis vectors, which
suffices by multilinearity.
"""

import itertools
import logging
from functools import cached_property
from typing import List, NamedTuple, Optional, Sequence

import numpy as np

from src.core.algebra import MetricNLieAlgebra, NLieAlgebra, StructureTensor
from src.exact.forms import perp
from src.exact.matrix import is_zero, unit_vector
from src.exact.subspace import Subspace, kernel, span_intersect
from src.utils.errors import DimensionMismatchError, InconsistencyError, NotAnIdealError

logger = logging.getLogger(__name__)


def _check_ambient(a: StructureTensor, s: Subspace) -> None:
    if s.ambient_dim != a.dim:
        raise DimensionMismatchError(
            f"subspace lives in dimension {s.ambient_dim}, algebra has dimension {a.dim}"
        )


def _ad_images(a: StructureTensor, s: Subspace) -> List[np.ndarray]:
    """ad_T w for every basis tuple T and every basis vector w of s."""
    out = []
    for _, m in a.ad_matrices():
        for w in s.vectors():
            image = m.dot(w)
            if not is_zero(image):
                out.append(image)
    return out


def bracket_span(a: StructureTensor, spaces: Sequence[Subspace]) -> Subspace:
    """
    span{[w_1 ... w_n] : w_i in W_i}.

    Args:
        a: algebra
        spaces: one subspace per bracket slot
    """
    if len(spaces) != a.arity:
        raise DimensionMismatchError(f"expected {a.arity} subspaces, got {len(spaces)}")
    for s in spaces:
        _check_ambient(a, s)
    if any(s.is_zero() for s in spaces):
        return Subspace.zero(a.dim)
    first = spaces[0]
    if all(s == first for s in spaces):
        if first.is_full():
            values = [v for _, v in a.items()]
        else:
            basis = first.vectors()
            values = [a.bracket(*(basis[i] for i in key))
                      for key in itertools.combinations(range(len(basis)), a.arity)]
    else:
        values = [a.bracket(*vs) for vs in itertools.product(*(s.vectors() for s in spaces))]
    return Subspace.span([v for v in values if not is_zero(v)], a.dim)


def brackets_vanish(a: StructureTensor, spaces: Sequence[Subspace]) -> bool:
    return bracket_span(a, spaces).is_zero()


def full_space(a: StructureTensor) -> Subspace:
    return Subspace.full(a.dim)


def ideal_closure(a: StructureTensor, s: Subspace) -> Subspace:
    """Smallest ideal containing s: iterate W <- W + [W V ... V] to a fixed point."""
    _check_ambient(a, s)
    current = s
    while True:
        images = _ad_images(a, current)
        if not images:
            return current
        grown = Subspace.span(list(current.vectors()) + images, a.dim)
        if grown.dim == current.dim:
            return current
        current = grown


def is_ideal(a: StructureTensor, s: Subspace) -> bool:
    _check_ambient(a, s)
    return all(s.contains(v) for v in _ad_images(a, s))


def is_subalgebra(a: StructureTensor, s: Subspace) -> bool:
    _check_ambient(a, s)
    return bracket_span(a, [s] * a.arity).is_subspace_of(s)


def center(a: StructureTensor) -> Subspace:
    """Kernel of the stacked maps x -> [e_T x] over increasing (n-1)-tuples T."""
    mats = [m for _, m in a.ad_matrices()]
    if not mats:
        return Subspace.full(a.dim)
    return kernel(np.vstack(mats))


def require_ideal(a: StructureTensor, s: Subspace) -> None:
    if not is_ideal(a, s):
        raise NotAnIdealError("subspace is not an ideal")


def centralizer(a: StructureTensor, i: Subspace) -> Subspace:
    """
    Z(I) = {x : [x I V ... V] = 0}.

    Raises:
        NotAnIdealError: if i is not an ideal
    """
    require_ideal(a, i)
    if i.is_zero():
        return Subspace.full(a.dim)
    mats = []
    basis = [unit_vector(a.dim, k) for k in range(a.dim)]
    for w in i.vectors():
        for key in itertools.combinations(range(a.dim), a.arity - 2):
            m = a.ad(w, *(basis[k] for k in key))
            if not is_zero(m):
                mats.append(m)
    if not mats:
        return Subspace.full(a.dim)
    return kernel(np.vstack(mats))


def derived_ideal(a: StructureTensor) -> Subspace:
    """[V ... V]: span of all basis brackets."""
    return Subspace.span([v for _, v in a.items()], a.dim)


def derived_series(a: StructureTensor, i: Optional[Subspace] = None) -> List[Subspace]:
    """
    I = I(0) ⊇ I(1) ⊇ ... with I(k+1) = [I(k) ... I(k)], up to the first repeat.

    Raises:
        NotAnIdealError: if i is not an ideal
        InconsistencyError: if a term fails to be an ideal
    """
    current = full_space(a) if i is None else i
    require_ideal(a, current)
    series = [current]
    while not current.is_zero():
        following = bracket_span(a, [current] * a.arity)
        if following == current:
            break
        if not is_ideal(a, following):
            raise InconsistencyError("a derived ideal of an ideal is not an ideal")
        series.append(following)
        current = following
    return series


def is_solvable(a: StructureTensor, i: Optional[Subspace] = None) -> bool:
    return derived_series(a, i)[-1].is_zero()


def is_perfect(a: StructureTensor) -> bool:
    return derived_ideal(a).is_full()


class QuotientData(NamedTuple):
    """Induced bracket on outer/inner with the chosen coset representatives (rows)."""
    algebra: StructureTensor
    representatives: np.ndarray


def quotient_data(a: StructureTensor, outer: Subspace, inner: Subspace) -> QuotientData:
    """
    Bracket induced on outer/inner, where inner ⊆ outer and [outer ... outer] ⊆ outer.

    Representatives are the basis rows of outer at the pivot complement of
    inner written in outer's coordinates, lowest first.
    """
    inner_coords = Subspace.span([outer.coordinates(v) for v in inner.vectors()], outer.dim)
    chosen = inner_coords.pivot_complement()
    reps = np.array([outer.basis[k] for k in chosen], dtype=object).reshape(len(chosen), a.dim)
    brackets = {}
    for key in itertools.combinations(range(len(chosen)), a.arity):
        value = a.bracket(*(reps[k] for k in key))
        if is_zero(value):
            continue
        residual = inner_coords.reduce(outer.coordinates(value))
        coords = [residual[k] for k in chosen]
        if any(c != 0 for c in coords):
            brackets[key] = coords
    if a.arity >= 2:
        induced = NLieAlgebra(a.arity, len(chosen), brackets)
    else:
        induced = StructureTensor(a.arity, len(chosen), brackets)
    return QuotientData(induced, reps)


def quotient_algebra(a: StructureTensor, ideal: Subspace) -> NLieAlgebra:
    """V/I on pivot-complement representatives."""
    require_ideal(a, ideal)
    return quotient_data(a, full_space(a), ideal).algebra


class IdealHandle:
    """An ideal of a metric algebra with its relative properties computed on demand."""

    def __init__(self, parent: MetricNLieAlgebra, space: Subspace):
        _check_ambient(parent.algebra, space)
        self.parent = parent
        self.space = space

    @property
    def dim(self) -> int:
        return self.space.dim

    @cached_property
    def is_ideal(self) -> bool:
        return is_ideal(self.parent.algebra, self.space)

    @cached_property
    def is_subalgebra(self) -> bool:
        return is_subalgebra(self.parent.algebra, self.space)

    @cached_property
    def perp(self) -> Subspace:
        return perp(self.parent.metric, self.space)

    @cached_property
    def radical(self) -> Subspace:
        """I ∩ I⊥."""
        return span_intersect(self.space, self.perp)

    @cached_property
    def is_nondegenerate(self) -> bool:
        return self.radical.is_zero()

    @cached_property
    def is_isotropic(self) -> bool:
        return self.space.is_subspace_of(self.perp)

    @cached_property
    def is_coisotropic(self) -> bool:
        return self.perp.is_subspace_of(self.space)

    def is_proper(self) -> bool:
        return not self.space.is_zero() and not self.space.is_full()

    def __eq__(self, other) -> bool:
        if not isinstance(other, IdealHandle):
            return NotImplemented
        return self.space == other.space

    def __hash__(self) -> int:
        return hash(self.space)

    def __repr__(self) -> str:
        return f"IdealHandle(dim={self.dim}, pivots={list(self.space.pivots)})"
