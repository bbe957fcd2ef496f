"""
Orthogonal decomposition and classification of indecomposables.

A nondegenerate proper ideal J splits V = J ⊕ J⊥ into two metric ideals;
decompose applies this recursively. An indecomposable factor is then one
of three kinds: one-dimensional, simple, or carrying an isotropic minimal
ideal of dimension 1 or n + 1.
"""

import logging
from math import comb
from typing import List, NamedTuple, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.core.algebra import MetricNLieAlgebra, NLieAlgebra
from src.core.derivations import inner_derivation_algebra, killing_nondegenerate
from src.core.validation import require_validated, validate_metric
from src.exact.forms import Signature, perp
from src.exact.matrix import mat_mul, vector_key
from src.exact.subspace import Subspace
from src.structure.ideals import (
    IdealHandle,
    center,
    derived_ideal,
    full_space,
    is_ideal,
    quotient_algebra,
    quotient_data,
    require_ideal,
)
from src.structure.search import (
    CandidatePool,
    MinimalKind,
    add_commutant_candidates,
    add_probe_candidates,
    classify_minimal,
    minimal_ideal_search,
    structural_candidates,
)
from src.utils.errors import (
    InconsistencyError,
    NotCoisotropicError,
    NotIndecomposableError,
)

logger = logging.getLogger(__name__)


class SimplicityFingerprint(BaseModel):
    """Invariants that certify a simple Lie n-algebra of dimension n + 1."""

    model_config = ConfigDict(frozen=True)

    n: int
    dim: int
    perfect: bool
    center_dim: int
    ad_dim: int
    killing_nondegenerate: bool

    @property
    def is_simple(self) -> bool:
        return (
            self.dim == self.n + 1
            and self.perfect
            and self.center_dim == 0
            and self.ad_dim == comb(self.n + 1, 2)
            and self.killing_nondegenerate
        )


def simplicity_fingerprint(a: NLieAlgebra) -> SimplicityFingerprint:
    ad = inner_derivation_algebra(a)
    return SimplicityFingerprint(
        n=a.n,
        dim=a.dim,
        perfect=derived_ideal(a).is_full(),
        center_dim=center(a).dim,
        ad_dim=ad.dim,
        killing_nondegenerate=killing_nondegenerate(ad.lie),
    )


class Subquotient(NamedTuple):
    algebra: MetricNLieAlgebra
    representatives: np.ndarray


def subquotient(m: MetricNLieAlgebra, j: Subspace) -> Subquotient:
    """
    J/J⊥ with the induced bracket and metric, for a coisotropic ideal J.

    Raises:
        NotAnIdealError: if j is not an ideal
        NotCoisotropicError: if J⊥ is not contained in J
    """
    require_ideal(m.algebra, j)
    j_perp = perp(m.metric, j)
    if not j_perp.is_subspace_of(j):
        raise NotCoisotropicError("subquotient needs an ideal containing its perp")
    data = quotient_data(m.algebra, j, j_perp)
    metric = m.metric.restrict(data.representatives)
    return Subquotient(validate_metric(data.algebra, metric), data.representatives)


def subquotient_metric(m: MetricNLieAlgebra, j: Subspace) -> MetricNLieAlgebra:
    return subquotient(m, j).algebra


def is_maximal_ideal(a: NLieAlgebra, i: Subspace) -> bool:
    """Proper ideal whose quotient is one-dimensional or simple."""
    if not is_ideal(a, i) or i.is_full():
        return False
    q = quotient_algebra(a, i)
    return q.dim == 1 or simplicity_fingerprint(q).is_simple


class DecompositionResult(NamedTuple):
    """
    Factors in their induced bases, with embeddings (rows = factor basis in
    original coordinates) and the nondegenerate ideal used at each split.
    """
    factors: List[MetricNLieAlgebra]
    embeddings: List[np.ndarray]
    certificates: List[Subspace]

    def dims(self) -> List[int]:
        return [f.dim for f in self.factors]

    def signatures(self) -> List[Signature]:
        return [f.signature() for f in self.factors]


def _restrict_metric_algebra(m: MetricNLieAlgebra, s: Subspace) -> MetricNLieAlgebra:
    return validate_metric(m.algebra.restrict(s.basis), m.metric.restrict(s.basis))


def _central_nonnull_line(m: MetricNLieAlgebra) -> Optional[Subspace]:
    z = center(m.algebra)
    vectors = z.vectors()
    for v in vectors:
        if m.metric.pair(v, v) != 0:
            return Subspace.span([v], m.dim)
    for i, v in enumerate(vectors):
        for w in vectors[i + 1:]:
            if m.metric.pair(v, w) != 0:
                return Subspace.span([v + w], m.dim)
    return None


def _first_nondegenerate(m: MetricNLieAlgebra, pool: CandidatePool) -> Optional[Subspace]:
    for s in pool.sorted():
        if IdealHandle(m, s).is_nondegenerate:
            return s
    return None


def find_nondegenerate_ideal(m: MetricNLieAlgebra, seed: int) -> Optional[Subspace]:
    """
    A proper nondegenerate ideal, or None when the probes find none.

    Structural candidates are tried first, then commutant primary
    components, and seeded random closures only when both come up empty.
    """
    if m.dim <= 1:
        return None
    line = _central_nonnull_line(m)
    if line is not None and not line.is_full():
        return line
    pool = structural_candidates(m)
    found = _first_nondegenerate(m, pool)
    if found is None and add_commutant_candidates(pool, m, seed):
        found = _first_nondegenerate(m, pool)
    if found is None:
        add_probe_candidates(pool, m, seed)
        found = _first_nondegenerate(m, pool)
    return found


def _split(m: MetricNLieAlgebra, seed: int, depth: int, certificates: List[np.ndarray]) -> List[Tuple[MetricNLieAlgebra, np.ndarray]]:
    """(factor, embedding into m's coordinates) pairs; split ideals are appended to certificates."""
    j = find_nondegenerate_ideal(m, seed)
    if j is None:
        logger.debug("%sindecomposable factor of dimension %d", "  " * depth, m.dim)
        return [(m, np.array(full_space(m.algebra).basis, dtype=object))]
    k = perp(m.metric, j)
    logger.debug("%ssplitting dimension %d into %d + %d", "  " * depth, m.dim, j.dim, k.dim)
    certificates.append(j.basis)
    out = []
    for part in (j, k):
        sub = _restrict_metric_algebra(m, part)
        nested: List[np.ndarray] = []
        for factor, embedding in _split(sub, seed, depth + 1, nested):
            out.append((factor, mat_mul(embedding, part.basis)))
        certificates.extend(mat_mul(c, part.basis) for c in nested)
    return out


def _factor_key(item) -> tuple:
    factor, embedding = item
    return (-factor.dim, tuple(factor.signature()), vector_key(embedding))


def decompose(m: MetricNLieAlgebra, seed: int = 0) -> DecompositionResult:
    """
    Split m into an orthogonal sum of factors with no nondegenerate proper ideal found.

    Factors are ordered by dimension (descending), then signature, then
    embedding; each factor is validated.
    """
    require_validated(m)
    found: List[np.ndarray] = []
    parts = sorted(_split(m, seed, 0, found), key=_factor_key)
    certificates = sorted((Subspace.span(c, m.dim) for c in found), key=lambda s: s.sort_key())
    return DecompositionResult(
        factors=[f for f, _ in parts],
        embeddings=[e for _, e in parts],
        certificates=certificates,
    )


class IndecomposableKind(NamedTuple):
    """
    tag is "one-dimensional", "simple" or "double-extension". For a double
    extension, ideal is the isotropic minimal ideal I, ideal_perp is I⊥,
    quotient is V/I⊥ and transverse is the metric algebra I⊥/I.
    """
    tag: str
    ideal: Optional[Subspace] = None
    ideal_perp: Optional[Subspace] = None
    quotient: Optional[NLieAlgebra] = None
    transverse: Optional[MetricNLieAlgebra] = None
    fingerprint: Optional[SimplicityFingerprint] = None

    @property
    def ideal_dim(self) -> Optional[int]:
        return None if self.ideal is None else self.ideal.dim


ONE_DIMENSIONAL = "one-dimensional"
SIMPLE = "simple"
DOUBLE_EXTENSION = "double-extension"


def classify_indecomposable(m: MetricNLieAlgebra, seed: int = 0) -> IndecomposableKind:
    """
    Raises:
        NotIndecomposableError: if a nondegenerate minimal ideal turns up
        InconsistencyError: if no ideal is found but the simplicity
            fingerprint fails, or the isotropic ideal has the wrong dimension
    """
    require_validated(m)
    if m.dim == 1:
        return IndecomposableKind(ONE_DIMENSIONAL)
    handle = minimal_ideal_search(m, seed)
    if handle is None:
        fp = simplicity_fingerprint(m.algebra)
        if not fp.is_simple:
            raise InconsistencyError(
                f"no proper ideal found in dimension {m.dim} but the algebra is not simple"
            )
        return IndecomposableKind(SIMPLE, fingerprint=fp)
    kind = classify_minimal(m, handle)
    if kind is MinimalKind.NONDEGENERATE:
        raise NotIndecomposableError(
            f"found a nondegenerate ideal of dimension {handle.dim}; decompose first"
        )
    if handle.dim not in (1, m.n + 1):
        raise InconsistencyError(
            f"isotropic minimal ideal has dimension {handle.dim}, expected 1 or {m.n + 1}"
        )
    quotient = quotient_algebra(m.algebra, handle.perp)
    return IndecomposableKind(
        DOUBLE_EXTENSION,
        ideal=handle.space,
        ideal_perp=handle.perp,
        quotient=quotient,
        transverse=subquotient_metric(m, handle.perp),
        fingerprint=simplicity_fingerprint(quotient) if quotient.dim > 1 else None,
    )
