"""
Minimal ideal search.

Candidates come from cheap sources first: closures of basis vectors, the
centre, the derived ideal, seeded random probes, perps and pairwise
intersections. When none of those is a proper ideal the search falls back
to the commutant probe: kernels and images of polynomials in an
endomorphism commuting with ad V are ideals.

The stages are exposed separately (structural_candidates,
add_commutant_candidates, add_probe_candidates) so that callers looking
for a particular kind of ideal can stop as soon as one turns up.
"""

import itertools
import logging
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional

import numpy as np
import sympy

from src.core.algebra import MetricNLieAlgebra, StructureTensor
from src.core.validation import require_validated
from src.exact.forms import perp
from src.exact.matrix import identity, is_zero, mat_mul, zero_vector, zeros
from src.exact.subspace import Subspace, image, kernel, span_intersect
from src.structure.ideals import IdealHandle, center, derived_ideal, ideal_closure, is_ideal
from src.utils.config import get_settings
from src.utils.errors import InconsistencyError
from src.utils.random_source import SplitMix64

logger = logging.getLogger(__name__)

_COMMUTANT_DRAWS = 4


class MinimalKind(str, Enum):
    NONDEGENERATE = "nondegenerate"
    ISOTROPIC = "isotropic"


def _is_proper(s: Subspace) -> bool:
    return not s.is_zero() and not s.is_full()


class CandidatePool:
    """Proper ideals collected in discovery order, without duplicates."""

    def __init__(self, dim: int):
        self.dim = dim
        self._seen: Dict[Subspace, None] = {}

    def add(self, s: Subspace) -> bool:
        if not _is_proper(s) or s in self._seen:
            return False
        self._seen[s] = None
        return True

    def __len__(self) -> int:
        return len(self._seen)

    def items(self) -> List[Subspace]:
        return list(self._seen)

    def sorted(self) -> List[Subspace]:
        return sorted(self._seen, key=lambda s: s.sort_key())


def _random_probe(rng: SplitMix64, dim: int) -> np.ndarray:
    while True:
        v = rng.vector(dim)
        if not is_zero(v):
            return v


def _close_under_intersections(pool: CandidatePool, rounds: int = 2) -> None:
    for _ in range(rounds):
        added = False
        for a, b in itertools.combinations(pool.items(), 2):
            added |= pool.add(span_intersect(a, b))
        if not added:
            return


def _seed_pool(m: MetricNLieAlgebra) -> CandidatePool:
    a = m.algebra
    d = a.dim
    pool = CandidatePool(d)
    for s in Subspace.full(d).vectors():
        pool.add(ideal_closure(a, Subspace.span([s], d)))
    z = center(a)
    der = derived_ideal(a)
    pool.add(z)
    pool.add(der)
    pool.add(span_intersect(z, der))
    return pool


def _add_random_closures(pool: CandidatePool, m: MetricNLieAlgebra, seed: int, budget: Optional[int]) -> None:
    a = m.algebra
    rng = SplitMix64(seed)
    for _ in range(budget or get_settings().probe_budget):
        pool.add(ideal_closure(a, Subspace.span([_random_probe(rng, a.dim)], a.dim)))


def _saturate(pool: CandidatePool, m: MetricNLieAlgebra) -> None:
    for s in pool.items():
        pool.add(perp(m.metric, s))
    _close_under_intersections(pool)


def structural_candidates(m: MetricNLieAlgebra) -> CandidatePool:
    """Closures of basis vectors, centre and derived ideal, with perps and intersections."""
    pool = _seed_pool(m)
    _saturate(pool, m)
    logger.debug("structural candidates: %d proper ideal(s)", len(pool))
    return pool


def add_probe_candidates(pool: CandidatePool, m: MetricNLieAlgebra, seed: int, budget: Optional[int] = None) -> None:
    """Extend pool by closures of seeded random vectors, then perps and intersections."""
    _add_random_closures(pool, m, seed, budget)
    _saturate(pool, m)


def cheap_candidates(m: MetricNLieAlgebra, seed: int, budget: Optional[int] = None) -> CandidatePool:
    """Closures of basis and random vectors, centre, derived ideal, perps and intersections."""
    pool = _seed_pool(m)
    _add_random_closures(pool, m, seed, budget)
    _saturate(pool, m)
    logger.debug("cheap search found %d proper ideal(s)", len(pool))
    return pool


def _random_ad_element(a: StructureTensor, rng: SplitMix64) -> np.ndarray:
    out = zeros(a.dim, a.dim)
    for _, mat in a.ad_matrices():
        c = rng.rational()
        if c:
            out = out + c * mat
    return out


def _commutant_constraints(x: np.ndarray, d: int) -> np.ndarray:
    """Rows of the linear map C -> CX - XC on row-major vectorised C."""
    rows = np.full((d * d, d * d), Fraction(0), dtype=object)
    for r in range(d):
        for c in range(d):
            row = r * d + c
            # (CX)[r,c] = Σ_k C[r,k] X[k,c]
            for k in range(d):
                if x[k, c] != 0:
                    rows[row, r * d + k] += x[k, c]
            # (XC)[r,c] = Σ_k X[r,k] C[k,c]
            for k in range(d):
                if x[r, k] != 0:
                    rows[row, k * d + c] -= x[r, k]
    return rows


def commutant_basis(a: StructureTensor, rng: SplitMix64, elements: int = 2) -> List[np.ndarray]:
    """
    Basis of the matrices commuting with a few seeded random inner derivations.

    The kernel is refined one element at a time, each step solving only for
    coefficients of the current basis.
    """
    d = a.dim
    basis: Optional[List[np.ndarray]] = None
    for _ in range(elements):
        x = _random_ad_element(a, rng)
        if basis is None:
            space = kernel(_commutant_constraints(x, d))
            basis = [v.reshape(d, d) for v in space.vectors()]
            continue
        if not basis:
            break
        columns = [(mat_mul(c, x) - mat_mul(x, c)).reshape(-1) for c in basis]
        relation = np.array(columns, dtype=object).T
        coeffs = kernel(relation)
        basis = [
            sum((coef[i] * basis[i] for i in range(len(basis)) if coef[i] != 0), zeros(d, d))
            for coef in coeffs.vectors()
        ]
    return basis or []


def _to_sympy(x: np.ndarray) -> sympy.Matrix:
    return sympy.Matrix(
        x.shape[0], x.shape[1],
        [sympy.Rational(q.numerator, q.denominator) for q in (Fraction(v) for v in x.flat)],
    )


def _poly_at(coeffs: List[Fraction], x: np.ndarray) -> np.ndarray:
    """Horner evaluation of a polynomial (highest degree first) at a matrix."""
    d = x.shape[0]
    out = zeros(d, d)
    ident = identity(d)
    for c in coeffs:
        out = mat_mul(out, x) + c * ident
    return out


def primary_components(x: np.ndarray) -> List[Subspace]:
    """
    Kernels and images of f(X)^j for each irreducible factor f^k of the
    characteristic polynomial over QQ, 1 <= j <= k.

    For X commuting with ad V every one of these is an ideal. The powers
    below k catch non-split extensions, where X = a + N with N nilpotent.
    """
    d = x.shape[0]
    t = sympy.Symbol("t")
    charpoly = _to_sympy(x).charpoly(t)
    _, factors = sympy.Poly(charpoly.as_expr(), t, domain="QQ").factor_list()
    components: List[Subspace] = []

    def keep(s: Subspace) -> None:
        if _is_proper(s) and s not in components:
            components.append(s)

    full = Subspace.full(d)
    for factor, multiplicity in factors:
        coeffs = [Fraction(int(c.p), int(c.q)) for c in factor.all_coeffs()]
        value = _poly_at(coeffs, x)
        power = identity(d)
        for _ in range(multiplicity):
            power = mat_mul(power, value)
            keep(kernel(power))
            keep(image(power, full))
    return components


def commutant_candidates(m: MetricNLieAlgebra, seed: int) -> List[Subspace]:
    """Ideals among primary components of seeded random commutant elements."""
    a = m.algebra
    d = a.dim
    rng = SplitMix64(seed ^ 0x5DEECE66D)
    basis = commutant_basis(a, rng)
    if len(basis) < 2:
        return []
    found: List[Subspace] = []
    for _ in range(_COMMUTANT_DRAWS):
        x = zeros(d, d)
        for b in basis:
            x = x + rng.rational() * b
        for comp in primary_components(x):
            if _is_proper(comp) and comp not in found and is_ideal(a, comp):
                found.append(comp)
        if found:
            break
    logger.debug("commutant probe (dimension %d) found %d ideal(s)", len(basis), len(found))
    return found


def add_commutant_candidates(pool: CandidatePool, m: MetricNLieAlgebra, seed: int) -> bool:
    """Extend pool by the commutant probe; True if anything new was added."""
    added = False
    for s in commutant_candidates(m, seed):
        added |= pool.add(s)
    if added:
        for s in pool.items():
            pool.add(perp(m.metric, s))
        _close_under_intersections(pool)
    return added


def candidate_pool(m: MetricNLieAlgebra, seed: int) -> CandidatePool:
    """Cheap candidates, plus the commutant probe when they find nothing."""
    pool = cheap_candidates(m, seed)
    if not len(pool):
        add_commutant_candidates(pool, m, seed)
    return pool


def _probe_vectors(s: Subspace, rng: SplitMix64, extra: int) -> List[np.ndarray]:
    probes = list(s.vectors())
    probes.append(sum(probes[1:], probes[0]))
    for _ in range(extra):
        v = zero_vector(s.ambient_dim)
        for row in s.vectors():
            v = v + rng.rational() * row
        if not is_zero(v):
            probes.append(v)
    return probes


def shrink(a: StructureTensor, s: Subspace, rng: SplitMix64, extra: int = 4) -> Subspace:
    """Replace s by a smaller closure until every probe vector regenerates it."""
    current = s
    while True:
        for v in _probe_vectors(current, rng, extra):
            smaller = ideal_closure(a, Subspace.span([v], a.dim))
            if smaller != current:
                logger.debug("shrinking ideal of dimension %d to %d", current.dim, smaller.dim)
                current = smaller
                break
        else:
            return current


def minimal_ideal_search(m: MetricNLieAlgebra, seed: int = 0) -> Optional[IdealHandle]:
    """
    A proper nonzero ideal that the probes cannot shrink further.

    Returns:
        IdealHandle, or None when no proper ideal was found (simple or
        one-dimensional inputs, or a search miss)
    """
    require_validated(m)
    if m.dim <= 1:
        return None
    pool = candidate_pool(m, seed)
    ordered = pool.sorted()
    if not ordered:
        logger.debug("no proper ideal found by probes")
        return None
    rng = SplitMix64(seed + 1)
    best = shrink(m.algebra, ordered[0], rng)
    logger.debug("minimal ideal candidate of dimension %d", best.dim)
    return IdealHandle(m, best)


def classify_minimal(m: MetricNLieAlgebra, i: IdealHandle) -> MinimalKind:
    """
    Nondegenerate when I ∩ I⊥ = 0, isotropic when I ⊆ I⊥.

    Raises:
        InconsistencyError: for any other outcome, which means i is not minimal
    """
    if i.is_nondegenerate:
        return MinimalKind.NONDEGENERATE
    if i.is_isotropic:
        return MinimalKind.ISOTROPIC
    raise InconsistencyError(
        f"ideal of dimension {i.dim} is neither nondegenerate nor isotropic, so it is not minimal"
    )
