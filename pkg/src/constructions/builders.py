"""
Builders for the basic metric Lie n-algebras.

Simple algebras, abelian algebras, orthogonal direct sums and
representation extensions V ⊕ W (adjoint and coadjoint in particular).
Every metric builder returns a validated MetricNLieAlgebra.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from src.core.algebra import Endomorphism, MetricNLieAlgebra, NLieAlgebra
from src.core.validation import (
    JACOBI,
    ValidationReport,
    Violation,
    check_n_jacobi,
    validate_metric,
)
from src.exact.forms import SymmetricForm, orthogonal_sum
from src.exact.matrix import identity, is_zero, unit_vector, zero_vector, zeros
from src.exact.rational import format_rational
from src.utils.errors import ArityMismatchError, ConstructionError, DimensionMismatchError

logger = logging.getLogger(__name__)

REPRESENTATION = "representation"


def build_simple(n: int, signs: Sequence[int]) -> MetricNLieAlgebra:
    """
    The (n+1)-dimensional simple Lie n-algebra with signs ε.

    [e_1 ... ê_i ... e_(n+1)] = (-1)^i ε_i e_i (1-based), metric diag(ε).

    Args:
        n: arity (>= 2)
        signs: n + 1 entries, each +1 or -1

    Returns:
        Validated MetricNLieAlgebra
    """
    signs = [int(s) for s in signs]
    if len(signs) != n + 1:
        raise DimensionMismatchError(f"need {n + 1} signs for n = {n}, got {len(signs)}")
    if any(s not in (1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    d = n + 1
    brackets = {}
    for i in range(d):
        key = tuple(k for k in range(d) if k != i)
        # 1-based position i + 1
        brackets[key] = Fraction((-1) ** (i + 1) * signs[i]) * unit_vector(d, i)
    algebra = NLieAlgebra(n, d, brackets)
    return validate_metric(algebra, SymmetricForm.diagonal(signs))


def build_abelian(n: int, gram) -> MetricNLieAlgebra:
    """
    Zero bracket with the given metric.

    Raises:
        DegenerateFormError: if gram is degenerate
    """
    form = gram if isinstance(gram, SymmetricForm) else SymmetricForm(gram)
    return validate_metric(NLieAlgebra(n, form.dim), form)


def _shift(vector: np.ndarray, offset: int, total: int) -> np.ndarray:
    out = zero_vector(total)
    out[offset:offset + len(vector)] = vector
    return out


def direct_sum(a: MetricNLieAlgebra, b: MetricNLieAlgebra) -> MetricNLieAlgebra:
    """
    Orthogonal direct sum: block tensor and block metric.

    Raises:
        ArityMismatchError: if the arities differ
    """
    if a.n != b.n:
        raise ArityMismatchError(f"cannot sum a Lie {a.n}-algebra with a Lie {b.n}-algebra")
    total = a.dim + b.dim
    brackets = {}
    for key, value in a.algebra.items():
        brackets[key] = _shift(value, 0, total)
    for key, value in b.algebra.items():
        brackets[tuple(i + a.dim for i in key)] = _shift(value, a.dim, total)
    algebra = NLieAlgebra(a.n, total, brackets)
    return validate_metric(algebra, orthogonal_sum(a.metric, b.metric))


class RepresentationData(BaseModel):
    """
    A Lie n-algebra V with an action of its inner derivations on W.

    action maps increasing (n-1)-tuples of V-basis indices to endomorphisms
    of W; missing tuples act by zero.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    base: NLieAlgebra
    module_dim: int
    action: Dict[Tuple[int, ...], Endomorphism] = {}

    @model_validator(mode="after")
    def _check_shapes(self) -> "RepresentationData":
        for key, endo in self.action.items():
            if len(key) != self.base.n - 1 or list(key) != sorted(set(key)):
                raise DimensionMismatchError(f"action key {key} is not an increasing (n-1)-tuple")
            if any(i < 0 or i >= self.base.dim for i in key):
                raise DimensionMismatchError(f"action key {key} is out of range")
            if endo.dim != self.module_dim:
                raise DimensionMismatchError(
                    f"action matrix for {key} has dimension {endo.dim}, module has {self.module_dim}"
                )
        return self


def _extension_algebra(r: RepresentationData) -> NLieAlgebra:
    v = r.base
    total = v.dim + r.module_dim
    brackets = {}
    for key, value in v.items():
        brackets[key] = _shift(value, 0, total)
    for key, endo in r.action.items():
        for j in range(r.module_dim):
            column = np.array(endo.matrix[:, j], dtype=object)
            if not is_zero(column):
                brackets[key + (v.dim + j,)] = _shift(column, v.dim, total)
    return NLieAlgebra(v.n, total, brackets)


def check_representation_conditions(
    base: NLieAlgebra, extended: NLieAlgebra, module_dim: int
) -> ValidationReport:
    """
    The three conditions on V ⊕ W: V keeps its bracket, [V ... V W] ⊆ W and
    every bracket with two or more W slots vanishes.
    """
    d = base.dim
    if extended.dim != d + module_dim or extended.n != base.n:
        raise DimensionMismatchError("extended algebra does not have the shape of V ⊕ W")
    found = []
    checked = 0
    for key in extended.tuples():
        checked += 1
        w_slots = sum(1 for i in key if i >= d)
        value = extended.basis_bracket(key)
        if w_slots == 0:
            expected = _shift(base.basis_bracket(key), 0, extended.dim)
            residual = value - expected
        elif w_slots == 1:
            residual = _shift(value[:d], 0, extended.dim)
        else:
            residual = value
        if not is_zero(residual):
            found.append(
                Violation(
                    label=REPRESENTATION, x=key, y=(),
                    residual=tuple(format_rational(c) for c in residual),
                )
            )
    return ValidationReport(label=REPRESENTATION, checked=checked, violations=tuple(found))


def build_representation_extension(r: RepresentationData) -> Tuple[NLieAlgebra, ValidationReport]:
    """
    Bracket on V ⊕ W from an action of ad V on W.

    Returns:
        (algebra, report); the report fails when the action is not a
        representation of ad V (n-Jacobi violations) or breaks the shape
        conditions
    """
    algebra = _extension_algebra(r)
    report = ValidationReport.combine(
        "representation extension",
        [
            check_representation_conditions(r.base, algebra, r.module_dim),
            check_n_jacobi(algebra, label=JACOBI),
        ],
    )
    if not report.passed:
        logger.debug("representation extension failed: %s", report.summary())
    return algebra, report


def _require(algebra: NLieAlgebra, report: ValidationReport, what: str) -> NLieAlgebra:
    if not report.passed:
        raise ConstructionError(f"{what} failed validation: {report.summary()}", report)
    return algebra


def build_adjoint(a: NLieAlgebra) -> NLieAlgebra:
    """V ⊕ V with ad V acting on the second copy."""
    action = {key: Endomorphism(m) for key, m in a.ad_matrices()}
    data = RepresentationData(base=a, module_dim=a.dim, action=action)
    return _require(*build_representation_extension(data), "adjoint extension")


def coadjoint_action(a: NLieAlgebra) -> Dict[Tuple[int, ...], Endomorphism]:
    """β = -ad_Tᵀ α for every increasing (n-1)-tuple T."""
    return {key: Endomorphism(-np.array(m.T, dtype=object)) for key, m in a.ad_matrices()}


def build_coadjoint(a: NLieAlgebra) -> NLieAlgebra:
    """V ⊕ V* with [v_1 ... v_(n-1) α] = β, β(v) = -α([v_1 ... v_(n-1) v])."""
    data = RepresentationData(base=a, module_dim=a.dim, action=coadjoint_action(a))
    return _require(*build_representation_extension(data), "coadjoint extension")


def coadjoint_pairing_metric(dim: int) -> SymmetricForm:
    """Dual pairing ⟨v, α⟩ = α(v) on V ⊕ V*."""
    g = zeros(2 * dim, 2 * dim)
    ident = identity(dim)
    g[:dim, dim:] = ident
    g[dim:, :dim] = ident
    return SymmetricForm(g)


def build_metric_coadjoint(a: NLieAlgebra) -> MetricNLieAlgebra:
    return validate_metric(build_coadjoint(a), coadjoint_pairing_metric(a.dim))


def sign_vectors(length: int):
    """All ±1 vectors of the given length, lexicographic with +1 first."""
    return [list(s) for s in itertools.product((1, -1), repeat=length)]
