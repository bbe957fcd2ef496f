"""
Exhaustive checks of the defining identities.

Both checks enumerate basis tuples; by multilinearity a zero residual on
every basis tuple is equivalent to the identity holding everywhere. The
x-tuples can be split across joblib workers; reports are sorted before they
are returned so the result does not depend on the split.
"""

import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from pydantic import BaseModel, ConfigDict

from src.core.algebra import MetricNLieAlgebra, NLieAlgebra, StructureTensor
from src.exact.forms import SymmetricForm
from src.exact.matrix import is_zero, mat_mul
from src.exact.rational import format_rational
from src.utils.config import get_settings
from src.utils.errors import DimensionMismatchError, NotValidatedError

logger = logging.getLogger(__name__)

JACOBI = "n-Jacobi"
INVARIANCE = "invariance"


class Violation(BaseModel):
    """One basis tuple on which an identity fails, with its residual."""

    model_config = ConfigDict(frozen=True)

    label: str
    x: Tuple[int, ...]
    y: Tuple[int, ...]
    residual: Tuple[str, ...]

    def describe(self) -> str:
        xs = " ".join(str(i + 1) for i in self.x)
        ys = " ".join(str(i + 1) for i in self.y)
        return f"{self.label}: x=({xs}) y=({ys}) residual=({', '.join(self.residual)})"

    def sort_key(self):
        return (self.label, self.x, self.y)


class ValidationReport(BaseModel):
    """Outcome of an exhaustive check; lists every violation found."""

    model_config = ConfigDict(frozen=True)

    label: str
    checked: int = 0
    violations: Tuple[Violation, ...] = ()

    @property
    def passed(self) -> bool:
        return not self.violations

    def lines(self) -> List[str]:
        return [v.describe() for v in self.violations]

    def labels(self) -> List[str]:
        return sorted({v.label for v in self.violations})

    def summary(self) -> str:
        if self.passed:
            return f"{self.label}: pass ({self.checked} tuples checked)"
        return f"{self.label}: {len(self.violations)} violation(s) in {self.checked} tuples"

    @classmethod
    def combine(cls, label: str, reports: Sequence["ValidationReport"]) -> "ValidationReport":
        violations = sorted(
            (v for r in reports for v in r.violations), key=lambda v: v.sort_key()
        )
        return cls(
            label=label,
            checked=sum(r.checked for r in reports),
            violations=tuple(violations),
        )


def _residual_strings(v: np.ndarray) -> Tuple[str, ...]:
    return tuple(format_rational(x) for x in v)


def derivation_residual(tensor: StructureTensor, d: np.ndarray, y: Tuple[int, ...]) -> np.ndarray:
    """D[y_1 ... y_k] - Σ_s [y_1 ... D y_s ... y_k] for a basis tuple y."""
    residual = mat_mul(d, tensor.basis_bracket(y))
    for s, ys in enumerate(y):
        column = d[:, ys]
        for k in range(tensor.dim):
            c = column[k]
            if c == 0:
                continue
            replaced = y[:s] + (k,) + y[s + 1:]
            residual = residual - c * tensor.basis_bracket(replaced)
    return residual


def _chunks(items: list, parts: int) -> List[list]:
    parts = max(1, min(parts, len(items)))
    size = -(-len(items) // parts) if items else 0
    return [items[i:i + size] for i in range(0, len(items), size)] if items else []


def _jacobi_chunk(tensor: StructureTensor, xs: List[Tuple[int, ...]], label: str):
    ys = list(tensor.tuples())
    found = []
    for x in xs:
        a = tensor.ad_matrix(x)
        if is_zero(a):
            continue
        for y in ys:
            residual = derivation_residual(tensor, a, y)
            if not is_zero(residual):
                found.append(Violation(label=label, x=x, y=y, residual=_residual_strings(residual)))
    return found, len(xs) * len(ys)


def _run(worker, tensor, xs: list, jobs: int, label: str, *extra) -> ValidationReport:
    if jobs > 1 and len(xs) > 1:
        results = Parallel(n_jobs=jobs)(
            delayed(worker)(tensor, chunk, label, *extra) for chunk in _chunks(xs, jobs)
        )
    else:
        results = [worker(tensor, xs, label, *extra)]
    violations = sorted((v for found, _ in results for v in found), key=lambda v: v.sort_key())
    checked = sum(count for _, count in results)
    return ValidationReport(label=label, checked=checked, violations=tuple(violations))


def check_n_jacobi(a: StructureTensor, jobs: Optional[int] = None, label: str = JACOBI) -> ValidationReport:
    """
    Exhaustive n-Jacobi check: every ad_x is a derivation of the bracket.

    Args:
        a: algebra (or any structure tensor)
        jobs: joblib worker count; defaults to NLIE_JOBS
        label: label attached to violations

    Returns:
        ValidationReport listing every (x, y) pair with a nonzero residual
    """
    jobs = jobs or get_settings().jobs
    xs = list(a.ad_tuples())
    report = _run(_jacobi_chunk, a, xs, jobs, label)
    logger.debug("%s", report.summary())
    return report


def _invariance_chunk(tensor: StructureTensor, xs, label: str, gram: np.ndarray):
    found = []
    d = tensor.dim
    for x in xs:
        ga = mat_mul(gram, tensor.ad_matrix(x))
        sym = ga + ga.T
        for y1 in range(d):
            for y2 in range(y1, d):
                if sym[y1, y2] != 0:
                    found.append(
                        Violation(
                            label=label, x=x, y=(y1, y2),
                            residual=(format_rational(sym[y1, y2]),),
                        )
                    )
    return found, len(xs) * d * (d + 1) // 2


def check_form_invariance(
    tensor: StructureTensor,
    form: SymmetricForm,
    jobs: Optional[int] = None,
    label: str = INVARIANCE,
) -> ValidationReport:
    """⟨[x y1], y2⟩ + ⟨[x y2], y1⟩ = 0 over all basis tuples x and y1 <= y2."""
    if form.dim != tensor.dim:
        raise DimensionMismatchError(
            f"form has dimension {form.dim}, bracket acts on dimension {tensor.dim}"
        )
    jobs = jobs or get_settings().jobs
    xs = list(tensor.ad_tuples())
    report = _run(_invariance_chunk, tensor, xs, jobs, label, form.gram)
    logger.debug("%s", report.summary())
    return report


def check_invariance(m: MetricNLieAlgebra, jobs: Optional[int] = None) -> ValidationReport:
    return check_form_invariance(m.algebra, m.metric, jobs=jobs)


def validation_report(algebra: NLieAlgebra, metric: SymmetricForm, jobs: Optional[int] = None) -> ValidationReport:
    return ValidationReport.combine(
        "metric Lie n-algebra",
        [check_n_jacobi(algebra, jobs=jobs), check_form_invariance(algebra, metric, jobs=jobs)],
    )


def validate_metric(algebra: NLieAlgebra, metric: SymmetricForm, jobs: Optional[int] = None) -> MetricNLieAlgebra:
    """
    Check both identities and return the validated metric algebra.

    Raises:
        NotValidatedError: carrying the combined report when either check fails
    """
    report = validation_report(algebra, metric, jobs=jobs)
    if not report.passed:
        raise NotValidatedError(
            f"{len(report.violations)} violation(s): {', '.join(report.labels())}", report
        )
    return MetricNLieAlgebra(algebra, metric, validated=True)


def revalidate(m: MetricNLieAlgebra, jobs: Optional[int] = None) -> MetricNLieAlgebra:
    return validate_metric(m.algebra, m.metric, jobs=jobs)


def require_validated(m: MetricNLieAlgebra) -> None:
    if not m.validated:
        raise NotValidatedError("operation requires a validated metric Lie n-algebra")


def inner_derivations_skew(m: MetricNLieAlgebra) -> bool:
    """AᵀG + GA = 0 for every basis inner derivation A."""
    g = m.metric.gram
    for _, a in m.algebra.ad_matrices():
        ga = mat_mul(g, a)
        if not is_zero(ga + ga.T):
            return False
    return True
