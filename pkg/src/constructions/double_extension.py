"""
Double extensions.

The one-dimensional case builds V = span{u} ⊕ W ⊕ span{v} from a metric
Lie n-algebra structure on W and a metric Lie (n-1)-algebra structure on W
compatible with it. The general case builds V = U ⊕ W ⊕ U* from a Lie
n-algebra U acting on a metric Lie n-algebra W, with the coadjoint action
on U*, an equivariant map φ: ΛⁿW -> U* and the mixed brackets
Λᵏ U ⊗ Λⁿ⁻ᵏ W -> W ⊕ U*. Both builders assemble the candidate bracket and
accept it only when the full validation passes.
"""

import itertools
import logging
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.core.algebra import Endomorphism, MetricNLieAlgebra, NLieAlgebra, StructureTensor
from src.core.validation import (
    INVARIANCE,
    ValidationReport,
    Violation,
    check_form_invariance,
    check_n_jacobi,
    derivation_residual,
    validate_metric,
    validation_report,
)
from src.exact.forms import SymmetricForm
from src.exact.matrix import is_zero, mat_mul, zero_vector, zeros
from src.exact.rational import as_rational, format_rational
from src.utils.errors import (
    ConstructionError,
    DegenerateFormError,
    DimensionMismatchError,
    PairingConsistencyError,
)

logger = logging.getLogger(__name__)

CONDITION_1 = "condition-1"
CONDITION_2 = "condition-2"
PAIRING = "pairing"

Coefficients = Tuple[Fraction, ...]


class OneDimDoubleExtensionData(BaseModel):
    """
    Ingredients of a one-dimensional double extension.

    n_bracket_w is the n-bracket on W, lower_bracket the (n-1)-bracket on W,
    uu_entry the value of ⟨u, u⟩.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    w_metric: SymmetricForm
    n_bracket_w: StructureTensor
    lower_bracket: StructureTensor
    uu_entry: Fraction = Fraction(0)

    @field_validator("uu_entry", mode="before")
    @classmethod
    def _coerce_uu(cls, value):
        return as_rational(value)

    @model_validator(mode="after")
    def _check_shapes(self) -> "OneDimDoubleExtensionData":
        if self.n < 2:
            raise DimensionMismatchError(f"n must be at least 2, got {self.n}")
        d = self.w_metric.dim
        if self.n_bracket_w.arity != self.n or self.n_bracket_w.dim != d:
            raise DimensionMismatchError("n-bracket on W has the wrong arity or dimension")
        if self.lower_bracket.arity != self.n - 1 or self.lower_bracket.dim != d:
            raise DimensionMismatchError("lower bracket on W has the wrong arity or dimension")
        if not self.w_metric.is_nondegenerate():
            raise DegenerateFormError("the metric on W must be nondegenerate")
        return self

    @property
    def w_dim(self) -> int:
        return self.w_metric.dim


def check_one_dim_conditions(d: OneDimDoubleExtensionData) -> ValidationReport:
    """
    Condition 1: the lower bracket is a Lie (n-1)-algebra leaving w_metric
    invariant. Condition 2: the n-bracket on W is a metric Lie n-algebra
    and the lower inner derivations are derivations of it.
    """
    lower, upper, g = d.lower_bracket, d.n_bracket_w, d.w_metric
    first = [check_n_jacobi(lower, label=CONDITION_1), check_form_invariance(lower, g, label=CONDITION_1)]
    second = [check_n_jacobi(upper, label=CONDITION_2), check_form_invariance(upper, g, label=CONDITION_2)]
    found = []
    checked = 0
    ys = list(upper.tuples())
    for key in lower.ad_tuples():
        a = lower.ad_matrix(key)
        checked += len(ys)
        if is_zero(a):
            continue
        for y in ys:
            residual = derivation_residual(upper, a, y)
            if not is_zero(residual):
                found.append(
                    Violation(
                        label=CONDITION_2, x=key, y=y,
                        residual=tuple(format_rational(c) for c in residual),
                    )
                )
    compat = ValidationReport(label=CONDITION_2, checked=checked, violations=tuple(found))
    return ValidationReport.combine("double extension conditions", first + second + [compat])


def double_extend_1d(d: OneDimDoubleExtensionData) -> MetricNLieAlgebra:
    """
    V = span{u} ⊕ W ⊕ span{v}, basis order (u, W, v).

    [u x_1 ... x_(n-1)] = lower(x_1 ... x_(n-1)),
    [x_1 ... x_n] = (-1)^n ⟨lower(x_1 ... x_(n-1)), x_n⟩ v + [x_1 ... x_n]_W,
    v central, ⟨u, v⟩ = 1, ⟨u, u⟩ = uu_entry, ⟨v, v⟩ = 0.

    Raises:
        ConstructionError: with the labelled report when a condition or the
            final validation fails
    """
    conditions = check_one_dim_conditions(d)
    if not conditions.passed:
        raise ConstructionError(
            f"double extension data violates {', '.join(conditions.labels())}", conditions
        )
    n, w = d.n, d.w_dim
    total = w + 2
    v_index = w + 1
    g = d.w_metric.gram
    brackets: Dict[Tuple[int, ...], np.ndarray] = {}
    for key, value in d.lower_bracket.items():
        out = zero_vector(total)
        out[1:1 + w] = value
        brackets[(0,) + tuple(i + 1 for i in key)] = out
    sign = Fraction((-1) ** n)
    for key in itertools.combinations(range(w), n):
        out = zero_vector(total)
        out[1:1 + w] = d.n_bracket_w.basis_bracket(key)
        lower = d.lower_bracket.basis_bracket(key[:-1])
        out[v_index] = sign * mat_mul(mat_mul(lower, g), _unit(w, key[-1]))
        if not is_zero(out):
            brackets[tuple(i + 1 for i in key)] = out
    algebra = NLieAlgebra(n, total, brackets)
    gram = zeros(total, total)
    gram[1:1 + w, 1:1 + w] = g
    gram[0, v_index] = gram[v_index, 0] = Fraction(1)
    gram[0, 0] = Fraction(d.uu_entry)
    metric = SymmetricForm(gram)
    return _accept(algebra, metric, "one-dimensional double extension")


def _unit(dim: int, index: int) -> np.ndarray:
    v = zero_vector(dim)
    v[index] = Fraction(1)
    return v


def _accept(algebra: NLieAlgebra, metric: SymmetricForm, what: str) -> MetricNLieAlgebra:
    report = validation_report(algebra, metric)
    if not report.passed:
        raise ConstructionError(f"{what} failed validation: {report.summary()}", report)
    return MetricNLieAlgebra(algebra, metric, validated=True)


class GeneralDoubleExtensionData(BaseModel):
    """
    Ingredients of the double extension of W by U.

    Index conventions (0-based, each within its own block):
      action: increasing (n-1)-tuple of U indices -> endomorphism of W
      phi: increasing n-tuple of W indices -> coefficients on U*
      mixed_w / mixed_dual: (increasing k-tuple of U indices, increasing
        (n-k)-tuple of W indices), 0 < k < n-1 -> coefficients on W / on U*
    w is None when W = 0; u_form is None for the zero form on U.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    n: int
    u: NLieAlgebra
    w: Optional[MetricNLieAlgebra] = None
    u_form: Optional[SymmetricForm] = None
    action: Dict[Tuple[int, ...], Endomorphism] = Field(default_factory=dict)
    phi: Dict[Tuple[int, ...], Coefficients] = Field(default_factory=dict)
    mixed_w: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Coefficients] = Field(default_factory=dict)
    mixed_dual: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Coefficients] = Field(default_factory=dict)

    @property
    def u_dim(self) -> int:
        return self.u.dim

    @property
    def w_dim(self) -> int:
        return 0 if self.w is None else self.w.dim

    @model_validator(mode="after")
    def _check_shapes(self) -> "GeneralDoubleExtensionData":
        n, r, w = self.n, self.u_dim, self.w_dim
        if self.u.n != n or (self.w is not None and self.w.n != n):
            raise DimensionMismatchError("U and W must have the same arity as the extension")
        if self.u_form is not None and self.u_form.dim != r:
            raise DimensionMismatchError(f"u_form has dimension {self.u_form.dim}, U has {r}")
        for key, endo in self.action.items():
            _check_tuple(key, n - 1, r, "action")
            if endo.dim != w:
                raise DimensionMismatchError(f"action on W for {key} has dimension {endo.dim}")
        for key, coeffs in self.phi.items():
            _check_tuple(key, n, w, "phi")
            _check_length(coeffs, r, "phi")
        for table, target, name in ((self.mixed_w, w, "mixed_w"), (self.mixed_dual, r, "mixed_dual")):
            for (ukey, wkey), coeffs in table.items():
                k = len(ukey)
                if not 0 < k < n - 1:
                    raise DimensionMismatchError(f"{name} level {k} is outside 1..{n - 2}")
                _check_tuple(ukey, k, r, name)
                _check_tuple(wkey, n - k, w, name)
                _check_length(coeffs, target, name)
        return self


def _check_tuple(key: Tuple[int, ...], length: int, bound: int, name: str) -> None:
    if len(key) != length or list(key) != sorted(set(key)) or any(i < 0 or i >= bound for i in key):
        raise DimensionMismatchError(f"{name} key {key} is not an increasing {length}-tuple below {bound}")


def _check_length(coeffs: Coefficients, length: int, name: str) -> None:
    if len(coeffs) != length:
        raise DimensionMismatchError(f"{name} value has {len(coeffs)} coefficients, expected {length}")


def general_layout(d: GeneralDoubleExtensionData) -> Tuple[range, range, range]:
    """Index ranges of U, W and U* inside V."""
    r, w = d.u_dim, d.w_dim
    return range(0, r), range(r, r + w), range(r + w, r + w + r)


def general_metric(d: GeneralDoubleExtensionData) -> SymmetricForm:
    r, w = d.u_dim, d.w_dim
    total = 2 * r + w
    gram = zeros(total, total)
    if d.u_form is not None:
        gram[:r, :r] = d.u_form.gram
    if d.w is not None:
        gram[r:r + w, r:r + w] = d.w.metric.gram
    for i in range(r):
        gram[i, r + w + i] = gram[r + w + i, i] = Fraction(1)
    return SymmetricForm(gram)


def general_algebra(d: GeneralDoubleExtensionData) -> NLieAlgebra:
    """Assemble the candidate bracket on U ⊕ W ⊕ U* without validating it."""
    n, r, w = d.n, d.u_dim, d.w_dim
    total = 2 * r + w
    brackets: Dict[Tuple[int, ...], np.ndarray] = {}

    def place(key, w_part=None, dual_part=None, u_part=None):
        out = zero_vector(total)
        if u_part is not None:
            out[:r] = u_part
        if w_part is not None:
            out[r:r + w] = w_part
        if dual_part is not None:
            out[r + w:] = dual_part
        if not is_zero(out):
            brackets[key] = out

    for key, value in d.u.items():
        place(key, u_part=value)
    # coadjoint action on U*
    for key, m in d.u.ad_matrices():
        for j in range(r):
            place(key + (r + w + j,), dual_part=-np.array(m[j, :], dtype=object))
    for key, endo in d.action.items():
        for j in range(w):
            place(key + (r + j,), w_part=np.array(endo.matrix[:, j], dtype=object))
    if w:
        for key in itertools.combinations(range(w), n):
            w_part = d.w.algebra.basis_bracket(key)
            dual = d.phi.get(key)
            place(tuple(r + i for i in key), w_part=w_part,
                  dual_part=None if dual is None else np.array(dual, dtype=object))
    keys = set(d.mixed_w) | set(d.mixed_dual)
    for ukey, wkey in sorted(keys):
        w_part = d.mixed_w.get((ukey, wkey))
        dual = d.mixed_dual.get((ukey, wkey))
        place(
            ukey + tuple(r + i for i in wkey),
            w_part=None if w_part is None else np.array(w_part, dtype=object),
            dual_part=None if dual is None else np.array(dual, dtype=object),
        )
    return NLieAlgebra(n, total, brackets)


def _pairing_violations(d: GeneralDoubleExtensionData, report: ValidationReport) -> List[Violation]:
    """Invariance failures that tie a level-k W component to a level-(k-1) U* component."""
    u_range, w_range, dual_range = general_layout(d)
    out = []
    for v in report.violations:
        if v.label != INVARIANCE or any(i in dual_range for i in v.x):
            continue
        kinds = sorted("u" if i in u_range else "w" if i in w_range else "d" for i in v.y)
        if kinds == ["u", "w"]:
            out.append(v.model_copy(update={"label": PAIRING}))
    return out


def double_extend_general(d: GeneralDoubleExtensionData) -> MetricNLieAlgebra:
    """
    Double extension of W by U, basis order (U, W, U*).

    Metric: u_form on U, the metric of W on W, ⟨U, U*⟩ the dual pairing.

    Raises:
        PairingConsistencyError: when mixed W and U* components disagree
            with the invariance of the metric
        ConstructionError: for any other validation failure
    """
    algebra = general_algebra(d)
    metric = general_metric(d)
    invariance = check_form_invariance(algebra, metric)
    pairing = _pairing_violations(d, invariance)
    if pairing:
        report = ValidationReport(label=PAIRING, checked=invariance.checked, violations=tuple(pairing))
        raise PairingConsistencyError(
            f"{len(pairing)} mixed bracket(s) disagree with the metric pairing", report
        )
    return _accept(algebra, metric, "double extension")


def general_from_one_dim(d: OneDimDoubleExtensionData) -> GeneralDoubleExtensionData:
    """
    Same extension as GeneralDoubleExtensionData with U one-dimensional.

    The lower bracket becomes the level-1 mixed map (the action when n = 2)
    and φ(x_1 ... x_n) = (-1)^n ⟨lower(x_1 ... x_(n-1)), x_n⟩.
    """
    n, w = d.n, d.w_dim
    w_algebra = validate_metric(NLieAlgebra.from_tensor(d.n_bracket_w), d.w_metric)
    g = d.w_metric.gram
    action: Dict[Tuple[int, ...], Endomorphism] = {}
    mixed_w: Dict[Tuple[Tuple[int, ...], Tuple[int, ...]], Coefficients] = {}
    if n == 2:
        action[(0,)] = Endomorphism(np.array(d.lower_bracket.ad_matrix(()), dtype=object))
    else:
        for key, value in d.lower_bracket.items():
            mixed_w[((0,), key)] = tuple(Fraction(x) for x in value)
    phi: Dict[Tuple[int, ...], Coefficients] = {}
    sign = Fraction((-1) ** n)
    for key in itertools.combinations(range(w), n):
        lower = d.lower_bracket.basis_bracket(key[:-1])
        c = sign * mat_mul(mat_mul(lower, g), _unit(w, key[-1]))
        if c != 0:
            phi[key] = (c,)
    u_form = SymmetricForm([[d.uu_entry]]) if d.uu_entry else None
    return GeneralDoubleExtensionData(
        n=n, u=NLieAlgebra(n, 1), w=w_algebra, u_form=u_form,
        action=action, phi=phi, mixed_w=mixed_w,
    )
