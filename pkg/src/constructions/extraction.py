"""
Reading double-extension data off an indecomposable metric Lie n-algebra.

Given an isotropic minimal ideal I, the algebra is written in an adapted
basis and the ingredients are read off there. Every extraction rebuilds the
algebra from the data and compares structure constants exactly before it
returns.
"""

import itertools
import logging
from fractions import Fraction
from typing import NamedTuple, Optional, Union

import numpy as np

from src.constructions.double_extension import (
    GeneralDoubleExtensionData,
    OneDimDoubleExtensionData,
    double_extend_1d,
    double_extend_general,
)
from src.core.algebra import Endomorphism, MetricNLieAlgebra, NLieAlgebra, StructureTensor
from src.core.validation import require_validated, validate_metric
from src.exact.forms import SymmetricForm, pairing, perp
from src.exact.matrix import inverse, is_zero, mat_mul, solve, unit_vector, zeros
from src.exact.subspace import Subspace
from src.structure.decomposition import simplicity_fingerprint
from src.structure.ideals import IdealHandle, quotient_data
from src.utils.config import get_settings
from src.utils.errors import ConstructionError, ExtractionError, NotValidatedError

logger = logging.getLogger(__name__)

ExtensionData = Union[OneDimDoubleExtensionData, GeneralDoubleExtensionData]


class ExtractionResult(NamedTuple):
    """
    data: the extension ingredients; adapted: change-of-basis matrix whose
    columns are the adapted basis; pairing: Gram matrix of the section of
    V/I⊥ against the basis of I; rebuilt: the algebra rebuilt from data,
    equal to the input written in the adapted basis.
    """
    data: ExtensionData
    adapted: np.ndarray
    pairing: np.ndarray
    rebuilt: MetricNLieAlgebra


def _as_handle(m: MetricNLieAlgebra, i) -> IdealHandle:
    return i if isinstance(i, IdealHandle) else IdealHandle(m, i)


def extract_double_extension(m: MetricNLieAlgebra, i, budget: Optional[int] = None) -> ExtractionResult:
    """
    Extension data of m relative to an isotropic minimal ideal.

    Args:
        m: validated indecomposable metric algebra
        i: the ideal (IdealHandle or Subspace)
        budget: Newton steps allowed for the section search when dim I = n + 1

    Raises:
        ExtractionError: for a non-isotropic or non-minimal ideal, a failed
            section search, or a rebuild that does not reproduce m
    """
    require_validated(m)
    handle = _as_handle(m, i)
    if not handle.is_ideal:
        raise ExtractionError("subspace is not an ideal")
    if not handle.is_isotropic or handle.space.is_zero():
        raise ExtractionError("ideal is not isotropic")
    if handle.dim == 1:
        return _extract_one_dim(m, handle)
    if handle.dim == m.n + 1:
        return _extract_general(m, handle, budget or get_settings().section_budget)
    raise ExtractionError(
        f"isotropic ideal of dimension {handle.dim} is not minimal (expected 1 or {m.n + 1})"
    )


def _adapted_matrix(columns) -> np.ndarray:
    return np.array([list(c) for c in columns], dtype=object).T


def _compare(target: MetricNLieAlgebra, rebuilt: MetricNLieAlgebra) -> None:
    if rebuilt.algebra != target.algebra or rebuilt.metric != target.metric:
        raise ExtractionError("rebuilt algebra does not reproduce the input in the adapted basis")


def _extract_one_dim(m: MetricNLieAlgebra, handle: IdealHandle) -> ExtractionResult:
    d, n = m.dim, m.n
    v = handle.space.basis[0]
    u = None
    for j in range(d):
        e = unit_vector(d, j)
        c = m.metric.pair(e, v)
        if c != 0:
            u = e / c
            break
    if u is None:
        raise ExtractionError("ideal is orthogonal to everything")
    u = u - (m.metric.pair(u, u) / 2) * v
    w_space = perp(m.metric, Subspace.span([u, v], d))
    adapted = _adapted_matrix([u] + w_space.vectors() + [v])
    target = m.transform(adapted)
    w = w_space.dim
    lower = {}
    for key in itertools.combinations(range(w), n - 1):
        value = target.algebra.basis_bracket((0,) + tuple(k + 1 for k in key))[1:1 + w]
        if not is_zero(value):
            lower[key] = value
    upper = {}
    for key in itertools.combinations(range(w), n):
        value = target.algebra.basis_bracket(tuple(k + 1 for k in key))[1:1 + w]
        if not is_zero(value):
            upper[key] = value
    w_gram = np.array(target.metric.gram[1:1 + w, 1:1 + w], dtype=object)
    try:
        data = OneDimDoubleExtensionData(
            n=n,
            w_metric=SymmetricForm(w_gram),
            n_bracket_w=StructureTensor(n, w, upper),
            lower_bracket=StructureTensor(n - 1, w, lower),
            uu_entry=Fraction(0),
        )
        rebuilt = double_extend_1d(data)
    except ConstructionError as e:
        raise ExtractionError(f"extracted data does not satisfy the extension conditions: {e}")
    _compare(target, rebuilt)
    logger.debug("extracted one-dimensional double extension with dim W = %d", w)
    g = pairing(m.metric, np.array([u], dtype=object), handle.space.basis)
    return ExtractionResult(data, adapted, g, rebuilt)


def find_section(m: MetricNLieAlgebra, ideal_perp: Subspace, budget: int) -> Optional[np.ndarray]:
    """
    Rows s_a = c_a + t_a (c_a the pivot-complement representatives of V/I⊥,
    t_a in I⊥) spanning a subalgebra, found by Newton steps on the linear
    correction of the subalgebra condition.

    Returns:
        the section rows, or None if the budget runs out or a step is inconsistent
    """
    a = m.algebra
    d, n = a.dim, a.n
    q = quotient_data(a, Subspace.full(d), ideal_perp)
    reps = q.representatives
    r = reps.shape[0]
    perp_basis = ideal_perp.basis
    p = perp_basis.shape[0]
    tau = [zeros(1, p)[0] for _ in range(r)]

    def section():
        return [reps[k] + mat_mul(tau[k], perp_basis) for k in range(r)]

    tuples = list(itertools.combinations(range(r), n))
    for step in range(budget + 1):
        s = section()
        residuals = []
        for key in tuples:
            value = a.bracket(*(s[k] for k in key))
            target = q.algebra.basis_bracket(key)
            for b in range(r):
                if target[b] != 0:
                    value = value - target[b] * s[b]
            residuals.append(value)
        if all(is_zero(x) for x in residuals):
            logger.debug("section found after %d step(s)", step)
            return np.array(s, dtype=object)
        if step == budget:
            break
        jac = zeros(len(tuples) * d, r * p)
        for t, key in enumerate(tuples):
            target = q.algebra.basis_bracket(key)
            for slot, k in enumerate(key):
                for j in range(p):
                    args = [s[x] for x in key]
                    args[slot] = perp_basis[j]
                    column = a.bracket(*args) - target[k] * perp_basis[j]
                    jac[t * d:(t + 1) * d, k * p + j] = column
        rhs = -np.concatenate(residuals)
        delta = solve(jac, rhs)
        if delta is None:
            logger.debug("section step %d is inconsistent", step)
            return None
        for k in range(r):
            tau[k] = tau[k] + delta[k * p:(k + 1) * p]
    return None


def _extract_general(m: MetricNLieAlgebra, handle: IdealHandle, budget: int) -> ExtractionResult:
    a = m.algebra
    d, n = a.dim, a.n
    fp = simplicity_fingerprint(quotient_data(a, Subspace.full(d), handle.perp).algebra)
    if not fp.is_simple:
        raise ExtractionError("quotient by the perp of the ideal is not simple")
    section = find_section(m, handle.perp, budget)
    if section is None:
        raise ExtractionError(f"no subalgebra section found within {budget} correction step(s)")
    r = section.shape[0]
    g = pairing(m.metric, section, handle.space.basis)
    # dual basis of I against the section
    dual = mat_mul(inverse(g).T, handle.space.basis)
    w_space = perp(m.metric, Subspace.span(np.vstack([section, dual]), d))
    w = w_space.dim
    adapted = _adapted_matrix(list(section) + w_space.vectors() + list(dual))
    target = m.transform(adapted)
    t = target.algebra
    u_range = range(0, r)
    w_off, dual_off = r, r + w

    u_brackets = {}
    for key in itertools.combinations(u_range, n):
        value = t.basis_bracket(key)[:r]
        if not is_zero(value):
            u_brackets[key] = value
    u_algebra = NLieAlgebra(n, r, u_brackets)
    u_gram = np.array(target.metric.gram[:r, :r], dtype=object)
    u_form = None if is_zero(u_gram) else SymmetricForm(u_gram)

    w_algebra = None
    if w:
        w_brackets = {}
        for key in itertools.combinations(range(w), n):
            value = t.basis_bracket(tuple(w_off + k for k in key))[w_off:dual_off]
            if not is_zero(value):
                w_brackets[key] = value
        w_gram = np.array(target.metric.gram[w_off:dual_off, w_off:dual_off], dtype=object)
        try:
            w_algebra = validate_metric(NLieAlgebra(n, w, w_brackets), SymmetricForm(w_gram))
        except NotValidatedError as e:
            raise ExtractionError(f"transverse part is not a metric Lie {n}-algebra: {e}")

    action = {}
    for key in itertools.combinations(u_range, n - 1):
        mat = zeros(w, w)
        for j in range(w):
            mat[:, j] = t.basis_bracket(key + (w_off + j,))[w_off:dual_off]
        if not is_zero(mat):
            action[key] = Endomorphism(mat)
    phi = {}
    for key in itertools.combinations(range(w), n):
        value = t.basis_bracket(tuple(w_off + k for k in key))[dual_off:]
        if not is_zero(value):
            phi[key] = tuple(Fraction(x) for x in value)
    mixed_w, mixed_dual = {}, {}
    for k in range(1, n - 1):
        for ukey in itertools.combinations(u_range, k):
            for wkey in itertools.combinations(range(w), n - k):
                value = t.basis_bracket(ukey + tuple(w_off + x for x in wkey))
                if not is_zero(value[w_off:dual_off]):
                    mixed_w[(ukey, wkey)] = tuple(Fraction(x) for x in value[w_off:dual_off])
                if not is_zero(value[dual_off:]):
                    mixed_dual[(ukey, wkey)] = tuple(Fraction(x) for x in value[dual_off:])
    data = GeneralDoubleExtensionData(
        n=n, u=u_algebra, w=w_algebra, u_form=u_form,
        action=action, phi=phi, mixed_w=mixed_w, mixed_dual=mixed_dual,
    )
    try:
        rebuilt = double_extend_general(data)
    except ConstructionError as e:
        raise ExtractionError(f"extracted data does not rebuild a valid algebra: {e}")
    _compare(target, rebuilt)
    logger.debug("extracted double extension with dim U = %d, dim W = %d", r, w)
    return ExtractionResult(data, adapted, g, rebuilt)
