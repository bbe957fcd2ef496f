"""Structure tensors, identity checks and derivations."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.constructions.builders import build_abelian, build_simple
from src.core.algebra import (
    Endomorphism,
    LieAlgebraPresentation,
    MetricNLieAlgebra,
    NLieAlgebra,
    StructureTensor,
    is_homomorphism,
    permutation_sign,
)
from src.core.derivations import (
    derivation_space,
    has_only_inner_derivations,
    inner_derivation,
    inner_derivation_algebra,
    is_derivation,
    is_reductive,
    is_semisimple,
    killing_form,
)
from src.core.validation import (
    INVARIANCE,
    JACOBI,
    check_invariance,
    check_n_jacobi,
    inner_derivations_skew,
    require_validated,
    revalidate,
    validate_metric,
    validation_report,
)
from src.exact.forms import Signature, SymmetricForm, random_isometry
from src.exact.matrix import identity, to_matrix, unit_vector
from src.utils.errors import (
    ArityMismatchError,
    DegenerateFormError,
    DimensionMismatchError,
    NotValidatedError,
)
from src.utils.random_source import SplitMix64
from strategies import vectors

E = [unit_vector(4, i) for i in range(4)]


def so3() -> LieAlgebraPresentation:
    return LieAlgebraPresentation(3, {(0, 1): [0, 0, 1], (1, 2): [1, 0, 0], (0, 2): [0, -1, 0]})


def broken_lie() -> NLieAlgebra:
    # [e1 e2] = e1, [e1 e3] = e2 fails Jacobi on (e1, e2, e3)
    return NLieAlgebra(2, 3, {(0, 1): [1, 0, 0], (0, 2): [0, 1, 0]})


# ---------------------------------------------------------------- tensor model

@pytest.mark.parametrize("indices, expected", [
    ((0, 1, 2), (1, (0, 1, 2))),
    ((1, 0, 2), (-1, (0, 1, 2))),
    ((2, 0, 1), (1, (0, 1, 2))),
    ((2, 1, 0), (-1, (0, 1, 2))),
    ((1, 1, 0), (0, (0, 1, 1))),
])
def test_permutation_sign(indices, expected):
    assert permutation_sign(indices) == expected


def test_brackets_are_normalised_by_sign():
    a = NLieAlgebra(3, 4, {(1, 0, 2): [0, 0, 0, 1]})
    assert a.support() == [(0, 1, 2)]
    assert list(a.basis_bracket((0, 1, 2))) == [0, 0, 0, -1]
    assert list(a.basis_bracket((2, 1, 0))) == [0, 0, 0, 1]
    assert a.basis_bracket((0, 0, 1)).tolist() == [0, 0, 0, 0]


def test_conflicting_tuple_values_raise():
    with pytest.raises(DimensionMismatchError):
        NLieAlgebra(2, 2, {(0, 1): [1, 0], (1, 0): [1, 0]})


@pytest.mark.parametrize("brackets", [
    {(0, 0): [1, 0]},
    {(0, 2): [1, 0]},
    {(0, 1): [1, 0, 0]},
])
def test_malformed_brackets_raise(brackets):
    with pytest.raises(DimensionMismatchError):
        NLieAlgebra(2, 2, brackets)


def test_arity_rules():
    with pytest.raises(ArityMismatchError):
        NLieAlgebra(1, 3)
    with pytest.raises(ArityMismatchError):
        NLieAlgebra(3, 4, {(0, 1): [1, 0, 0, 0]})
    lower = StructureTensor(1, 2, {(0,): [0, 1]})
    assert lower.arity == 1
    assert list(lower.bracket(unit_vector(2, 0))) == [0, 1]


def test_zero_brackets_are_not_stored():
    a = NLieAlgebra(2, 2, {(0, 1): [0, 0]})
    assert a.is_zero()
    assert a == NLieAlgebra(2, 2)


@settings(max_examples=30, deadline=None)
@given(vectors(4), vectors(4), vectors(4))
def test_bracket_is_alternating(x, y, z):
    a = build_simple(3, [1, 1, 1, 1]).algebra
    assert np.array_equal(a.bracket(x, y, z), -a.bracket(y, x, z))
    assert np.array_equal(a.bracket(x, y, z), a.bracket(y, z, x))
    assert not any(a.bracket(x, x, z))


def test_ad_matrix_agrees_with_bracket(simple3):
    a = simple3.algebra
    ad = a.ad(E[0], E[1])
    for k in range(4):
        assert np.array_equal(ad[:, k], a.bracket(E[0], E[1], E[k]))


def test_ad_matrix_memo_is_read_only_and_invisible_to_equality():
    warm = build_simple(3, [1, 1, 1, 1]).algebra
    cold = build_simple(3, [1, 1, 1, 1]).algebra
    first = warm.ad_matrix((0, 1))
    assert warm.ad_matrix((0, 1)) is first
    with pytest.raises(ValueError):
        first[0, 0] = Fraction(1)
    assert warm == cold
    assert hash(warm) == hash(cold)
    assert np.array_equal(cold.ad_matrix((0, 1)), first)


def test_transform_by_identity_is_identity(simple3):
    assert simple3.transform(identity(4)) == simple3


def test_metric_must_be_nondegenerate():
    with pytest.raises(DegenerateFormError):
        MetricNLieAlgebra(NLieAlgebra(3, 2), SymmetricForm.diagonal([1, 0]))
    with pytest.raises(DimensionMismatchError):
        MetricNLieAlgebra(NLieAlgebra(3, 2), SymmetricForm.diagonal([1, 1, 1]))


def test_homomorphism_check(simple3):
    a = simple3.algebra
    assert is_homomorphism(a, a, identity(4))
    assert not is_homomorphism(a, a, 2 * identity(4))


def test_endomorphism_commutator_and_trace():
    x = Endomorphism(to_matrix([[0, 1], [0, 0]]))
    y = Endomorphism(to_matrix([[0, 0], [1, 0]]))
    h = x.commutator(y)
    assert h == Endomorphism(to_matrix([[1, 0], [0, -1]]))
    assert h.trace() == 0
    assert x.compose(x).is_zero()


# ---------------------------------------------------------------- validation

@pytest.mark.parametrize("signs", [[1, 1, 1, 1], [1, 1, 1, -1], [1, -1, 1, -1], [-1, -1, -1, -1]])
def test_simple_algebras_validate(signs):
    m = build_simple(3, signs)
    assert m.validated
    assert validation_report(m.algebra, m.metric).passed


def test_broken_jacobi_is_reported():
    report = check_n_jacobi(broken_lie())
    assert not report.passed
    assert report.labels() == [JACOBI]
    assert report.checked == 3 * 3
    assert all(line.startswith("n-Jacobi: x=(") for line in report.lines())


def test_parallel_check_matches_serial():
    serial = check_n_jacobi(broken_lie(), jobs=1)
    parallel = check_n_jacobi(broken_lie(), jobs=2)
    assert serial == parallel


def test_wrong_metric_fails_invariance(simple3):
    with pytest.raises(NotValidatedError) as info:
        validate_metric(simple3.algebra, SymmetricForm.diagonal([1, 1, 1, 2]))
    assert info.value.report.labels() == [INVARIANCE]


def test_check_invariance_of_valid_algebra(lorentzian5):
    assert check_invariance(lorentzian5).passed
    assert inner_derivations_skew(lorentzian5)


def test_unvalidated_algebra_is_refused(simple3):
    raw = MetricNLieAlgebra(simple3.algebra, simple3.metric)
    assert not raw.validated
    with pytest.raises(NotValidatedError):
        require_validated(raw)
    assert revalidate(raw).validated


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_isometric_change_of_basis_keeps_identities(lorentz_simple3, seed):
    p = random_isometry(lorentz_simple3.metric, SplitMix64(seed))
    moved = lorentz_simple3.transform(p)
    assert moved.metric == lorentz_simple3.metric
    assert revalidate(moved).validated


# ---------------------------------------------------------------- derivations

def test_inner_derivations_of_simple_algebra_form_so4(simple3):
    ad_v = inner_derivation_algebra(simple3.algebra)
    assert ad_v.dim == 6
    assert is_reductive(simple3.algebra)
    assert is_semisimple(simple3.algebra)


def test_killing_form_of_so3_is_definite():
    assert killing_form(so3()).signature() == Signature(0, 3, 0)
    assert is_semisimple(so3())


def test_every_inner_derivation_is_a_derivation(simple3):
    a = simple3.algebra
    assert is_derivation(a, inner_derivation(a, E[0], E[2]))
    assert not is_derivation(a, Endomorphism(identity(4)))


def test_simple_algebra_has_only_inner_derivations(simple3):
    assert derivation_space(simple3.algebra).dim == 6
    assert has_only_inner_derivations(simple3.algebra)


def test_abelian_algebra_is_not_semisimple():
    a = build_abelian(3, SymmetricForm.diagonal([1, -1])).algebra
    assert not is_semisimple(a)
    assert derivation_space(a).dim == 4


def test_zero_algebra_counts_as_semisimple():
    assert is_semisimple(NLieAlgebra(3, 0))


def test_lorentzian_double_extension_is_not_semisimple(lorentzian5):
    assert not is_semisimple(lorentzian5.algebra)


@settings(max_examples=10, deadline=None)
@given(st.integers(min_value=3, max_value=4), st.data())
def test_simple_family_is_semisimple(n, data):
    signs = data.draw(st.lists(st.sampled_from([1, -1]), min_size=n + 1, max_size=n + 1))
    m = build_simple(n, signs)
    assert m.signature().p == signs.count(1)
    assert is_semisimple(m.algebra)
    assert inner_derivation_algebra(m.algebra).dim == (n + 1) * n // 2


def test_scalar_bracket_values_are_fractions(simple3):
    _, value = next(simple3.algebra.items())
    assert all(isinstance(x, Fraction) for x in value)
