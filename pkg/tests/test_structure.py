"""Ideals, minimal ideal search and orthogonal decomposition."""

import pytest

from src.constructions.builders import (
    build_abelian,
    build_metric_coadjoint,
    build_simple,
    coadjoint_pairing_metric,
    direct_sum,
)
from src.constructions.corpus import conjugate
from src.constructions.double_extension import double_extend_1d
from src.exact.forms import Signature, SymmetricForm, perp
from src.exact.matrix import to_matrix, unit_vector
from src.exact.subspace import Subspace
from src.structure.decomposition import (
    DOUBLE_EXTENSION,
    ONE_DIMENSIONAL,
    SIMPLE,
    classify_indecomposable,
    decompose,
    find_nondegenerate_ideal,
    is_maximal_ideal,
    simplicity_fingerprint,
    subquotient,
    subquotient_metric,
)
from src.structure.ideals import (
    IdealHandle,
    bracket_span,
    center,
    centralizer,
    derived_ideal,
    derived_series,
    ideal_closure,
    is_ideal,
    is_perfect,
    is_solvable,
    is_subalgebra,
    quotient_algebra,
)
from src.structure.search import (
    MinimalKind,
    classify_minimal,
    minimal_ideal_search,
    primary_components,
)
from src.utils.errors import NotAnIdealError, NotCoisotropicError, NotIndecomposableError
from src.utils.random_source import SplitMix64


def span(dim, *indices):
    return Subspace.span([unit_vector(dim, i) for i in indices], dim)


# ---------------------------------------------------------------- ideals

def test_simple_algebra_is_perfect_and_centreless(simple3):
    a = simple3.algebra
    assert center(a).is_zero()
    assert is_perfect(a)
    assert not is_solvable(a)
    assert [s.dim for s in derived_series(a)] == [4]


def test_lorentzian_structure(lorentzian5):
    a = lorentzian5.algebra
    assert center(a) == span(5, 4)
    assert derived_ideal(a) == span(5, 1, 2, 3, 4)
    assert [s.dim for s in derived_series(a)] == [5, 4, 1, 0]
    assert is_solvable(a)


def test_derived_ideal_is_perp_of_centre(lorentzian5, two_simples_and_line):
    for m in (lorentzian5, two_simples_and_line):
        assert derived_ideal(m.algebra) == perp(m.metric, center(m.algebra))


def test_ideal_closure_of_a_transverse_vector(lorentzian5):
    a = lorentzian5.algebra
    closure = ideal_closure(a, span(5, 1))
    assert closure == span(5, 1, 2, 3, 4)
    assert is_ideal(a, closure)
    assert ideal_closure(a, span(5, 0)).is_full()


def test_bracket_span_of_subspaces(lorentzian5):
    a = lorentzian5.algebra
    w = span(5, 1, 2, 3)
    assert bracket_span(a, [w, w, w]) == span(5, 4)
    assert not is_ideal(a, w)
    assert is_subalgebra(a, span(5, 1, 2, 3, 4))


def test_centralizer_of_centre_is_everything(lorentzian5):
    a = lorentzian5.algebra
    assert centralizer(a, center(a)).is_full()
    with pytest.raises(NotAnIdealError):
        centralizer(a, span(5, 1))


def test_centralizer_of_one_summand_contains_the_other(two_simples):
    first, second = span(8, 0, 1, 2, 3), span(8, 4, 5, 6, 7)
    assert second.is_subspace_of(centralizer(two_simples.algebra, first))
    assert first.is_subspace_of(centralizer(two_simples.algebra, second))


def test_quotient_by_centre(lorentzian5):
    q = quotient_algebra(lorentzian5.algebra, center(lorentzian5.algebra))
    assert q.dim == 4
    assert q.n == 3
    assert center(q).is_zero()
    assert derived_ideal(q) == span(4, 1, 2, 3)


def test_ideal_handle_properties(lorentzian5):
    z = IdealHandle(lorentzian5, center(lorentzian5.algebra))
    assert z.is_ideal
    assert z.is_isotropic
    assert not z.is_nondegenerate
    assert not z.is_coisotropic
    assert z.perp == span(5, 1, 2, 3, 4)
    assert z.radical == z.space
    assert z.is_proper()


def test_subquotient_of_perp_of_centre(lorentzian5):
    z_perp = perp(lorentzian5.metric, center(lorentzian5.algebra))
    transverse, reps = subquotient(lorentzian5, z_perp)
    assert transverse.dim == 3
    assert transverse.signature() == Signature(3, 0, 0)
    assert transverse.algebra.is_zero()
    assert reps.shape == (3, 5)
    with pytest.raises(NotCoisotropicError):
        subquotient(lorentzian5, center(lorentzian5.algebra))


def test_maximal_ideal(lorentzian5):
    a = lorentzian5.algebra
    assert is_maximal_ideal(a, span(5, 1, 2, 3, 4))
    assert not is_maximal_ideal(a, center(a))


# ---------------------------------------------------------------- search

def test_primary_components_of_diagonal_matrix():
    x = to_matrix([[1, 0, 0], [0, 1, 0], [0, 0, 2]])
    components = primary_components(x)
    assert span(3, 0, 1) in components
    assert span(3, 2) in components


def test_primary_components_see_nilpotent_part():
    x = to_matrix([[3, 1], [0, 3]])
    assert span(2, 0) in primary_components(x)


def test_simple_algebra_has_no_proper_ideal(simple3):
    assert minimal_ideal_search(simple3) is None
    assert simplicity_fingerprint(simple3.algebra).is_simple


def test_minimal_ideal_of_lorentzian(lorentzian5):
    handle = minimal_ideal_search(lorentzian5)
    assert handle.space == span(5, 4)
    assert classify_minimal(lorentzian5, handle) is MinimalKind.ISOTROPIC


def test_minimal_ideal_of_sum_is_nondegenerate(two_simples):
    handle = minimal_ideal_search(two_simples)
    assert handle.dim == 4
    assert classify_minimal(two_simples, handle) is MinimalKind.NONDEGENERATE


# ---------------------------------------------------------------- decomposition

def test_decompose_sum_of_simples_and_line(two_simples_and_line):
    result = decompose(two_simples_and_line)
    assert result.dims() == [4, 4, 1]
    assert [str(s) for s in result.signatures()] == ["(4,0,0)", "(4,0,0)", "(1,0,0)"]
    assert all(f.validated for f in result.factors)
    assert len(result.certificates) == 2


def test_decompose_is_seed_independent_in_shape(two_simples_and_line):
    assert decompose(two_simples_and_line, seed=0).dims() == decompose(two_simples_and_line, seed=9).dims()


def test_decomposition_embeddings_are_orthogonal(two_simples):
    result = decompose(two_simples)
    first, second = result.embeddings
    g = two_simples.metric
    assert all(g.pair(x, y) == 0 for x in first for y in second)


def test_decompose_conjugated_sum(two_simples_and_line, conjugated):
    moved = conjugated(two_simples_and_line)
    assert decompose(moved).dims() == [4, 4, 1]


def test_conjugated_sum_splits_without_random_probes(two_simples, conjugated, monkeypatch):
    def refuse(*args, **kwargs):
        raise AssertionError("random closures should not be needed")

    monkeypatch.setattr("src.structure.decomposition.add_probe_candidates", refuse)
    j = find_nondegenerate_ideal(conjugated(two_simples), 0)
    assert j is not None
    assert j.dim == 4


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 1])
def test_conjugated_simple_plus_double_extension(simple3, so3_data, seed):
    m = conjugate(direct_sum(simple3, double_extend_1d(so3_data)), SplitMix64(seed))
    result = decompose(m)
    assert result.dims() == [5, 4]
    assert len(result.certificates) == 1


def test_abelian_algebra_splits_into_lines():
    m = build_abelian(3, SymmetricForm(to_matrix([[0, 1], [1, 0]])))
    result = decompose(m)
    assert result.dims() == [1, 1]
    assert sorted(tuple(s) for s in result.signatures()) == [(0, 1, 0), (1, 0, 0)]


def test_indecomposable_kinds(simple3, line, lorentzian5):
    assert classify_indecomposable(simple3).tag == SIMPLE
    assert classify_indecomposable(line).tag == ONE_DIMENSIONAL
    kind = classify_indecomposable(lorentzian5)
    assert kind.tag == DOUBLE_EXTENSION
    assert kind.ideal_dim == 1
    assert kind.quotient.dim == 1
    assert kind.transverse.signature() == Signature(3, 0, 0)


def test_decomposable_input_is_refused(two_simples):
    assert find_nondegenerate_ideal(two_simples, 0) is not None
    with pytest.raises(NotIndecomposableError):
        classify_indecomposable(two_simples)


def test_metric_coadjoint_is_indecomposable(simple3):
    m = build_metric_coadjoint(simple3.algebra)
    assert decompose(m).dims() == [8]
    kind = classify_indecomposable(m)
    assert kind.tag == DOUBLE_EXTENSION
    assert kind.ideal_dim == 4
    assert kind.ideal == span(8, 4, 5, 6, 7)
    assert kind.fingerprint.is_simple


def test_conjugated_metric_coadjoint_still_found(simple3, conjugated):
    m = conjugated(build_metric_coadjoint(simple3.algebra))
    kind = classify_indecomposable(m)
    assert kind.tag == DOUBLE_EXTENSION
    assert kind.ideal_dim == 4


def test_lorentzian_simple_is_simple():
    m = build_simple(3, [1, -1, 1, -1])
    assert classify_indecomposable(m).tag == SIMPLE
    assert decompose(m).dims() == [4]


def test_subquotient_metric_is_validated(lorentzian5):
    z_perp = perp(lorentzian5.metric, center(lorentzian5.algebra))
    w = subquotient_metric(lorentzian5, z_perp)
    assert w.validated
    assert w.dim == 3
    assert w.metric == SymmetricForm.diagonal([1, 1, 1])


def test_subquotient_of_simple_plus_null_line_is_simple(simple3):
    m = direct_sum(simple3, build_abelian(3, coadjoint_pairing_metric(1)))
    q = subquotient_metric(m, span(6, 0, 1, 2, 3, 4))
    assert q.dim == m.n + 1
    assert q.signature() == Signature(4, 0, 0)
    assert simplicity_fingerprint(q.algebra).is_simple
