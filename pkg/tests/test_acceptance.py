"""
Corpus-level checks. Slow; deselect with -m "not slow".
"""

from collections import Counter
from fractions import Fraction

import pytest

from src.cli.document import AlgebraDocument, serialize
from src.cli.main import EXIT_OK, main
from src.constructions.builders import build_simple, sign_vectors
from src.constructions.corpus import (
    conjugate,
    euclidean_member,
    random_block_algebra,
    round_trip_data,
    standard_corpus,
)
from src.constructions.double_extension import double_extend_1d
from src.constructions.extraction import extract_double_extension
from src.core.derivations import is_semisimple
from src.core.validation import check_invariance, check_n_jacobi
from src.exact.forms import perp
from src.exact.matrix import unit_vector
from src.exact.subspace import Subspace
from src.structure.decomposition import (
    ONE_DIMENSIONAL,
    SIMPLE,
    classify_indecomposable,
    decompose,
    simplicity_fingerprint,
)
from src.structure.ideals import (
    brackets_vanish,
    center,
    derived_ideal,
    full_space,
    ideal_closure,
    is_ideal,
    quotient_algebra,
)
from src.structure.search import MinimalKind, classify_minimal, minimal_ideal_search
from src.utils.data_loader import example_path
from src.utils.random_source import SplitMix64

pytestmark = pytest.mark.slow

CORPUS = standard_corpus(0)
SEMISIMPLE_SUMS = {"sum-s-s", "sum-s-lorentz", "sum4-s-s", "sum-s-s-conj", "sum-s-lorentz-conj"}


def corpus_ids():
    return [entry.name for entry in CORPUS]


def sampled_signs(n):
    vectors = sign_vectors(n + 1)
    step = max(1, len(vectors) // 16)
    return vectors[::step][:16]


# ---------------------------------------------------------------- corpus

def test_corpus_is_large_and_deterministic():
    again = standard_corpus(0)
    assert len(CORPUS) >= 50
    assert [e.name for e in again] == corpus_ids()
    assert all(a.algebra == b.algebra for a, b in zip(CORPUS, again))
    assert len(set(corpus_ids())) == len(CORPUS)
    assert all(e.algebra.validated for e in CORPUS)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_simple_family_has_no_violations(n):
    signs_list = sign_vectors(n + 1) if n == 3 else sampled_signs(n)
    assert len(signs_list) == 16
    for signs in signs_list:
        m = build_simple(n, signs)
        assert check_n_jacobi(m.algebra).passed
        assert check_invariance(m).passed


# ---------------------------------------------------------------- ideals

@pytest.mark.parametrize("entry", CORPUS, ids=corpus_ids())
def test_derived_ideal_is_perp_of_centre(entry):
    m = entry.algebra
    assert derived_ideal(m.algebra) == perp(m.metric, center(m.algebra))


def ideals_to_check(m):
    a = m.algebra
    found = [ideal_closure(a, Subspace.span([unit_vector(m.dim, i)], m.dim)) for i in range(m.dim)]
    handle = minimal_ideal_search(m)
    if handle is not None:
        found.append(handle.space)
    return found


@pytest.mark.parametrize("entry", CORPUS, ids=corpus_ids())
def test_perp_of_an_ideal_is_an_ideal_annihilating_it(entry):
    m = entry.algebra
    a = m.algebra
    v = full_space(a)
    for ideal in ideals_to_check(m):
        ideal_perp = perp(m.metric, ideal)
        assert is_ideal(a, ideal_perp)
        assert brackets_vanish(a, [ideal_perp, ideal] + [v] * (a.n - 2))


@pytest.mark.parametrize("entry", CORPUS, ids=corpus_ids())
def test_minimal_ideal_quotient_is_a_line_or_simple(entry):
    m = entry.algebra
    handle = minimal_ideal_search(m)
    if handle is None:
        assert entry.kind == "simple" or m.dim == 1
        return
    kind = classify_minimal(m, handle)
    if kind is MinimalKind.NONDEGENERATE:
        assert handle.radical.is_zero()
    else:
        assert handle.space.is_subspace_of(handle.perp)
        assert handle.dim in (1, m.n + 1)
    q = quotient_algebra(m.algebra, handle.perp)
    assert q.dim in (1, m.n + 1)
    if q.dim == m.n + 1:
        assert simplicity_fingerprint(q).is_simple


# ---------------------------------------------------------------- double extensions

def test_every_round_trip_instance_is_recovered():
    data = round_trip_data()
    assert len(data) >= 20
    for d in data:
        m = double_extend_1d(d)
        line = Subspace.span([unit_vector(m.dim, m.dim - 1)], m.dim)
        found = extract_double_extension(m, line)
        assert found.data == d.model_copy(update={"uu_entry": Fraction(0)})
        assert found.rebuilt == m.transform(found.adapted)


def test_example_rebuilds_to_its_canonical_file(lorentzian5):
    found = extract_double_extension(lorentzian5, center(lorentzian5.algebra))
    text = serialize(AlgebraDocument.of(double_extend_1d(found.data)))
    assert text == example_path("lorentzian5.nlie").read_text()


def test_double_extension_adds_a_hyperbolic_plane():
    for d in round_trip_data():
        before = d.w_metric.signature()
        after = double_extend_1d(d).signature()
        assert tuple(x - y for x, y in zip(after, before)) == (1, 1, 0)


# ---------------------------------------------------------------- decomposition

def factor_profile(result):
    return Counter((f.dim, tuple(f.signature())) for f in result.factors)


@pytest.mark.parametrize("seed", range(10))
def test_decomposition_survives_isometries(seed):
    rng = SplitMix64(seed)
    m = random_block_algebra(rng)
    expected = factor_profile(decompose(m))
    assert sum(d * k for (d, _), k in expected.items()) == m.dim
    assert all(d in (1, m.n + 1) for d, _ in expected)
    assert sum(k for (d, _), k in expected.items() if d == 1) == center(m.algebra).dim
    for _ in range(5):
        assert factor_profile(decompose(conjugate(m, rng))) == expected


def test_euclidean_factors_are_lines_or_simple():
    rng = SplitMix64(2024)
    for _ in range(25):
        m = euclidean_member(rng)
        for factor in decompose(m).factors:
            kind = classify_indecomposable(factor)
            assert kind.tag in (ONE_DIMENSIONAL, SIMPLE)
            if kind.tag == SIMPLE:
                assert simplicity_fingerprint(factor.algebra).is_simple


@pytest.mark.parametrize("entry", CORPUS, ids=corpus_ids())
def test_semisimplicity_oracle(entry):
    m = entry.algebra
    if entry.kind == "simple" or entry.name in SEMISIMPLE_SUMS:
        assert is_semisimple(m.algebra)
    if not center(m.algebra).is_zero():
        assert not is_semisimple(m.algebra)


# ---------------------------------------------------------------- command line

def test_commands_are_deterministic(capsys, tmp_path, two_simples_and_line):
    sum_path = tmp_path / "sum.nlie"
    sum_path.write_text(serialize(AlgebraDocument.of(two_simples_and_line)))
    lorentzian = str(example_path("lorentzian5.nlie"))
    commands = [
        ["analyze", str(sum_path), "--seed", "3"],
        ["decompose", str(sum_path), "--seed", "3"],
        ["analyze", lorentzian, "--seed", "3", "--json"],
        ["extract", lorentzian, "--seed", "3"],
        ["construct", "dext1", "--data", str(example_path("cross_product.dext"))],
    ]
    for argv in commands:
        runs = []
        for _ in range(2):
            assert main(argv) == EXIT_OK
            runs.append(capsys.readouterr())
        assert runs[0].out == runs[1].out
        assert runs[0].err == runs[1].err
