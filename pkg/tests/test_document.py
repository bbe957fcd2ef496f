"""Text formats: nlie/1, dext1/1 and dextgen/1."""

import pytest

from src.cli.document import (
    AlgebraDocument,
    ExtensionDocument,
    parse,
    parse_algebra,
    parse_extension,
    serialize,
)
from src.constructions.builders import build_metric_coadjoint
from src.constructions.double_extension import double_extend_general, general_from_one_dim
from src.core.algebra import NLieAlgebra
from src.exact.matrix import identity
from src.utils.data_loader import example_path, load_algebra, load_document, read_text
from src.utils.errors import DocumentError

LORENTZIAN_TEXT = example_path("lorentzian5.nlie").read_text()
CROSS_TEXT = example_path("cross_product.dext").read_text()

GENERAL_TEXT = """\
format dextgen/1
n 3
udim 1
wdim 3
wmetric diag 1 1 1
phi 1 2 3 -> 1: -1
mixedw 1 | 1 2 -> 3: 1
mixedw 1 | 1 3 -> 2: -1
mixedw 1 | 2 3 -> 1: 1
"""

SIMPLE_HEADER = """\
format nlie/1
n 3
dim 4
basis e1 e2 e3 e4
"""


def error_line(text):
    with pytest.raises(DocumentError) as info:
        parse(text)
    return info.value.line


# ---------------------------------------------------------------- round trips

@pytest.mark.parametrize("text", [LORENTZIAN_TEXT, CROSS_TEXT, GENERAL_TEXT])
def test_canonical_text_is_reproduced(text):
    assert serialize(parse(text)) == text


def test_example_algebra_loads(lorentzian5):
    doc = load_algebra(example_path("lorentzian5.nlie"))
    assert doc.n == 3
    assert doc.dim == 5
    assert doc.basis_names == ("e1", "e2", "e3", "e4", "e5")
    assert doc.metric_algebra() == lorentzian5
    assert not doc.metric_algebra().validated


def test_serialized_double_extension_matches_example(lorentzian5):
    assert serialize(AlgebraDocument.of(lorentzian5)) == LORENTZIAN_TEXT


def test_serialize_simple(simple3):
    text = serialize(AlgebraDocument.of(simple3))
    lines = text.splitlines()
    assert "metric diag 1 1 1 1" in lines
    assert "bracket 1 2 3 -> 4: 1" in lines
    assert "bracket 2 3 4 -> 1: -1" in lines
    assert text.endswith("\n")


def test_general_text_matches_generated_data(cross_product_data, lorentzian5):
    doc = parse_extension(GENERAL_TEXT)
    assert doc.format_version == "dextgen/1"
    assert double_extend_general(doc.data) == lorentzian5
    assert serialize(ExtensionDocument.of(general_from_one_dim(cross_product_data))) == GENERAL_TEXT


def test_coadjoint_general_data_without_w(simple3):
    from src.constructions.double_extension import GeneralDoubleExtensionData

    data = GeneralDoubleExtensionData(n=3, u=simple3.algebra)
    text = serialize(ExtensionDocument.of(data))
    assert "wdim 0" in text.splitlines()
    assert "wmetric" not in text
    assert double_extend_general(parse_extension(text).data) == build_metric_coadjoint(simple3.algebra)


def test_adapted_basis_round_trip(cross_product_data):
    doc = ExtensionDocument.of(cross_product_data, identity(5))
    text = serialize(doc)
    assert text.startswith(CROSS_TEXT)
    assert text.splitlines()[-1] == "adapted 5 -> 5: 1"
    assert parse_extension(text).adapted == doc.adapted


def test_comments_and_blank_lines_are_skipped():
    text = "# a comment\n\n" + SIMPLE_HEADER + "  # indented comment\nbracket 1 2 3 -> 4: 1\n"
    doc = parse_algebra(text)
    assert doc.metric is None
    assert doc.algebra == NLieAlgebra(3, 4, {(0, 1, 2): [0, 0, 0, 1]})


def test_missing_metric_is_a_document_error():
    doc = parse_algebra(SIMPLE_HEADER)
    with pytest.raises(DocumentError):
        doc.metric_algebra()


def test_read_text_of_missing_file(tmp_path):
    with pytest.raises(DocumentError):
        read_text(tmp_path / "absent.nlie")
    with pytest.raises(DocumentError):
        load_document(tmp_path / "absent.nlie")


# ---------------------------------------------------------------- rejections

@pytest.mark.parametrize("text, line", [
    ("format nlie/2\n", 1),
    ("format nlie/1\nn 3\nbasis e1\n", 3),
    ("format nlie/1\nn 1\n", 2),
    (SIMPLE_HEADER + "bracket 1 2 3 -> 4: 0\n", 5),
    (SIMPLE_HEADER + "bracket 1 2 3 -> 4: 2/4\n", 5),
    (SIMPLE_HEADER + "bracket 1 2 5 -> 4: 1\n", 5),
    (SIMPLE_HEADER + "bracket 2 1 3 -> 4: 1\n", 5),
    (SIMPLE_HEADER + "bracket 1 2 3 -> 4: 1, 1: 1\n", 5),
    (SIMPLE_HEADER + "bracket 1 2 3 4 -> 4: 1\n", 5),
    (SIMPLE_HEADER + "bracket 1 2 3 4: 1\n", 5),
    (SIMPLE_HEADER + "bracket 2 3 4 -> 1: 1\nbracket 1 2 3 -> 4: 1\n", 6),
    (SIMPLE_HEADER + "bracket 1 2 3 -> 4: 1\nbracket 1 2 3 -> 4: 1\n", 6),
    (SIMPLE_HEADER + "bracket 1 2 3 -> 4: 1\nmetric diag 1 1 1 1\n", 6),
    (SIMPLE_HEADER + "metric diag 1 1 1\n", 5),
    (SIMPLE_HEADER + "colour blue\n", 5),
])
def test_malformed_documents_report_their_line(text, line):
    assert error_line(text) == line


def test_diagonal_form_written_as_rows_is_rejected():
    text = SIMPLE_HEADER + "metric rows\nrow 1 0 0 0\nrow 0 1 0 0\nrow 0 0 1 0\nrow 0 0 0 1\n"
    assert error_line(text) == 5


def test_asymmetric_rows_are_rejected():
    text = SIMPLE_HEADER + "metric rows\nrow 0 1 0 0\nrow 2 0 0 0\nrow 0 0 1 0\nrow 0 0 0 1\n"
    assert error_line(text) == 5


def test_degenerate_extension_metric_is_rejected():
    text = CROSS_TEXT.replace("metric diag 1 1 1", "metric diag 1 0 1")
    assert error_line(text) == 1


def test_duplicate_basis_names_are_rejected():
    assert error_line(SIMPLE_HEADER.replace("e4", "e1")) == 4


def test_error_reports_column():
    with pytest.raises(DocumentError) as info:
        parse(SIMPLE_HEADER + "bracket 1 2 9 -> 4: 1\n")
    assert info.value.column == 13
    assert str(info.value).startswith("5:13:")


def test_kind_mismatch_is_rejected():
    with pytest.raises(DocumentError):
        parse_algebra(CROSS_TEXT)
    with pytest.raises(DocumentError):
        parse_extension(LORENTZIAN_TEXT)
