"""
Plain-text documents for algebras and double-extension data.

Three formats share one line grammar: header lines `key value ...` in a
fixed order, then tensor records

    key a_1 ... a_k [| b_1 ... b_m] -> t: c[, t: c]*

with 1-based indices. '#' starts a comment line. serialize always writes
the canonical form and parse rejects anything serialize would not write
(record order, zero or non-reduced coefficients, a rows block for a
diagonal form), so parse(serialize(x)) == x.
"""

import re
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError, model_validator

from src.constructions.double_extension import GeneralDoubleExtensionData, OneDimDoubleExtensionData
from src.core.algebra import Endomorphism, MetricNLieAlgebra, NLieAlgebra, StructureTensor
from src.exact.forms import SymmetricForm
from src.exact.matrix import to_matrix, zero_vector, zeros
from src.exact.rational import format_rational, parse_rational
from src.utils.errors import DocumentError, NLieError

ALGEBRA_FORMAT = "nlie/1"
ONE_DIM_FORMAT = "dext1/1"
GENERAL_FORMAT = "dextgen/1"

_INDEX = re.compile(r"^[1-9][0-9]*$")
_NAME = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")
_TERM = re.compile(r"^\s*([1-9][0-9]*):\s*(\S+)\s*$")

Key = Tuple[Tuple[int, ...], ...]
Terms = Tuple[Tuple[int, Fraction], ...]


# ---------------------------------------------------------------- documents

class AlgebraDocument(BaseModel):
    """A Lie n-algebra with optional metric and basis names (format nlie/1)."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    algebra: NLieAlgebra
    metric: Optional[SymmetricForm] = None
    basis_names: Tuple[str, ...] = ()

    @model_validator(mode="after")
    def _check(self) -> "AlgebraDocument":
        d = self.algebra.dim
        if self.metric is not None and self.metric.dim != d:
            raise ValueError(f"metric has dimension {self.metric.dim}, algebra has {d}")
        if len(self.basis_names) != d:
            raise ValueError(f"{len(self.basis_names)} basis names for dimension {d}")
        if len(set(self.basis_names)) != d:
            raise ValueError("basis names must be distinct")
        return self

    @property
    def format_version(self) -> str:
        return ALGEBRA_FORMAT

    @property
    def n(self) -> int:
        return self.algebra.n

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @classmethod
    def of(cls, algebra: Union[NLieAlgebra, MetricNLieAlgebra], names: Optional[Sequence[str]] = None) -> "AlgebraDocument":
        metric = None
        if isinstance(algebra, MetricNLieAlgebra):
            algebra, metric = algebra.algebra, algebra.metric
        names = tuple(names) if names is not None else default_names(algebra.dim)
        return cls(algebra=algebra, metric=metric, basis_names=names)

    def metric_algebra(self) -> MetricNLieAlgebra:
        """Unvalidated metric algebra; a missing metric is a document error."""
        if self.metric is None:
            raise DocumentError("document has no metric")
        return MetricNLieAlgebra(self.algebra, self.metric)


class ExtensionDocument(BaseModel):
    """
    Double-extension data (dext1/1 or dextgen/1), optionally with the adapted
    change-of-basis matrix; adapted holds its rows.
    """

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    data: Union[OneDimDoubleExtensionData, GeneralDoubleExtensionData]
    adapted: Optional[Tuple[Tuple[Fraction, ...], ...]] = None

    @property
    def format_version(self) -> str:
        return ONE_DIM_FORMAT if isinstance(self.data, OneDimDoubleExtensionData) else GENERAL_FORMAT

    @property
    def total_dim(self) -> int:
        if isinstance(self.data, OneDimDoubleExtensionData):
            return self.data.w_dim + 2
        return 2 * self.data.u_dim + self.data.w_dim

    @model_validator(mode="after")
    def _check(self) -> "ExtensionDocument":
        if self.adapted is not None:
            d = self.total_dim
            if len(self.adapted) != d or any(len(row) != d for row in self.adapted):
                raise ValueError(f"adapted basis must be {d} x {d}")
        return self

    @classmethod
    def of(cls, data, adapted: Optional[np.ndarray] = None) -> "ExtensionDocument":
        rows = None
        if adapted is not None:
            rows = tuple(tuple(Fraction(x) for x in row) for row in adapted)
        return cls(data=data, adapted=rows)

    def adapted_matrix(self) -> Optional[np.ndarray]:
        return None if self.adapted is None else to_matrix(self.adapted)


Document = Union[AlgebraDocument, ExtensionDocument]


def default_names(dim: int) -> Tuple[str, ...]:
    return tuple(f"e{i + 1}" for i in range(dim))


# ---------------------------------------------------------------- reading

class _Line(NamedTuple):
    number: int
    keyword: str
    rest: str
    rest_col: int


def _fail(line: _Line, message: str, col: Optional[int] = None) -> DocumentError:
    return DocumentError(message, line.number, col or 1)


class _Reader:
    """Non-comment lines of a document, consumed in order."""

    def __init__(self, text: str):
        self.lines: List[_Line] = []
        self.last = 0
        for number, raw in enumerate(text.splitlines(), start=1):
            self.last = number
            stripped = raw.strip()
            if not stripped or stripped.startswith("#"):
                continue
            lead = len(raw) - len(raw.lstrip())
            keyword = stripped.split()[0]
            start = lead + len(keyword)
            self.lines.append(_Line(number, keyword, raw[start:].rstrip(), start + 1))
        self.pos = 0

    def peek(self) -> Optional[_Line]:
        return self.lines[self.pos] if self.pos < len(self.lines) else None

    def expect(self, keyword: str) -> _Line:
        line = self.peek()
        if line is None:
            raise DocumentError(f"expected '{keyword}' before end of document", self.last + 1, 1)
        if line.keyword != keyword:
            raise _fail(line, f"expected '{keyword}', found '{line.keyword}'")
        self.pos += 1
        return line

    def optional(self, keyword: str) -> Optional[_Line]:
        line = self.peek()
        if line is not None and line.keyword == keyword:
            self.pos += 1
            return line
        return None

    def take_all(self, keyword: str) -> List[_Line]:
        out = []
        while self.optional(keyword) is not None:
            out.append(self.lines[self.pos - 1])
        return out

    def finish(self) -> None:
        line = self.peek()
        if line is not None:
            raise _fail(line, f"unexpected '{line.keyword}' (unknown key or out of order)")


def _tokens(line: _Line, text: Optional[str] = None, offset: int = 0) -> List[Tuple[str, int]]:
    text = line.rest if text is None else text
    return [(m.group(0), line.rest_col + offset + m.start()) for m in re.finditer(r"\S+", text)]


def _single(line: _Line) -> Tuple[str, int]:
    tokens = _tokens(line)
    if len(tokens) != 1:
        raise _fail(line, f"'{line.keyword}' takes exactly one value", line.rest_col)
    return tokens[0]


def _integer(line: _Line, minimum: int) -> int:
    token, col = _single(line)
    if not re.match(r"^(0|[1-9][0-9]*)$", token):
        raise _fail(line, f"'{line.keyword}' must be a non-negative integer", col)
    value = int(token)
    if value < minimum:
        raise _fail(line, f"'{line.keyword}' must be at least {minimum}", col)
    return value


def _rational(line: _Line, token: str, col: int) -> Fraction:
    try:
        return parse_rational(token)
    except ValueError as e:
        raise _fail(line, str(e), col)


def _scalars(line: _Line, tokens: List[Tuple[str, int]], count: int) -> List[Fraction]:
    if len(tokens) != count:
        raise _fail(line, f"expected {count} entries, found {len(tokens)}", line.rest_col)
    return [_rational(line, t, c) for t, c in tokens]


def _read_form(reader: _Reader, keyword: str, dim: int) -> SymmetricForm:
    """`keyword diag a_1 ... a_d` or `keyword rows` followed by d `row` lines."""
    line = reader.expect(keyword)
    tokens = _tokens(line)
    if not tokens or tokens[0][0] not in ("diag", "rows"):
        raise _fail(line, f"'{keyword}' must be followed by 'diag' or 'rows'", line.rest_col)
    if tokens[0][0] == "diag":
        return SymmetricForm.diagonal(_scalars(line, tokens[1:], dim))
    if len(tokens) != 1:
        raise _fail(line, f"'{keyword} rows' takes no values", tokens[1][1])
    rows = []
    for _ in range(dim):
        row = reader.expect("row")
        rows.append(_scalars(row, _tokens(row), dim))
    try:
        form = SymmetricForm(rows)
    except NLieError as e:
        raise _fail(line, f"{keyword}: {e}")
    if form.is_diagonal():
        raise _fail(line, f"a diagonal {keyword} must be written as '{keyword} diag'")
    return form


def _index_group(line: _Line, tokens: List[Tuple[str, int]], length: Optional[int], bound: int) -> Tuple[int, ...]:
    if not tokens:
        raise _fail(line, "empty index group", line.rest_col)
    if length is not None and len(tokens) != length:
        raise _fail(line, f"expected {length} indices, found {len(tokens)}", tokens[0][1])
    out = []
    for token, col in tokens:
        if not _INDEX.match(token):
            raise _fail(line, f"malformed index {token!r}", col)
        i = int(token)
        if i > bound:
            raise _fail(line, f"index {i} is out of range 1..{bound}", col)
        if out and i - 1 <= out[-1]:
            raise _fail(line, "indices must be strictly increasing", col)
        out.append(i - 1)
    return tuple(out)


def _read_record(line: _Line, groups: Sequence[Tuple[Optional[int], int]], target: int) -> Tuple[Key, Terms]:
    arrow = line.rest.find("->")
    if arrow < 0:
        raise _fail(line, "missing '->'", line.rest_col + len(line.rest))
    lhs = _tokens(line, line.rest[:arrow])
    parts: List[List[Tuple[str, int]]] = [[]]
    for token, col in lhs:
        if token == "|":
            parts.append([])
        else:
            parts[-1].append((token, col))
    if len(parts) != len(groups):
        raise _fail(line, f"expected {len(groups)} index group(s) separated by '|'", line.rest_col)
    key = tuple(_index_group(line, p, length, bound) for p, (length, bound) in zip(parts, groups))
    terms = []
    offset = arrow + 2
    for piece in line.rest[offset:].split(","):
        base = line.rest_col + offset
        col = base + len(piece) - len(piece.lstrip())
        match = _TERM.match(piece)
        if match is None:
            raise _fail(line, "expected 'target: coefficient'", col)
        t = int(match.group(1))
        if t > target:
            raise _fail(line, f"target {t} is out of range 1..{target}", col)
        if terms and t - 1 <= terms[-1][0]:
            raise _fail(line, "targets must be strictly increasing", col)
        c = _rational(line, match.group(2), base + match.start(2))
        if c == 0:
            raise _fail(line, "zero coefficients are omitted in canonical form", base + match.start(2))
        terms.append((t - 1, c))
        offset += len(piece) + 1
    return key, tuple(terms)


def _read_records(reader: _Reader, keyword: str, groups, target: int) -> List[Tuple[Key, Terms]]:
    out: List[Tuple[Key, Terms]] = []
    for line in reader.take_all(keyword):
        key, terms = _read_record(line, groups, target)
        if out and key <= out[-1][0]:
            what = "duplicate" if key == out[-1][0] else "out-of-order"
            raise _fail(line, f"{what} '{keyword}' record")
        out.append((key, terms))
    return out


def _vector(terms: Terms, dim: int) -> np.ndarray:
    v = zero_vector(dim)
    for t, c in terms:
        v[t] = c
    return v


def _tensor(records, arity: int, dim: int, cls=StructureTensor):
    brackets = {key[0]: _vector(terms, dim) for key, terms in records}
    if cls is NLieAlgebra:
        return NLieAlgebra(arity, dim, brackets)
    return StructureTensor(arity, dim, brackets)


def _read_format(reader: _Reader) -> Tuple[_Line, str]:
    line = reader.expect("format")
    token, col = _single(line)
    if token not in (ALGEBRA_FORMAT, ONE_DIM_FORMAT, GENERAL_FORMAT):
        raise _fail(line, f"unknown format {token!r}", col)
    return line, token


def _read_adapted(reader: _Reader, dim: int) -> Optional[Tuple[Tuple[Fraction, ...], ...]]:
    records = _read_records(reader, "adapted", [(1, dim)], dim)
    if not records:
        return None
    if len(records) != dim:
        line = reader.lines[reader.pos - 1]
        raise _fail(line, f"adapted basis needs all {dim} columns, found {len(records)}")
    p = zeros(dim, dim)
    for key, terms in records:
        p[:, key[0][0]] = _vector(terms, dim)
    return tuple(tuple(Fraction(x) for x in row) for row in p)


def _guard(line: _Line, build):
    try:
        return build()
    except DocumentError:
        raise
    except ValidationError as e:
        raise _fail(line, e.errors()[0]["msg"])
    except NLieError as e:
        raise _fail(line, str(e))


def _parse_algebra(reader: _Reader, head: _Line) -> AlgebraDocument:
    n = _integer(reader.expect("n"), 2)
    dim = _integer(reader.expect("dim"), 1)
    basis_line = reader.expect("basis")
    names = _tokens(basis_line)
    if len(names) != dim:
        raise _fail(basis_line, f"expected {dim} basis names, found {len(names)}", basis_line.rest_col)
    seen = set()
    for name, col in names:
        if not _NAME.match(name) or name in seen:
            raise _fail(basis_line, f"invalid or repeated basis name {name!r}", col)
        seen.add(name)
    metric = None
    if reader.peek() is not None and reader.peek().keyword == "metric":
        metric = _read_form(reader, "metric", dim)
    records = _read_records(reader, "bracket", [(n, dim)], dim)
    reader.finish()
    algebra = _guard(head, lambda: _tensor(records, n, dim, NLieAlgebra))
    return AlgebraDocument(algebra=algebra, metric=metric, basis_names=tuple(name for name, _ in names))


def _parse_one_dim(reader: _Reader, head: _Line) -> ExtensionDocument:
    n = _integer(reader.expect("n"), 2)
    w = _integer(reader.expect("wdim"), 1)
    uu_line = reader.expect("uu")
    uu = _rational(uu_line, *_single(uu_line))
    metric = _read_form(reader, "metric", w)
    lower = _read_records(reader, "lower", [(n - 1, w)], w)
    upper = _read_records(reader, "wbracket", [(n, w)], w)
    adapted = _read_adapted(reader, w + 2)
    reader.finish()
    data = _guard(head, lambda: OneDimDoubleExtensionData(
        n=n, w_metric=metric,
        n_bracket_w=_tensor(upper, n, w),
        lower_bracket=_tensor(lower, n - 1, w),
        uu_entry=uu,
    ))
    return ExtensionDocument(data=data, adapted=adapted)


def _coefficients(terms: Terms, dim: int) -> Tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in _vector(terms, dim))


def _parse_general(reader: _Reader, head: _Line) -> ExtensionDocument:
    n = _integer(reader.expect("n"), 2)
    r = _integer(reader.expect("udim"), 1)
    w = _integer(reader.expect("wdim"), 0)
    u_form = None
    if reader.peek() is not None and reader.peek().keyword == "uform":
        u_form = _read_form(reader, "uform", r)
    w_metric = _read_form(reader, "wmetric", w) if w else None
    u_records = _read_records(reader, "ubracket", [(n, r)], r)
    action_records = _read_records(reader, "action", [(n - 1, r), (1, w)], w)
    w_records = _read_records(reader, "wbracket", [(n, w)], w)
    phi_records = _read_records(reader, "phi", [(n, w)], r)
    mixed_w_records = _read_records(reader, "mixedw", [(None, r), (None, w)], w)
    mixed_dual_records = _read_records(reader, "mixedd", [(None, r), (None, w)], r)
    adapted = _read_adapted(reader, 2 * r + w)
    reader.finish()

    def build():
        action: Dict[Tuple[int, ...], np.ndarray] = {}
        for (ukey, (j,)), terms in action_records:
            action.setdefault(ukey, zeros(w, w))[:, j] = _vector(terms, w)
        w_algebra = None
        if w:
            w_algebra = MetricNLieAlgebra(_tensor(w_records, n, w, NLieAlgebra), w_metric)
        return GeneralDoubleExtensionData(
            n=n,
            u=_tensor(u_records, n, r, NLieAlgebra),
            w=w_algebra,
            u_form=u_form,
            action={k: Endomorphism(m) for k, m in action.items()},
            phi={key[0]: _coefficients(t, r) for key, t in phi_records},
            mixed_w={key: _coefficients(t, w) for key, t in mixed_w_records},
            mixed_dual={key: _coefficients(t, r) for key, t in mixed_dual_records},
        )

    return ExtensionDocument(data=_guard(head, build), adapted=adapted)


def parse(text: str) -> Document:
    """
    Parse any of the three formats, dispatching on the 'format' line.

    Raises:
        DocumentError: with the 1-based line and column of the first problem
    """
    reader = _Reader(text)
    head, version = _read_format(reader)
    if version == ALGEBRA_FORMAT:
        return _parse_algebra(reader, head)
    if version == ONE_DIM_FORMAT:
        return _parse_one_dim(reader, head)
    return _parse_general(reader, head)


def parse_algebra(text: str) -> AlgebraDocument:
    doc = parse(text)
    if not isinstance(doc, AlgebraDocument):
        raise DocumentError(f"expected an {ALGEBRA_FORMAT} document, got {doc.format_version}", 1, 1)
    return doc


def parse_extension(text: str) -> ExtensionDocument:
    doc = parse(text)
    if not isinstance(doc, ExtensionDocument):
        raise DocumentError(f"expected extension data, got {ALGEBRA_FORMAT}", 1, 1)
    return doc


# ---------------------------------------------------------------- writing

def _indices(key: Sequence[int]) -> str:
    return " ".join(str(i + 1) for i in key)


def _terms(vector) -> Optional[str]:
    parts = [f"{t + 1}: {format_rational(c)}" for t, c in enumerate(vector) if c != 0]
    return ", ".join(parts) if parts else None


def _record_lines(keyword: str, items) -> List[str]:
    """items: (tuple of index groups, vector) pairs; zero vectors are skipped."""
    out = []
    for groups, vector in sorted(items, key=lambda item: item[0]):
        terms = _terms(vector)
        if terms is not None:
            out.append(f"{keyword} {' | '.join(_indices(g) for g in groups)} -> {terms}")
    return out


def _tensor_lines(keyword: str, tensor: StructureTensor) -> List[str]:
    return _record_lines(keyword, [((key,), value) for key, value in tensor.items()])


def _form_lines(keyword: str, form: SymmetricForm) -> List[str]:
    if form.is_diagonal():
        return [f"{keyword} diag " + " ".join(format_rational(x) for x in np.diagonal(form.gram))]
    lines = [f"{keyword} rows"]
    for row in form.gram:
        lines.append("row " + " ".join(format_rational(x) for x in row))
    return lines


def _adapted_lines(doc: ExtensionDocument) -> List[str]:
    p = doc.adapted_matrix()
    if p is None:
        return []
    return _record_lines("adapted", [(((j,),), p[:, j]) for j in range(p.shape[1])])


def _serialize_algebra(doc: AlgebraDocument) -> List[str]:
    lines = [
        f"format {ALGEBRA_FORMAT}",
        f"n {doc.n}",
        f"dim {doc.dim}",
        "basis " + " ".join(doc.basis_names),
    ]
    if doc.metric is not None:
        lines += _form_lines("metric", doc.metric)
    return lines + _tensor_lines("bracket", doc.algebra)


def _serialize_one_dim(doc: ExtensionDocument) -> List[str]:
    d: OneDimDoubleExtensionData = doc.data
    lines = [
        f"format {ONE_DIM_FORMAT}",
        f"n {d.n}",
        f"wdim {d.w_dim}",
        f"uu {format_rational(d.uu_entry)}",
    ]
    lines += _form_lines("metric", d.w_metric)
    lines += _tensor_lines("lower", d.lower_bracket)
    lines += _tensor_lines("wbracket", d.n_bracket_w)
    return lines + _adapted_lines(doc)


def _serialize_general(doc: ExtensionDocument) -> List[str]:
    d: GeneralDoubleExtensionData = doc.data
    lines = [
        f"format {GENERAL_FORMAT}",
        f"n {d.n}",
        f"udim {d.u_dim}",
        f"wdim {d.w_dim}",
    ]
    if d.u_form is not None:
        lines += _form_lines("uform", d.u_form)
    if d.w is not None:
        lines += _form_lines("wmetric", d.w.metric)
    lines += _tensor_lines("ubracket", d.u)
    action_items = []
    for key, endo in d.action.items():
        for j in range(d.w_dim):
            action_items.append(((key, (j,)), endo.matrix[:, j]))
    lines += _record_lines("action", action_items)
    if d.w is not None:
        lines += _tensor_lines("wbracket", d.w.algebra)
    lines += _record_lines("phi", [((key,), v) for key, v in d.phi.items()])
    lines += _record_lines("mixedw", list(d.mixed_w.items()))
    lines += _record_lines("mixedd", list(d.mixed_dual.items()))
    return lines + _adapted_lines(doc)


def serialize(doc: Document) -> str:
    """Canonical text of a document, newline-terminated."""
    if isinstance(doc, AlgebraDocument):
        lines = _serialize_algebra(doc)
    elif isinstance(doc.data, OneDimDoubleExtensionData):
        lines = _serialize_one_dim(doc)
    else:
        lines = _serialize_general(doc)
    return "\n".join(lines) + "\n"
