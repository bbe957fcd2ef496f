"""
CLI subcommands.

Each command returns its exit code. Results go to stdout (or to --output);
warnings and status lines go to stderr in the [OK] / [WARNING] / [ERROR]
style. Errors are raised and mapped to exit codes by src.cli.main.
"""

import sys
from typing import List, Optional, Sequence

from pydantic import BaseModel, ConfigDict

from src.cli.document import AlgebraDocument, ExtensionDocument, serialize
from src.constructions.builders import (
    build_abelian,
    build_metric_coadjoint,
    build_simple,
    direct_sum,
)
from src.constructions.double_extension import (
    GeneralDoubleExtensionData,
    OneDimDoubleExtensionData,
    double_extend_1d,
    double_extend_general,
)
from src.constructions.extraction import extract_double_extension
from src.core.algebra import MetricNLieAlgebra
from src.core.derivations import is_semisimple
from src.core.validation import check_n_jacobi, validate_metric, validation_report
from src.exact.forms import SymmetricForm
from src.structure.decomposition import (
    DOUBLE_EXTENSION,
    SIMPLE,
    IndecomposableKind,
    classify_indecomposable,
    decompose,
)
from src.structure.ideals import center, derived_series
from src.utils.data_loader import load_algebra, load_extension, write_output
from src.utils.errors import ConstructionError, ExtractionError, NotIndecomposableError

CONSTRUCT_KINDS = ("simple", "abelian", "dsum", "coadjoint", "dext1", "dextgen")


def status(tag: str, message: str) -> None:
    print(f"[{tag}] {message}", file=sys.stderr)


def _warn_if_lie_algebra(n: int) -> None:
    if n == 2:
        status("WARNING", "n = 2: this is an ordinary Lie algebra, classical results apply")


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


def describe_kind(kind: IndecomposableKind) -> str:
    if kind.tag == DOUBLE_EXTENSION:
        return f"{kind.tag}, dim I = {kind.ideal_dim}"
    return kind.tag


def _load_metric(path: str) -> MetricNLieAlgebra:
    """Parse, require a metric, validate."""
    doc = load_algebra(path)
    _warn_if_lie_algebra(doc.n)
    return validate_metric(doc.algebra, doc.metric_algebra().metric)


# ---------------------------------------------------------------- check

def cmd_check(path: str, jobs: Optional[int] = None) -> int:
    """Exit 0 when n-Jacobi (and invariance, if a metric is given) hold, else 1."""
    doc = load_algebra(path)
    _warn_if_lie_algebra(doc.n)
    if doc.metric is None:
        report = check_n_jacobi(doc.algebra, jobs=jobs)
    else:
        doc.metric_algebra()
        report = validation_report(doc.algebra, doc.metric, jobs=jobs)
    if report.passed:
        print(f"[OK] {report.summary()}")
        return 0
    print(f"[ERROR] {report.summary()}")
    for line in report.lines():
        print(f"  {line}")
    return 1


# ---------------------------------------------------------------- analyze

class AnalysisReport(BaseModel):
    """Structure summary printed by analyze."""

    model_config = ConfigDict(frozen=True)

    n: int
    dim: int
    signature: Optional[str] = None
    centre_dim: int
    derived_series: List[int]
    solvable: bool
    semisimple: bool
    factors: Optional[List[int]] = None
    factor_signatures: Optional[List[str]] = None
    indecomposable: Optional[str] = None

    def lines(self) -> List[str]:
        out = [
            f"n: {self.n}",
            f"dim: {self.dim}",
            f"signature: {self.signature or 'none'}",
            f"centre dim: {self.centre_dim}",
            "derived series: " + ",".join(str(d) for d in self.derived_series),
            f"solvable: {_yes(self.solvable)}",
            f"semisimple: {_yes(self.semisimple)}",
        ]
        if self.factors is not None:
            out.append("factors: " + ",".join(str(d) for d in self.factors))
            out.append("factor signatures: " + " ".join(self.factor_signatures))
            out.append(f"indecomposable: {self.indecomposable}")
        return out


def analyze(doc: AlgebraDocument, seed: int = 0) -> AnalysisReport:
    a = doc.algebra
    series = derived_series(a)
    fields = dict(
        n=a.n,
        dim=a.dim,
        centre_dim=center(a).dim,
        derived_series=[s.dim for s in series],
        solvable=series[-1].is_zero(),
        semisimple=is_semisimple(a),
    )
    if doc.metric is not None:
        m = validate_metric(a, doc.metric)
        result = decompose(m, seed)
        fields.update(
            signature=str(m.signature()),
            factors=result.dims(),
            factor_signatures=[str(s) for s in result.signatures()],
            indecomposable=(
                describe_kind(classify_indecomposable(m, seed)) if len(result.factors) == 1 else "no"
            ),
        )
    return AnalysisReport(**fields)


def cmd_analyze(path: str, seed: int = 0, as_json: bool = False) -> int:
    doc = load_algebra(path)
    _warn_if_lie_algebra(doc.n)
    report = analyze(doc, seed)
    if as_json:
        print(report.model_dump_json(indent=2))
    else:
        print("\n".join(report.lines()))
    return 0


# ---------------------------------------------------------------- construct

def parse_signs(text: str) -> List[int]:
    """'+' / '-' string to a list of signs."""
    if not text or any(c not in "+-" for c in text):
        raise ValueError(f"signs must be a string of '+' and '-', got {text!r}")
    return [1 if c == "+" else -1 for c in text]


def _one_dim_data(path: str) -> OneDimDoubleExtensionData:
    doc = load_extension(path)
    if not isinstance(doc.data, OneDimDoubleExtensionData):
        raise ConstructionError(f"{path} holds {doc.format_version} data, dext1 needs one-dimensional data")
    return doc.data


def _general_data(path: str) -> GeneralDoubleExtensionData:
    doc = load_extension(path)
    if not isinstance(doc.data, GeneralDoubleExtensionData):
        raise ConstructionError(f"{path} holds {doc.format_version} data, dextgen needs general data")
    return doc.data


def construct(kind: str, n: Optional[int] = None, signs: Optional[Sequence[int]] = None,
              inputs: Sequence[str] = (), data: Optional[str] = None) -> MetricNLieAlgebra:
    if kind == "simple":
        return build_simple(n, signs)
    if kind == "abelian":
        return build_abelian(n, SymmetricForm.diagonal(signs))
    if kind == "dsum":
        first, second = (_load_metric(p) for p in inputs)
        return direct_sum(first, second)
    if kind == "coadjoint":
        doc = load_algebra(inputs[0])
        _warn_if_lie_algebra(doc.n)
        return build_metric_coadjoint(doc.algebra)
    if kind == "dext1":
        return double_extend_1d(_one_dim_data(data))
    if kind == "dextgen":
        return double_extend_general(_general_data(data))
    raise ValueError(f"unknown construction {kind!r}")


def cmd_construct(kind: str, n: Optional[int] = None, signs: Optional[Sequence[int]] = None,
                  inputs: Sequence[str] = (), data: Optional[str] = None,
                  output: Optional[str] = None) -> int:
    m = construct(kind, n=n, signs=signs, inputs=inputs, data=data)
    write_output(serialize(AlgebraDocument.of(m)), output)
    status("OK", f"{kind}: n = {m.n}, dim = {m.dim}, signature {m.signature()}")
    return 0


# ---------------------------------------------------------------- decompose

def cmd_decompose(path: str, seed: int = 0) -> int:
    m = _load_metric(path)
    result = decompose(m, seed)
    print("factors: " + ",".join(str(d) for d in result.dims()))
    for i, factor in enumerate(result.factors, start=1):
        kind = describe_kind(classify_indecomposable(factor, seed))
        print(f"factor {i}: dim {factor.dim}, signature {factor.signature()}, {kind}")
    return 0


# ---------------------------------------------------------------- extract

def extract(m: MetricNLieAlgebra, seed: int = 0) -> ExtensionDocument:
    """
    Raises:
        ExtractionError: for one-dimensional or simple inputs
        NotIndecomposableError: for decomposable inputs
    """
    if m.dim == 1:
        raise ExtractionError("input is one-dimensional")
    result = decompose(m, seed)
    if len(result.factors) > 1:
        dims = ",".join(str(d) for d in result.dims())
        raise NotIndecomposableError(f"input decomposable into factors {dims}")
    kind = classify_indecomposable(m, seed)
    if kind.tag == SIMPLE:
        raise ExtractionError("input is simple")
    found = extract_double_extension(m, kind.ideal)
    return ExtensionDocument.of(found.data, found.adapted)


def cmd_extract(path: str, seed: int = 0, output: Optional[str] = None) -> int:
    m = _load_metric(path)
    doc = extract(m, seed)
    write_output(serialize(doc), output)
    status("OK", f"extracted {doc.format_version} data; rebuild verified")
    return 0
