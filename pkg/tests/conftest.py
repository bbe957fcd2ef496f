"""Shared fixtures."""

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parents[1]))

from src.cli.document import parse_extension
from src.constructions.builders import build_abelian, build_simple, direct_sum
from src.constructions.corpus import conjugate, lower_bracket_data
from src.constructions.double_extension import double_extend_1d
from src.core.algebra import MetricNLieAlgebra
from src.exact.forms import SymmetricForm
from src.utils.config import get_settings
from src.utils.random_source import SplitMix64

EXAMPLES = Path(__file__).resolve().parents[1] / "data" / "examples"


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch):
    for name in ("NLIE_SEED", "NLIE_JOBS", "NLIE_PROBE_BUDGET", "NLIE_SECTION_BUDGET", "NLIE_LOG_LEVEL"):
        monkeypatch.delenv(name, raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def simple3() -> MetricNLieAlgebra:
    return build_simple(3, [1, 1, 1, 1])


@pytest.fixture
def lorentz_simple3() -> MetricNLieAlgebra:
    return build_simple(3, [1, 1, 1, -1])


@pytest.fixture
def line() -> MetricNLieAlgebra:
    return build_abelian(3, SymmetricForm.diagonal([1]))


@pytest.fixture
def two_simples(simple3) -> MetricNLieAlgebra:
    return direct_sum(simple3, simple3)


@pytest.fixture
def two_simples_and_line(simple3, line) -> MetricNLieAlgebra:
    return direct_sum(direct_sum(simple3, simple3), line)


@pytest.fixture
def cross_product_data():
    """n = 3, W = Q^3 with the cross product as lower bracket."""
    return parse_extension((EXAMPLES / "cross_product.dext").read_text()).data


@pytest.fixture
def lorentzian5(cross_product_data) -> MetricNLieAlgebra:
    return double_extend_1d(cross_product_data)


@pytest.fixture
def so3_data():
    return lower_bracket_data(3, [1, 1, 1])


@pytest.fixture
def rng() -> SplitMix64:
    return SplitMix64(7)


@pytest.fixture
def conjugated(rng):
    def _conjugate(m):
        return conjugate(m, rng)
    return _conjugate
