"""
Deterministic corpus of metric Lie n-algebras.

Used by the acceptance tests and by run_corpus.py. Everything here is built
from the validated builders, so every member is a validated algebra.
"""

import logging
from fractions import Fraction
from typing import List, NamedTuple, Sequence

from src.constructions.builders import build_abelian, build_simple, direct_sum, sign_vectors
from src.constructions.double_extension import OneDimDoubleExtensionData, double_extend_1d
from src.core.algebra import MetricNLieAlgebra, StructureTensor
from src.exact.forms import SymmetricForm, random_isometry
from src.utils.random_source import SplitMix64

logger = logging.getLogger(__name__)

SCALES = (Fraction(1), Fraction(2), Fraction(-1), Fraction(1, 2))
UU_ENTRIES = (Fraction(0), Fraction(1), Fraction(-3))


class CorpusEntry(NamedTuple):
    name: str
    kind: str
    algebra: MetricNLieAlgebra


def scaled(tensor: StructureTensor, factor) -> StructureTensor:
    factor = Fraction(factor)
    return StructureTensor(tensor.arity, tensor.dim, {k: v * factor for k, v in tensor.items()})


def _signs_label(signs: Sequence[int]) -> str:
    return "".join("+" if s > 0 else "-" for s in signs)


def lower_bracket_data(n: int, signs: Sequence[int], scale=1, uu=0) -> OneDimDoubleExtensionData:
    """
    One-dimensional extension data with W = Q^n carrying the scaled simple
    (n-1)-bracket as lower bracket and a zero n-bracket.

    For n = 3 and scale -1 the lower bracket is the cross product on Q^3 (twisted by signs).
    """
    lower = build_simple(n - 1, signs)
    w = len(signs)
    return OneDimDoubleExtensionData(
        n=n,
        w_metric=lower.metric,
        n_bracket_w=StructureTensor(n, w),
        lower_bracket=scaled(lower.algebra, scale),
        uu_entry=uu,
    )


def round_trip_data() -> List[OneDimDoubleExtensionData]:
    """Extension data for n = 3 over all sign choices and scales, plus n = 4 cases."""
    out = []
    k = 0
    for signs in sign_vectors(3):
        for scale in SCALES:
            out.append(lower_bracket_data(3, signs, scale, UU_ENTRIES[k % len(UU_ENTRIES)]))
            k += 1
    for signs in ([1, 1, 1, 1], [1, 1, 1, -1], [1, 1, -1, -1], [1, -1, -1, -1]):
        for scale in (Fraction(1), Fraction(-1, 2)):
            out.append(lower_bracket_data(4, signs, scale, UU_ENTRIES[k % len(UU_ENTRIES)]))
            k += 1
    return out


def conjugate(m: MetricNLieAlgebra, rng: SplitMix64) -> MetricNLieAlgebra:
    """m written in the basis of a seeded random isometry (same Gram matrix)."""
    return m.transform(random_isometry(m.metric, rng))


def abelian_signature(n: int, p: int, q: int) -> MetricNLieAlgebra:
    return build_abelian(n, SymmetricForm.diagonal([1] * p + [-1] * q))


def random_block_algebra(rng: SplitMix64, n: int = 3, blocks: int = 3) -> MetricNLieAlgebra:
    """Orthogonal sum of seeded simple and one-dimensional blocks."""
    out = None
    for _ in range(blocks):
        if rng.choice(2):
            signs = [1 if rng.choice(2) else -1 for _ in range(n + 1)]
            block = build_simple(n, signs)
        else:
            block = abelian_signature(n, 1, 0) if rng.choice(2) else abelian_signature(n, 0, 1)
        out = block if out is None else direct_sum(out, block)
    return out


def euclidean_member(rng: SplitMix64, n: int = 3) -> MetricNLieAlgebra:
    """Sum of euclidean simples and a euclidean abelian part, conjugated by an isometry."""
    simples = 1 + rng.choice(2)
    flat = rng.choice(3)
    out = build_simple(n, [1] * (n + 1))
    for _ in range(simples - 1):
        out = direct_sum(out, build_simple(n, [1] * (n + 1)))
    if flat:
        out = direct_sum(out, abelian_signature(n, flat, 0))
    return conjugate(out, rng)


def standard_corpus(seed: int = 0) -> List[CorpusEntry]:
    """
    Simples for n = 3, 4, direct sums, abelians up to signature (3,3),
    one-dimensional double extensions for n = 3, 4 and isometry conjugates.
    """
    rng = SplitMix64(seed)
    entries: List[CorpusEntry] = []
    for signs in sign_vectors(4):
        entries.append(CorpusEntry(f"simple3{_signs_label(signs)}", "simple", build_simple(3, signs)))
    for signs in sign_vectors(5)[::4]:
        entries.append(CorpusEntry(f"simple4{_signs_label(signs)}", "simple", build_simple(4, signs)))

    s = build_simple(3, [1, 1, 1, 1])
    lorentz = build_simple(3, [1, 1, 1, -1])
    line = abelian_signature(3, 1, 0)
    sums = [
        ("sum-s-s", direct_sum(s, s)),
        ("sum-s-lorentz", direct_sum(s, lorentz)),
        ("sum-s-s-line", direct_sum(direct_sum(s, s), line)),
        ("sum-s-timeline", direct_sum(lorentz, abelian_signature(3, 0, 1))),
        ("sum4-s-s", direct_sum(build_simple(4, [1] * 5), build_simple(4, [1, 1, 1, -1, -1]))),
    ]
    entries.extend(CorpusEntry(name, "sum", m) for name, m in sums)

    for p in range(4):
        for q in range(4):
            if p + q:
                entries.append(CorpusEntry(f"abelian{p}{q}", "abelian", abelian_signature(3, p, q)))

    data = round_trip_data()
    for i, d in enumerate(data[::3]):
        entries.append(CorpusEntry(f"dext{d.n}-{i}", "double-extension", double_extend_1d(d)))

    for name, m in sums[:3] + [("dext3", double_extend_1d(data[0]))]:
        entries.append(CorpusEntry(f"{name}-conj", "conjugate", conjugate(m, rng)))
    logger.debug("standard corpus has %d members", len(entries))
    return entries
