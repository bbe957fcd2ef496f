"""
Corpus Acceptance Script

Builds the standard corpus of metric Lie n-algebras, runs the structural
checks on every member and writes a summary table to
data/processed/corpus_summary.csv.
"""

import sys
from fractions import Fraction
from pathlib import Path

import pandas as pd
from joblib import Parallel, delayed

# Add project root to path
sys.path.append(str(Path(__file__).parent))

from src.cli.commands import describe_kind
from src.constructions.corpus import CorpusEntry, round_trip_data, standard_corpus
from src.constructions.double_extension import double_extend_1d
from src.constructions.extraction import extract_double_extension
from src.core.derivations import is_semisimple
from src.exact.forms import perp
from src.exact.matrix import unit_vector
from src.exact.subspace import Subspace
from src.structure.decomposition import classify_indecomposable, decompose
from src.structure.ideals import center, derived_ideal
from src.utils.config import get_settings

SUMMARY_PATH = Path("data/processed/corpus_summary.csv")


def summarize(entry: CorpusEntry, seed: int) -> dict:
    """One row of the summary table."""
    m = entry.algebra
    z = center(m.algebra)
    result = decompose(m, seed)
    kinds = [describe_kind(classify_indecomposable(f, seed)) for f in result.factors]
    return {
        "name": entry.name,
        "kind": entry.kind,
        "n": m.n,
        "dim": m.dim,
        "signature": str(m.signature()),
        "centre_dim": z.dim,
        "derived_dim": derived_ideal(m.algebra).dim,
        "derived_is_centre_perp": derived_ideal(m.algebra) == perp(m.metric, z),
        "semisimple": is_semisimple(m.algebra),
        "factors": ",".join(str(d) for d in result.dims()),
        "factor_kinds": "; ".join(kinds),
    }


def check_round_trips() -> int:
    """Number of one-dimensional extension data that extract back unchanged."""
    passed = 0
    for data in round_trip_data():
        m = double_extend_1d(data)
        ideal = Subspace.span([unit_vector(m.dim, m.dim - 1)], m.dim)
        found = extract_double_extension(m, ideal).data
        expected = data.model_copy(update={"uu_entry": Fraction(0)})
        if found == expected:
            passed += 1
        else:
            print(f"  [WARNING] round trip changed data for n = {data.n}, dim W = {data.w_dim}")
    return passed


def main():
    """Main acceptance function."""
    print("\n" + "=" * 60)
    print("Metric Lie n-algebras - Corpus Acceptance")
    print("=" * 60)

    try:
        settings = get_settings()
        SUMMARY_PATH.parent.mkdir(parents=True, exist_ok=True)

        print("\n1. Building standard corpus...")
        corpus = standard_corpus(settings.seed)
        print(f"   Members: {len(corpus)}")

        print("\n2. Analysing members...")
        rows = Parallel(n_jobs=settings.jobs)(
            delayed(summarize)(entry, settings.seed) for entry in corpus
        )
        df = pd.DataFrame(rows)
        df.to_csv(SUMMARY_PATH, index=False)
        failures = df[~df["derived_is_centre_perp"]]
        if failures.empty:
            print("   [OK] derived ideal equals the perp of the centre on every member")
        else:
            print(f"   [ERROR] derived ideal differs from perp of centre: {', '.join(failures['name'])}")

        print("\n3. Round-tripping one-dimensional double extensions...")
        total = len(round_trip_data())
        passed = check_round_trips()
        print(f"   [OK] {passed}/{total} data sets reproduced")

        print("\n" + "=" * 60)
        print("Acceptance Complete!")
        print("=" * 60)
        print(df.groupby("kind")["dim"].agg(["count", "min", "max"]).to_string())
        print(f"\nSummary saved in: {SUMMARY_PATH}")
        return 0 if failures.empty and passed == total else 1

    except Exception as e:
        print(f"\n[ERROR] Error during corpus run: {e}")
        import traceback
        traceback.print_exc()
        return 1


if __name__ == "__main__":
    exit(main())
