"""
Document file loading.

Reads .nlie / .dext files from disk, locates the bundled examples under
data/examples and writes command output either to a file or to stdout.
"""

import sys
from pathlib import Path
from typing import Optional, Union

from src.cli.document import (
    AlgebraDocument,
    Document,
    ExtensionDocument,
    parse,
    parse_algebra,
    parse_extension,
)
from src.utils.errors import DocumentError

PathLike = Union[str, Path]

# Cache for the examples directory to avoid repeated searches
_cached_examples_dir: Optional[Path] = None


def examples_dir() -> Path:
    """
    Directory holding the bundled example documents.

    Looks in data/examples under the working directory first, then under the
    project root.
    """
    global _cached_examples_dir
    if _cached_examples_dir is not None and _cached_examples_dir.exists():
        return _cached_examples_dir
    candidates = [
        Path("data/examples"),
        Path(__file__).resolve().parents[2] / "data" / "examples",
    ]
    for candidate in candidates:
        if candidate.is_dir():
            _cached_examples_dir = candidate
            return candidate
    raise DocumentError("could not find the data/examples directory")


def example_path(name: str) -> Path:
    return examples_dir() / name


def read_text(path: PathLike) -> str:
    """
    Raises:
        DocumentError: if the file cannot be read as UTF-8 text
    """
    try:
        return Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise DocumentError(f"cannot read {path}: {e}")


def load_document(path: PathLike) -> Document:
    return parse(read_text(path))


def load_algebra(path: PathLike) -> AlgebraDocument:
    return parse_algebra(read_text(path))


def load_extension(path: PathLike) -> ExtensionDocument:
    return parse_extension(read_text(path))


def write_output(text: str, path: Optional[PathLike] = None) -> None:
    """Write text to path (parent directories created) or to stdout."""
    if path is None:
        sys.stdout.write(text)
        return
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
