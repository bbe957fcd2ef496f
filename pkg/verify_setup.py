"""
Setup check for the metric Lie n-algebra toolkit.

Run from the project root. Verifies the interpreter, the installed
packages, the source layout, that the bundled documents parse, and that
the NLIE_* settings load.
"""

import importlib
import sys
from pathlib import Path

ROOT = Path(__file__).parent
MIN_PYTHON = (3, 9)

GREEN, RED, YELLOW, BLUE, BOLD, RESET = (
    '\033[92m', '\033[91m', '\033[93m', '\033[94m', '\033[1m', '\033[0m'
)


def _status(tag, color, text):
    try:
        print(f"{color}[{tag}]{RESET} {text}")
    except UnicodeEncodeError:
        print(f"[{tag}] {text}")


def print_success(text):
    _status("OK", GREEN, text)


def print_error(text):
    _status("ERROR", RED, text)


def print_warning(text):
    _status("WARNING", YELLOW, text)


def print_header(text):
    print(f"\n{BOLD}{BLUE}--- {text} ---{RESET}")


def check_python_version():
    print_header("Interpreter")
    found = sys.version_info[:2]
    label = ".".join(map(str, sys.version_info[:3]))
    if found >= MIN_PYTHON:
        print_success(f"Python {label} ({sys.executable})")
        return True
    print_error(f"Python {label} is older than {'.'.join(map(str, MIN_PYTHON))}")
    return False


IMPORT_NAMES = {'python-dotenv': 'dotenv'}


def required_packages():
    """Distribution names listed in requirements.txt."""
    names = []
    for line in (ROOT / "requirements.txt").read_text().splitlines():
        spec = line.split("#", 1)[0].strip()
        if spec:
            names.append(spec.split(">=")[0].split("==")[0].strip())
    return names


def check_packages():
    print_header("Packages")
    missing = []
    for name in required_packages():
        try:
            importlib.import_module(IMPORT_NAMES.get(name, name))
            print_success(name)
        except ImportError:
            missing.append(name)
            print_error(f"{name} not importable")
    if missing:
        print(f"  pip install {' '.join(missing)}")
        return False
    return True


LAYOUT = {
    'packages': ['src/exact', 'src/core', 'src/structure', 'src/constructions', 'src/cli', 'src/utils'],
    'data': ['data/examples'],
    'entry points': ['run_cli.py', 'run_corpus.py', 'src/cli/main.py'],
    'tests': ['tests/conftest.py', 'pytest.ini'],
}


def check_project_structure():
    print_header("Layout")
    missing = [p for group in LAYOUT.values() for p in group if not (ROOT / p).exists()]
    for group, paths in LAYOUT.items():
        absent = [p for p in paths if p in missing]
        if absent:
            print_error(f"{group}: missing {', '.join(absent)}")
        else:
            print_success(group)
    return not missing


def check_example_files():
    """Every bundled document must parse in its canonical form."""
    print_header("Example documents")
    sys.path.insert(0, str(ROOT))
    from src.utils.data_loader import examples_dir, load_document
    from src.utils.errors import DocumentError

    paths = sorted(p for p in examples_dir().iterdir() if p.suffix in (".nlie", ".dext"))
    if not paths:
        print_error(f"no documents in {examples_dir()}")
        return False
    ok = True
    for path in paths:
        try:
            print_success(f"{path.name}: {load_document(path).format_version}")
        except DocumentError as e:
            print_error(f"{path.name}:{e}")
            ok = False
    return ok


def check_configuration():
    print_header("Settings")
    from src.utils.config import load_settings
    from src.utils.errors import ConfigurationError

    if not (ROOT / ".env").exists():
        print_warning("no .env, using environment and defaults")
    try:
        settings = load_settings()
    except ConfigurationError as e:
        print_error(str(e))
        return False
    for key, value in settings.model_dump().items():
        print(f"  {key} = {value}")
    return True


CHECKS = [
    ("Interpreter", check_python_version),
    ("Packages", check_packages),
    ("Layout", check_project_structure),
    ("Example documents", check_example_files),
    ("Settings", check_configuration),
]


def main():
    print(f"{BOLD}nlie setup check{RESET}")
    results = [(label, check()) for label, check in CHECKS]

    print_header("Summary")
    for label, ok in results:
        (print_success if ok else print_error)(label)
    failed = [label for label, ok in results if not ok]
    if failed:
        print_warning(f"{len(failed)} of {len(results)} checks failed; see pip install -r requirements.txt")
        return 1
    print("\nTry: python run_cli.py analyze data/examples/lorentzian5.nlie")
    return 0


if __name__ == "__main__":
    sys.exit(main())
