"""Run the acceptance suite and show one line per criterion."""

import sys
from pathlib import Path

import pytest

if __name__ == "__main__":
    root = Path(__file__).resolve().parent.parent
    sys.exit(pytest.main(["-q", str(root / "tests" / "test_acceptance.py"), *sys.argv[1:]]))
