"""
Pytest configuration file.

This file runs before all tests, sets up the Python path and provides the
polynomials of the sample corpus in data/.
"""

import sys
from pathlib import Path

import pytest

# Add project root to Python path
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.core.polynomial import load_polynomial, parse_polynomial  # noqa: E402

DATA_DIR = project_root / "data"


@pytest.fixture
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture
def f1():
    return load_polynomial(DATA_DIR / "f1.poly")


@pytest.fixture
def f2():
    return load_polynomial(DATA_DIR / "f2_333.poly")


@pytest.fixture
def f3():
    return load_polynomial(DATA_DIR / "f3.poly")


@pytest.fixture
def ex21():
    return load_polynomial(DATA_DIR / "ex21.poly")


@pytest.fixture
def g4():
    return load_polynomial(DATA_DIR / "g4.poly")


@pytest.fixture
def f4():
    return load_polynomial(DATA_DIR / "f4.poly")


@pytest.fixture
def f1_pullback():
    return load_polynomial(DATA_DIR / "f1_pullback.poly")


@pytest.fixture
def g_moduli():
    return load_polynomial(DATA_DIR / "g_moduli.poly")


@pytest.fixture
def fermat():
    return parse_polynomial("z1^3 + z2^3 + z3^3")
