"""Shared fixtures: sieve tables and precision contexts."""

import pytest

from golden_pair.arithfn import sieve_build
from golden_pair.fixedpoint import PrecisionContext


@pytest.fixture(scope="session")
def table():
    """Sieve large enough for every default-precision series in the suite."""
    return sieve_build(10_000)


@pytest.fixture(scope="session")
def big_table():
    return sieve_build(100_000)


@pytest.fixture
def ctx():
    return PrecisionContext(30)
