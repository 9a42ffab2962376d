import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from shiftpress import catalog


@pytest.fixture(scope="session")
def golden():
    return catalog.golden_mean_sft()


@pytest.fixture(scope="session")
def full2():
    return catalog.full_shift(2)


@pytest.fixture(scope="session")
def no111():
    return catalog.no_111_sft()


@pytest.fixture(scope="session")
def shipped_oracles():
    return catalog.shipped_language_oracles()
