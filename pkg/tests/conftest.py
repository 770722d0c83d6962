import pathlib

import pytest

from qutritqec.code import build_code
from qutritqec.decode import build_syndrome_table, single_error_set

GOLDEN_DIR = pathlib.Path(__file__).parent / "golden"


@pytest.fixture(scope="session")
def code():
    return build_code(validate=True)


@pytest.fixture(scope="session")
def table(code):
    return build_syndrome_table(code)


@pytest.fixture(scope="session")
def errors41():
    return single_error_set()


@pytest.fixture(scope="session")
def golden_dir():
    return GOLDEN_DIR
