import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from jnum.datasets import data_path  # noqa: E402
from jnum.model import load_resolution, make_example2  # noqa: E402

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def cusp():
    return load_resolution(data_path("cusp.json"))


@pytest.fixture(scope="session")
def aad14():
    return load_resolution(data_path("aad14-ideal.json"))


@pytest.fixture(scope="session")
def example1():
    return load_resolution(data_path("example1.json"))


@pytest.fixture(scope="session")
def example2_d3():
    return make_example2(3)


@pytest.fixture(scope="session")
def example2_d4():
    return make_example2(4)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
