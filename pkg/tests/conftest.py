import os
import sys

import pytest

from infocoh import catalog

HERE = os.path.dirname(__file__)
ROOT = os.path.dirname(HERE)
STRUCTURES = os.path.join(ROOT, "structures")
GOLDEN = os.path.join(HERE, "golden")


@pytest.fixture
def two_binary():
    return catalog.two_binary()


@pytest.fixture
def inverse_limit():
    return catalog.inverse_limit_example()


def structure_file(name):
    return os.path.join(STRUCTURES, name)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.LINES:
        terminalreporter.section("acceptance criteria")
        for line in mod.LINES:
            terminalreporter.write_line(line)
