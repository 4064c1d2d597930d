import sys

import pytest

from k3mahler.kronecker_sums import KroneckerSumSpec, m_lattice, split_prop31
from k3mahler.lfunctions import d3


@pytest.fixture(scope="session")
def d3_value():
    return d3(1e-12).value


@pytest.fixture(scope="session")
def target(d3_value):
    return 1.6 * d3_value


@pytest.fixture(scope="session")
def split1500():
    return split_prop31(1500)


@pytest.fixture(scope="session")
def lattice1000():
    return m_lattice(KroneckerSumSpec.q3(1000))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "LINES", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
