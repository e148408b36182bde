import functools

import pytest

from gridpalf import data_path, parse_grid

FIXTURES = ("unknot2", "trefoil5", "figure8", "annulus")
DISK_FIXTURES = ("unknot2", "trefoil5", "figure8")


@functools.lru_cache(maxsize=None)
def load(name: str):
    with open(data_path(name + ".grid")) as fh:
        return parse_grid(fh.read())


@pytest.fixture
def trefoil():
    return load("trefoil5")


@pytest.fixture
def figure8():
    return load("figure8")


@pytest.fixture
def unknot():
    return load("unknot2")


@pytest.fixture
def annulus():
    return load("annulus")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
