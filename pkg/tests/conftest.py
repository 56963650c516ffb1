from __future__ import annotations

import pytest

from coxbridge import KNOTS_DIR
from coxbridge.diagram import build_diagram, iter_knot_lines, parse_gauss, parse_line
from coxbridge.homsearch import analyze
from coxbridge.robust import load_library

ACCEPTANCE: list[str] = []


def load_knots(filename: str):
    with open(KNOTS_DIR / filename) as fh:
        return [build_diagram(parse_line(line)) for _, line in iter_knot_lines(fh)]


@pytest.fixture(scope="session")
def specials():
    with open(KNOTS_DIR / "specials.gauss") as fh:
        return {d.name: d for d in (build_diagram(parse_gauss(l)) for _, l in iter_knot_lines(fh))}


@pytest.fixture(scope="session")
def trefoil(specials):
    return specials["trefoil"]


@pytest.fixture(scope="session")
def figure8(specials):
    return specials["figure8"]


@pytest.fixture(scope="session")
def knot_816(specials):
    return specials["8_16"]


@pytest.fixture(scope="session")
def htw_small():
    return load_knots("htw_3_10.dt")


@pytest.fixture(scope="session")
def htw_all(htw_small):
    return htw_small + load_knots("htw_11.dt") + load_knots("htw_12.dt")


@pytest.fixture(scope="session")
def library():
    return load_library()


@pytest.fixture(scope="session")
def reports_small(htw_small, library):
    return [analyze(d, library) for d in htw_small]


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
