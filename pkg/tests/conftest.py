import sys
from pathlib import Path

import pytest

from meadows import Meadow, build_M, parse_ring
from meadows.directed_lattice import load_json

TESTS = Path(__file__).parent
ROOT = TESTS.parent
LATTICES = ROOT / "demos" / "lattices"
sys.path.insert(0, str(TESTS))

# ring specs used across the suite, with their brute-force invariants
CORPUS = {
    "zn:2": dict(ideals=2, maximal=1, size=3, units=1, idempotents=2, primitive=1),
    "zn:3": dict(ideals=2, maximal=1, size=4, units=2, idempotents=2, primitive=1),
    "zn:4": dict(ideals=3, maximal=1, size=7, units=2, idempotents=2, primitive=1),
    "zn:6": dict(ideals=4, maximal=2, size=12, units=2, idempotents=4, primitive=2),
    "zn:8": dict(ideals=4, maximal=1, size=15, units=4, idempotents=2, primitive=1),
    "zn:9": dict(ideals=3, maximal=1, size=13, units=6, idempotents=2, primitive=1),
    "zn:12": dict(ideals=6, maximal=2, size=28, units=4, idempotents=4, primitive=2),
    "poly:p=2,mod=[0,0,1]": dict(ideals=3, maximal=1, size=7, units=2, idempotents=2, primitive=1),
    "poly:p=2,mod=[1,1,1]": dict(ideals=2, maximal=1, size=5, units=3, idempotents=2, primitive=1),
    "prod:(zn:2,zn:2)": dict(ideals=4, maximal=2, size=9, units=1, idempotents=4, primitive=2),
    "prod:(zn:2,zn:3)": dict(ideals=4, maximal=2, size=12, units=2, idempotents=4, primitive=2),
    "prod:(zn:2,zn:4)": dict(ideals=6, maximal=2, size=21, units=2, idempotents=4, primitive=2),
}

# rings too large for the subset oracle, still part of the meadow corpus
EXTRA = ["ga:base=zn:2,group=[2]", "ga:base=zn:3,group=[2,2]", "zn:30"]


_acceptance_lines = []


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def ring():
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = parse_ring(spec)
        return cache[spec]
    return get


@pytest.fixture(scope="session")
def meadow_of(ring):
    cache = {}

    def get(spec):
        if spec not in cache:
            cache[spec] = build_M(ring(spec))
        return cache[spec]
    return get


def load_lattice_meadow(name):
    return Meadow(load_json(LATTICES / f"{name}.json"), name=name)


@pytest.fixture(scope="session")
def diamond():
    return load_lattice_meadow("pi1pi1")
