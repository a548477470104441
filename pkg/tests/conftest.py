import sys
from pathlib import Path

import pytest

from sdohkit import data, ofn, reasoner

sys.path.insert(0, str(Path(__file__).parent))

DATA = Path(data.path("seed.ofn")).parent
FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(scope="session")
def seed():
    return ofn.load_file(DATA / "seed.ofn")


@pytest.fixture(scope="session")
def seed_index(seed):
    return reasoner.classify(seed)


def bundle(kb, *names):
    for name in names:
        doc = ofn.parse_file(DATA / name)
        kb = kb.overlay(doc.axioms, doc.prefixes)
    return kb


@pytest.fixture(scope="session")
def with_a(seed):
    return bundle(seed, "patient_a.ofn")


@pytest.fixture(scope="session")
def with_b(seed):
    return bundle(seed, "patient_b.ofn")


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
