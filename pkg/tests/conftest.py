import sys
from pathlib import Path

import pytest

from locat.category import fix_p, walking_arrow
from locat.fileformat import load

DATA = Path(__file__).parent / "data"
CORPUS_DIR = DATA / "corpus"


def load_corpus():
    out = []
    for path in sorted(CORPUS_DIR.glob("*.cat")):
        p = load(path)
        out.append((path.stem, p.category, p.sigma))
    return out


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def arrow():
    return walking_arrow()


@pytest.fixture
def fixp():
    return fix_p()


@pytest.fixture
def fixp_sigma(fixp):
    return fixp.identities | {"t"}


def pytest_terminal_summary(terminalreporter):
    gate = sys.modules.get("tests.test_acceptance")
    if gate is None or not gate.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(gate.RESULTS):
        terminalreporter.write_line(gate.RESULTS[n])
