from pathlib import Path

import numpy as np
import pytest

from cogmath import _backend

ROOT = Path(__file__).resolve().parent.parent
SCENARIOS = ROOT / "scenarios"
GOLDEN = Path(__file__).resolve().parent / "golden"


def pytest_addoption(parser):
    parser.addoption(
        "--backend",
        choices=_backend.available(),
        help="kernel backend for the whole run (default: compiled when built)",
    )


def pytest_configure(config):
    chosen = config.getoption("--backend")
    if chosen:
        _backend.use(chosen)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture(params=_backend.available())
def backend(request):
    previous = _backend.use(request.param)
    yield request.param
    _backend.use(previous)


@pytest.fixture
def scenarios():
    return SCENARIOS


@pytest.fixture
def golden():
    return GOLDEN


ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
