import random

import pytest

from sulcheck import build_figure_fixtures
from sulcheck.generators import DEFAULT_SEED


def pytest_addoption(parser):
    parser.addoption("--seed", type=int, default=DEFAULT_SEED, help="seed for randomized suites")
    parser.addoption("--qbf-large", action="store_true", help="also check reductions with three or more variables")


@pytest.fixture(scope="session")
def seed(request) -> int:
    return request.config.getoption("--seed")


@pytest.fixture
def rng(seed) -> random.Random:
    return random.Random(seed)


@pytest.fixture(scope="session")
def figs():
    return build_figure_fixtures()


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Collects the one-line verdict of each acceptance criterion."""

    def emit(line: str) -> None:
        print(line)
        ACCEPTANCE_LINES.append(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
