import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from compdiff.graph import GameInstance, WeightedGraph  # noqa: E402


@pytest.fixture
def path7():
    return GameInstance(WeightedGraph.path([1] * 7), 2)


@pytest.fixture
def path3():
    return GameInstance(WeightedGraph.path([1] * 3), 2)


@pytest.fixture
def blocking():
    """Two players tie on vertex 2, which turns neutral and cuts vertex 3 off from them.

    Player 1 reaches vertex 3 later along the detour 4-5-6-3.
    """
    g = WeightedGraph.from_edges(7, [(0, 2), (1, 2), (2, 3), (4, 5), (5, 6), (6, 3)])
    return GameInstance(g, 3)


_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def acceptance_report():
    return _acceptance_lines


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
