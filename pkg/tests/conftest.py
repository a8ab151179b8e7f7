import pytest

from hypertop import GroundTopology, Universe, generate_hypertopology

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def u2():
    return Universe(2)


@pytest.fixture
def u3():
    return Universe(3)


@pytest.fixture
def example3():
    """X = {0,1,2}, M = nonempty subsets, B = singletons with the empty set and X."""
    u = Universe(3)
    M = u.nonempty_subsets()
    B = u.family([[], [0], [1], [2], [0, 1, 2]])
    return u, M, B, generate_hypertopology(B, M)


@pytest.fixture
def two_point():
    """X = {0,1} indiscrete, M = {∅, X}."""
    u = Universe(2)
    T = GroundTopology.indiscrete(u)
    M = u.family([[], [0, 1]])
    return u, T, M


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("]")[1].split(".")[0])):
            terminalreporter.write_line(line)
