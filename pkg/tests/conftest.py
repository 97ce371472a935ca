import pytest

from spincs.cohomology import s1_x_s2, torus3

# acceptance criteria report one line each; collected here and printed at the end
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def t3():
    return torus3()


@pytest.fixture
def s1s2():
    return s1_x_s2()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
