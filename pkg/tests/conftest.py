import pytest

from gluemin import glue, make_space

_ACCEPTANCE = []


@pytest.fixture
def record():
    """Record an acceptance line, printed again in the terminal summary."""
    def rec(number, ok, detail):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        _ACCEPTANCE.append(line)
        return ok
    return rec


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def two_lines_at_0():
    return glue([1, 1], [(0, 1, [], [[0]])])


@pytest.fixture
def two_lines():
    return make_space([1, 1])
