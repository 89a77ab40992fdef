import pytest

_CRITERIA_LINES = []


@pytest.fixture(scope="session")
def criteria_log():
    return _CRITERIA_LINES


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _CRITERIA_LINES:
        terminalreporter.section("acceptance criteria")
        for line in _CRITERIA_LINES:
            terminalreporter.write_line(line)
