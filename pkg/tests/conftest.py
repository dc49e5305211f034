import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_report():
    """Callable recording one 'criterion N: PASS/FAIL' line."""

    def record(line):
        ACCEPTANCE_LINES.append(line)
        print("\n" + line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
