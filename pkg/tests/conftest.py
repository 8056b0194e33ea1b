import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def record():
    def _record(number, name, passed, detail=""):
        line = f"criterion {number}: {'PASS' if passed else 'FAIL'}  {name}"
        if detail:
            line += f"  ({detail})"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
