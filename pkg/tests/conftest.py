import pytest

ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def report():
    def _report(number: int, title: str, failures: list[str]):
        status = "PASS" if not failures else "FAIL"
        line = f"criterion {number:2d} [{status}] {title}"
        if failures:
            line += " :: " + "; ".join(failures[:3]) + (f" (+{len(failures) - 3} more)" if len(failures) > 3 else "")
        ACCEPTANCE_LINES[number] = line
        print(line)
        assert not failures, line

    return _report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
