import pytest

_LINES = {}


@pytest.fixture
def record():
    """Store the one-line verdict for an acceptance criterion."""
    def _record(number, passed, detail):
        _LINES[number] = f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}"
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_LINES):
        terminalreporter.write_line(_LINES[number])
