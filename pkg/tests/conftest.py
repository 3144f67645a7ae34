import pytest

_ACCEPTANCE = {}


@pytest.fixture
def acceptance():
    """Record one acceptance criterion's outcome for the end-of-run summary."""

    def record(number, name, ok, detail=""):
        _ACCEPTANCE[number] = (name, bool(ok), detail)
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {name} {detail}")

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        name, ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] {number}. {name}" + (f" ({detail})" if detail else ""))
