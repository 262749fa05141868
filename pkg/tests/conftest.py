import pytest

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(n, passed, detail)."""

    def record(n, passed, detail):
        ACCEPTANCE[n] = (bool(passed), detail)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    passed = sum(ok for ok, _ in ACCEPTANCE.values())
    terminalreporter.write_line(f"{passed}/{len(ACCEPTANCE)} criteria pass")
