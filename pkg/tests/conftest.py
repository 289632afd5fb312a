import pytest

from rexint.syntax import parse

# acceptance results, filled by tests/test_acceptance.py and printed at the end
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


def record(name: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE[name] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")


@pytest.fixture
def P():
    return parse
