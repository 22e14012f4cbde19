import pytest

from pagination import Instance


@pytest.fixture
def four_tiles():
    """abcde def efg hijk with capacity 7."""
    return Instance.from_words("abcde def efg hijk", 7)



_CRITERIA: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def criterion():
    """Record the outcome of an acceptance criterion for the final summary."""

    def record(number, ok, detail):
        _CRITERIA[number] = (bool(ok), detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    ran = any("test_acceptance" in r.nodeid
              for key in ("passed", "failed", "error")
              for r in terminalreporter.stats.get(key, []))
    if not ran:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, 10):
        ok, detail = _CRITERIA.get(n, (False, "did not run to completion"))
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
