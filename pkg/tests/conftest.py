import time
from pathlib import Path

import pytest

from inference_energy.registry import load_default_bundle

DATA = Path(__file__).parent / "data"

_START = time.perf_counter()
_CRITERIA: list[tuple[str, bool, str]] = []
SUITE_BUDGET_S = 60.0


@pytest.fixture(scope="session")
def bundle():
    return load_default_bundle()


@pytest.fixture
def criterion():
    """Record one acceptance line: criterion(label, ok, detail) and return ok."""
    def record(label: str, ok: bool, detail: str = "") -> bool:
        _CRITERIA.append((label, bool(ok), detail))
        return bool(ok)
    return record


def pytest_terminal_summary(terminalreporter):
    elapsed = time.perf_counter() - _START
    _CRITERIA.append(("9b suite runtime < 60 s", elapsed < SUITE_BUDGET_S, f"{elapsed:.1f} s"))
    terminalreporter.section("acceptance criteria")
    for label, ok, detail in _CRITERIA:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  [{detail}]" if detail else ""))


def pytest_sessionfinish(session, exitstatus):
    if time.perf_counter() - _START >= SUITE_BUDGET_S and exitstatus == 0:
        session.exitstatus = 1
