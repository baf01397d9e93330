from __future__ import annotations

import pytest
from hypothesis import settings

settings.register_profile("default", deadline=None, max_examples=50)
settings.load_profile("default")


def pytest_configure(config):
    config.acceptance_results = {}


@pytest.fixture
def criterion(request):
    """Record the outcome of one acceptance criterion under its number."""
    results = request.config.acceptance_results

    def record(number: int, ok: bool, detail: str) -> None:
        results[number] = (ok, detail)
        print(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.acceptance_results
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        ok, detail = results[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
    passed = sum(ok for ok, _ in results.values())
    terminalreporter.write_line(f"{passed}/{len(results)} acceptance criteria passed")
