import time

import pytest


def pytest_configure(config):
    config._acceptance = {}


@pytest.fixture
def criterion(request):
    """Record one acceptance criterion; the summary prints a line per criterion."""
    start = time.perf_counter()

    def record(number: int, title: str, ok: bool, detail: str = ""):
        elapsed = time.perf_counter() - start
        request.config._acceptance[number] = (title, ok, detail, elapsed)
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({elapsed:.2f}s) {detail}".rstrip()
        print(line)
        assert ok, line

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance", {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, detail, elapsed = results[number]
        terminalreporter.write_line(
            f"[{'PASS' if ok else 'FAIL'}] criterion {number:2d}: {title} ({elapsed:.2f}s) {detail}".rstrip())
