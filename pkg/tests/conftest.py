import os

import pytest

ACCEPTANCE_LINES = []


@pytest.fixture
def acceptance_record():
    """Collects one summary line per acceptance criterion."""

    def record(number, title, ok, detail):
        line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)


def pytest_configure(config):
    os.environ.setdefault("SECTOR_DIRAC_THREADS", "1")
