import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_ACCEPT_KEY = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[_ACCEPT_KEY] = []


@pytest.fixture
def verdict(request):
    """Record one PASS/FAIL line per acceptance check; printed in the terminal summary."""
    lines = request.config.stash[_ACCEPT_KEY]

    def record(name: str, ok: bool, detail: str = "") -> bool:
        line = f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else "")
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_ACCEPT_KEY, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
