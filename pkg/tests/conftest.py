import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

# criterion label -> list of (passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def record(label: str, passed: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(label, []).append((bool(passed), detail))


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0]), s)):
        rows = ACCEPTANCE[label]
        ok = all(p for p, _ in rows)
        failed = [d for p, d in rows if not p]
        line = f"{'PASS' if ok else 'FAIL'}  criterion {label}  ({len(rows) - len(failed)}/{len(rows)} checks)"
        terminalreporter.write_line(line)
        reported = [d for p, d in rows if p and d.startswith("reported")]
        for d in failed[:8] + reported[:8]:
            terminalreporter.write_line(f"      {d}")
