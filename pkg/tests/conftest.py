import pytest

# criterion number -> list of (label, passed, detail); filled by test_acceptance
ACCEPTANCE = {}


def record(criterion, label, passed, detail=""):
    ACCEPTANCE.setdefault(criterion, []).append((label, bool(passed), detail))
    return passed


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for crit in sorted(ACCEPTANCE):
        parts = ACCEPTANCE[crit]
        status = "PASS" if all(ok for _, ok, _ in parts) else "FAIL"
        failed = [f"{label} ({detail})" for label, ok, detail in parts if not ok]
        suffix = f"  failing: {'; '.join(failed)}" if failed else f"  [{len(parts)} checks]"
        terminalreporter.write_line(f"criterion {crit:2d}: {status}{suffix}")


@pytest.fixture
def acceptance():
    return record

