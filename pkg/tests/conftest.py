import pytest

# Acceptance results collected by tests/test_acceptance.py, printed once at the end.
ACCEPTANCE: dict[int, list[tuple[bool, str]]] = {}


def record(criterion: int, ok: bool, detail: str) -> None:
    ACCEPTANCE.setdefault(criterion, []).append((bool(ok), detail))


@pytest.fixture
def acceptance():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        rows = ACCEPTANCE[n]
        ok = all(r[0] for r in rows)
        tr.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} ({sum(r[0] for r in rows)}/{len(rows)} checks)")
        for good, detail in rows:
            tr.write_line(f"    [{'ok' if good else 'FAIL'}] {detail}")
