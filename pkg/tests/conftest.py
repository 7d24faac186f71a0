import pytest

ACCEPTANCE: dict[str, list[tuple[bool, str]]] = {}


def record(tag: str, ok: bool, detail: str = "") -> None:
    ACCEPTANCE.setdefault(tag, []).append((bool(ok), detail))
    print(f"{tag} {'PASS' if ok else 'FAIL'} {detail}")


@pytest.fixture
def accept():
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(ACCEPTANCE, key=lambda t: int(t[1:])):
        runs = ACCEPTANCE[tag]
        ok = all(r[0] for r in runs)
        detail = runs[0][1] if len(runs) == 1 else f"{sum(r[0] for r in runs)}/{len(runs)} cases pass"
        terminalreporter.write_line(f"{tag}: {'PASS' if ok else 'FAIL'}  {detail}")
