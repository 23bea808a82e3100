import pytest

_criteria: list[tuple[str, str]] = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if item.module.__name__ != "test_acceptance" or rep.when != "call":
        if not (rep.when == "setup" and rep.failed and item.module.__name__ == "test_acceptance"):
            return
    doc = (item.function.__doc__ or item.name).strip().splitlines()[0]
    extra = getattr(item, "criterion_note", "")
    line = f"{doc}{' | ' + extra if extra else ''}"
    _criteria.append(("PASS" if rep.passed else "FAIL", line))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for status, line in _criteria:
        terminalreporter.write_line(f"[{status}] {line}")


@pytest.fixture
def note(request):
    """Attach a short result note to the acceptance summary line."""

    def _note(text: str) -> None:
        request.node.criterion_note = text

    return _note
