import pytest

ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Record a pass/fail line for an acceptance criterion under the test's outcome."""
    def record(number, text):
        ACCEPTANCE[number] = {"text": text, "node": request.node.nodeid}
    return record


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        for entry in ACCEPTANCE.values():
            if entry["node"] == item.nodeid:
                entry["passed"] = rep.passed
                entry["detail"] = "" if rep.passed else str(rep.longrepr).splitlines()[-1][:200]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        e = ACCEPTANCE[number]
        status = "PASS" if e.get("passed") else "FAIL"
        line = f"[{status}] criterion {number}: {e['text']}"
        if not e.get("passed") and e.get("detail"):
            line += f"  ({e['detail']})"
        terminalreporter.write_line(line)
