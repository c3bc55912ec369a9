import pytest

CRITERIA: dict = {}


@pytest.fixture
def criterion(request):
    """Record a PASS/FAIL line for one numbered acceptance criterion."""
    state = {}

    def start(number: int, title: str):
        state["key"] = (number, title)
        CRITERIA[(number, title)] = "FAIL"

    yield start
    key = state.get("key")
    if key is None:
        return
    rep = getattr(request.node, "rep_call", None)
    CRITERIA[key] = "PASS" if rep is not None and rep.passed else "FAIL"
    print(f"\ncriterion {key[0]:2d} {CRITERIA[key]}: {key[1]}")


@pytest.hookimpl(hookwrapper=True, tryfirst=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for (number, title), status in sorted(CRITERIA.items()):
        terminalreporter.write_line(f"criterion {number:2d} {status}: {title}")
