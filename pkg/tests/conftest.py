import pytest

import support

_ACCEPTANCE = []


@pytest.fixture
def illus():
    return support.illustrative()


@pytest.fixture
def gap():
    return support.punishment_gap()


@pytest.fixture
def shared():
    return support.shared_payoffs()


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _ACCEPTANCE.append((mark.args[0], mark.args[1], status))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number, title, status in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{status}] {number:>2}. {title}")
