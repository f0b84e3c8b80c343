import pytest

from gkzint.corpus import corpus_config


@pytest.fixture(scope="session")
def E1():
    return corpus_config("E1")


@pytest.fixture(scope="session")
def E2():
    return corpus_config("E2")


@pytest.fixture(scope="session")
def E3():
    return corpus_config("E3")


@pytest.fixture(scope="session")
def E4():
    return corpus_config("E4")


@pytest.fixture(scope="session")
def E5():
    return corpus_config("E5")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep
