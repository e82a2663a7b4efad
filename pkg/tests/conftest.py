import pytest
from hypothesis import settings, strategies as st

from chiforb.digraph import OrientedGraph

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): one of the twelve acceptance criteria")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is None:
        return
    number, title = mark.args
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        prev = _acceptance.get(number, (title, "PASS"))[1]
        verdict = "PASS" if rep.passed and prev == "PASS" else "FAIL"
        _acceptance[number] = (title, verdict)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance):
        title, verdict = _acceptance[number]
        terminalreporter.write_line(f"ACCEPTANCE {number:2d} {verdict}  {title}")


@st.composite
def oriented_graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            r = draw(st.integers(0, 2))
            if r == 1:
                arcs.append((i, j))
            elif r == 2:
                arcs.append((j, i))
    return OrientedGraph(n, arcs)


@st.composite
def tournaments(draw, min_n=1, max_n=7):
    n = draw(st.integers(min_n, max_n))
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            arcs.append((i, j) if draw(st.booleans()) else (j, i))
    return OrientedGraph(n, arcs)
