import itertools

import pytest

from tipdecomp.graph import DirectedGraph, symmetrize


def undirected(edges, n=None):
    return symmetrize(DirectedGraph.from_edges(list(edges), n=n))


def complete(n):
    return undirected(itertools.combinations(range(n), 2), n=n)


def cycle(n):
    return undirected(((i, (i + 1) % n) for i in range(n)), n=n)


@pytest.fixture
def c4():
    return cycle(4)


@pytest.fixture
def k4():
    return complete(4)


@pytest.fixture
def two_k5_bridge():
    a = list(itertools.combinations(range(5), 2))
    b = [(u + 5, v + 5) for u, v in a]
    return undirected(a + b + [(4, 5)])


@pytest.fixture
def two_triangles():
    return undirected([(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])


# -- acceptance summary: one line per criterion ------------------------------

_ACCEPTANCE: dict[str, list[str]] = {}
_NOTES: dict[str, list[str]] = {}


@pytest.fixture
def note(request):
    """Attach a detail line to the acceptance summary of the current criterion."""
    marker = request.node.get_closest_marker("acceptance")
    label = marker.args[0] if marker else request.node.name
    return lambda msg: _NOTES.setdefault(label, []).append(str(msg))


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    label = marker.args[0]
    if rep.when == "call" or (rep.when == "setup" and rep.skipped):
        status = "SKIP" if rep.skipped else ("PASS" if rep.passed else "FAIL")
        _ACCEPTANCE.setdefault(label, []).append(status)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[0][2:])):
        statuses = _ACCEPTANCE[label]
        if "FAIL" in statuses:
            status = "FAIL"
        elif all(s == "SKIP" for s in statuses):
            status = "SKIP"
        else:
            status = "PASS"
        terminalreporter.write_line(f"[{status}] {label}")
        for line in _NOTES.get(label, []):
            terminalreporter.write_line(f"         {line}")
