import pytest

from wordrep.graph import Graph

_CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    _CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        ok, detail = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}")


def make(n, edges):
    return Graph.from_edges(n, edges)


@pytest.fixture
def k3():
    return make(3, [(1, 2), (2, 3), (1, 3)])


@pytest.fixture
def c4():
    return make(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


@pytest.fixture
def k4():
    return make(4, [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


@pytest.fixture
def p3():
    return make(3, [(1, 2), (2, 3)])


@pytest.fixture
def w5():
    from wordrep.corpus import corpus_get
    return corpus_get("w5").graph
