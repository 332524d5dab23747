import pytest

from linkdensity import build_stream


@pytest.fixture
def abc_stream():
    """Pair a-b at 2, 5, 8 in [0, 10], plus a-c once and an isolated d-e link."""
    return build_stream(
        [(2, "a", "b"), (5, "b", "a"), (8, "a", "b"), (4, "a", "c"), (6, "d", "e")],
        alpha=0,
        omega=10,
    )


@pytest.fixture
def triangle():
    return build_stream([(1, "a", "b"), (2, "b", "c"), (3, "a", "c")], alpha=0, omega=4)


def star_events(hub, leaves, times):
    return [(t, hub, leaf) for leaf in leaves for t in times]


_ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    """Log one PASS/FAIL line for an acceptance criterion."""

    def _record(criterion, passed, detail=""):
        _ACCEPTANCE.append(f"{'PASS' if passed else 'FAIL'}  {criterion}  {detail}".rstrip())
        return passed

    return _record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
