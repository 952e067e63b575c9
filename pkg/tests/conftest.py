import pytest

from lrcforge.lrc import ConstructionKind, LrcParams, construct

# (q, n, r, delta, kind, target_d)
FIXTURES = {
    "ex1-n5": (11, 5, 3, 3, "t1", None),
    "ex1-n10": (11, 10, 3, 3, "t1", None),
    "ex1-n15": (11, 15, 3, 3, "t1", None),
    "ex1-n20": (11, 20, 3, 3, "t1", None),
    "ex1-n25": (11, 25, 3, 3, "t1", None),
    "ex1-n30": (11, 30, 3, 3, "t1", None),
    "ex2": (19, 27, 4, 6, "t2", None),
    "ex3": (7, 30, 4, 3, "t3", None),
    "rem3-d4": (7, 30, 4, 3, "remark3", 4),
    "rem3-d5": (7, 30, 4, 3, "remark3", 5),
    "rem3-d6": (7, 30, 4, 3, "remark3", 6),
    "t4": (13, 21, 5, 3, "t4", None),
}

_codes = {}


def params_kind(name):
    q, n, r, delta, tag, d = FIXTURES[name]
    return LrcParams(q, n, r, delta), ConstructionKind.parse(tag, d)


def fixture_code(name):
    if name not in _codes:
        _codes[name] = construct(*params_kind(name))
    return _codes[name]


_acceptance = {}


@pytest.fixture
def acceptance(request):
    """Record one pass/fail verdict per acceptance criterion."""

    def record(label, passed, detail=""):
        _acceptance[label] = (bool(passed), detail)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_acceptance, key=lambda s: int(s.split()[0])):
        ok, detail = _acceptance[label]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {label}  {detail}")
