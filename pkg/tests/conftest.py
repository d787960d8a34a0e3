import itertools
from fractions import Fraction

import pytest

from adedefect.fields import NumberField
from adedefect.grammar import parse_polynomial

LOCAL_VARS = ("x", "y", "z", "w")


def local_poly(text):
    return parse_polynomial(text, LOCAL_VARS)


def segre_nodes():
    """The ten nodes of the Segre cubic, normalized so x0 = 1."""
    out = set()
    for p in itertools.permutations((1, 1, 1, -1, -1, -1)):
        q = p[:5]
        if q[0] < 0:
            q = tuple(-x for x in q)
        out.add(q)
    return [tuple(Fraction(x) for x in q) for q in sorted(out, reverse=True)]


SEGRE = "x0^3 + x1^3 + x2^3 + x3^3 + x4^3 - (x0 + x1 + x2 + x3 + x4)^3"


@pytest.fixture(scope="session")
def qi():
    return NumberField("i", [1, 0, 1])


_ACCEPTANCE = {}


def pytest_runtest_logreport(report):
    name = report.nodeid.rsplit("::", 1)[-1]
    if "test_acceptance.py" in report.nodeid and name.startswith("test_criterion_"):
        if report.when == "call" or report.failed:
            _ACCEPTANCE.setdefault(int(name.rsplit("_", 1)[1]),
                                   "PASS" if report.passed else "FAIL")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    import test_acceptance
    terminalreporter.section("acceptance criteria")
    for i in sorted(_ACCEPTANCE):
        label = test_acceptance._label(test_acceptance.CRITERIA[i - 1])
        terminalreporter.write_line(f"criterion {i}: {_ACCEPTANCE[i]} - {label}")
