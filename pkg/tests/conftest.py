import sys

import pytest

from gpdcalc.exterior import covector_frame, parse_element, vector_frame
from gpdcalc.poly import Chart, parse_poly

QP = Chart(("q", "p"))
XY = Chart(("x", "y"))


def poly(text, chart=QP):
    return parse_poly(text, chart)


def form(text, chart=QP, degree=None):
    return parse_element(text, covector_frame(chart), degree)


def vec(text, chart=QP, degree=None):
    return parse_element(text, vector_frame(chart), degree)


@pytest.fixture
def P_qp():
    return vec("Dq*Dp")


def pytest_terminal_summary(terminalreporter):
    results = getattr(sys.modules.get("test_acceptance"), "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
