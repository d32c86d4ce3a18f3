from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from ldsimplex.lp import Basis, make_lp

LP_EX1 = ([[1, 0, 1, 0], [0, 1, 0, 1]], [1, 1], [-1, -2, 0, 0])


def B(*cols, n=4):
    """1-based basis literal, as written in the docs."""
    return Basis.from_one_based(cols, n)


@pytest.fixture
def lp_ex1():
    return make_lp(*LP_EX1)


def sympy_vertices(A, b):
    """Independent oracle: every feasible basic solution via sympy's exact solver.

    Returns ``{basis (0-based sorted tuple): x as a tuple of Fractions}``.
    """
    M = sympy.Matrix(A)
    bb = sympy.Matrix(b)
    m, n = M.shape
    out = {}
    for cols in combinations(range(n), m):
        AB = M[:, list(cols)]
        if AB.det() == 0:
            continue
        xb = AB.LUsolve(bb)
        if any(v < 0 for v in xb):
            continue
        x = [Fraction(0)] * n
        for j, v in zip(cols, xb):
            x[j] = Fraction(int(sympy.fraction(v)[0]), int(sympy.fraction(v)[1]))
        out[cols] = tuple(x)
    return out


# -- acceptance summary -------------------------------------------------------

_acceptance = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = _acceptance_markers.get(report.nodeid)
    if marker is not None:
        prev = _acceptance.get(marker, True)
        _acceptance[marker] = prev and report.passed


_acceptance_markers = {}


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            _acceptance_markers[item.nodeid] = (m.args[0], m.args[1])


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for (num, title), ok in sorted(_acceptance.items()):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {title}")
