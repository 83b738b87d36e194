import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from sposet.library import trivial_monoid, u2, z2  # noqa: E402


@pytest.fixture
def T1():
    return trivial_monoid()


@pytest.fixture
def U2():
    return u2("e<1")


@pytest.fixture
def U2t():
    return u2("trivial")


@pytest.fixture
def Z2():
    return z2()


ACCEPTANCE = {}


def record(criterion: int, ok: bool, detail: str = ""):
    ACCEPTANCE[criterion] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
