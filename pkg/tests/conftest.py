import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from gcmirror.generalized_algebra import GVector, TwoForm, flat_frame, torus_frame

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

rationals = st.fractions(min_value=-40, max_value=40, max_denominator=15)
positive_rationals = st.fractions(min_value=Fraction(1, 15), max_value=40, max_denominator=15)


@st.composite
def moduli(draw):
    return draw(rationals), draw(positive_rationals)


@st.composite
def two_forms(draw, n):
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = draw(rationals)
            m[i][j], m[j][i] = v, -v
    return TwoForm(m)


@st.composite
def gvectors(draw, frame):
    return GVector(frame, tuple(draw(rationals) for _ in range(frame.dim)))


@pytest.fixture
def T2():
    return torus_frame()


@pytest.fixture
def T4():
    return flat_frame(4)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
