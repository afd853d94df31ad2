from fractions import Fraction

import pytest
from hypothesis import strategies as st

from qdisc import NormalPolynomial, QContext

ACCEPTANCE_LINES = []

Q_VALUES = ["1/2", "2/3"]


@pytest.fixture(params=Q_VALUES)
def ctx(request):
    return QContext(request.param)


@pytest.fixture
def half():
    return QContext("1/2")


def mono(i, j, c=1):
    return NormalPolynomial.monomial(i, j, c)


small_fractions = st.builds(
    Fraction,
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=12),
)


@st.composite
def polynomials(draw, max_degree=3, max_terms=4):
    n = draw(st.integers(min_value=0, max_value=max_terms))
    terms = {}
    for _ in range(n):
        i = draw(st.integers(min_value=0, max_value=max_degree))
        j = draw(st.integers(min_value=0, max_value=max_degree - i))
        terms[(i, j)] = draw(small_fractions)
    return NormalPolynomial(terms)


@pytest.fixture
def criterion():
    """Record one acceptance line; printed in the terminal summary."""
    def record(number, ok, detail):
        ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
        assert ok, detail
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
