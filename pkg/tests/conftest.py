from fractions import Fraction

import pytest
from hypothesis import strategies as st

from chaoslab.symbolic import EPWord, canonicalize

bits = st.integers(0, 1)


@st.composite
def epwords(draw, max_pre=16, max_cycle=8):
    pre = draw(st.lists(bits, max_size=max_pre))
    cyc = draw(st.lists(bits, min_size=1, max_size=max_cycle))
    return canonicalize(pre, cyc)


@st.composite
def unit_rationals(draw, max_den=10**6):
    q = draw(st.integers(1, max_den))
    a = draw(st.integers(0, q))
    return Fraction(a, q)


def partial_metric(a: EPWord, b: EPWord, terms: int = 200) -> Fraction:
    """Brute-force truncated series; error at most 2^(1-terms)."""
    return sum((Fraction(1, 2**i) for i in range(terms) if a.bit(i) != b.bit(i)), Fraction(0))


def raw_tent(x: Fraction) -> Fraction:
    return 1 - abs(2 * x - 1)


@pytest.fixture
def half():
    return Fraction(1, 2)


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
        terminalreporter.write_line(line)
