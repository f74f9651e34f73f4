from __future__ import annotations

import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

ROTATION_345 = ((Fraction(3, 5), Fraction(-4, 5)), (Fraction(4, 5), Fraction(3, 5)))


def small_fractions(lo=-3, hi=3, max_den=6):
    return st.builds(
        lambda n, d: Fraction(n, d),
        st.integers(lo * max_den, hi * max_den),
        st.integers(1, max_den),
    ).filter(lambda x: lo <= x <= hi)


def unit_fractions(max_den=6):
    """Rationals in (0, 1]."""
    return st.builds(lambda d, n: Fraction(n, d), st.integers(1, max_den), st.integers(1, max_den)).filter(
        lambda x: 0 < x <= 1
    )


@pytest.fixture
def rotation345():
    from mgl import Mat2

    (a, b), (c, d) = ROTATION_345
    return Mat2(a, b, c, d)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "REPORT", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
