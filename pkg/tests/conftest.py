from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from ordharm.algebra import Weight, WeightedL1Element
from ordharm.lattice import LatticeVector
from ordharm.semigroup import builtin_catalog

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

CATALOG = builtin_catalog(6)
SMALL_CATALOG = builtin_catalog(4)

rationals = st.builds(
    Fraction,
    st.integers(min_value=-9, max_value=9),
    st.sampled_from([1, 2, 3]),
)


def vectors(n, elements=rationals):
    return st.lists(elements, min_size=n, max_size=n).map(LatticeVector)


@st.composite
def same_size_vectors(draw, count=2, max_n=8, elements=rationals):
    n = draw(st.integers(min_value=1, max_value=max_n))
    return [draw(vectors(n, elements)) for _ in range(count)]


@st.composite
def algebra_elements(draw, count=2, catalog=SMALL_CATALOG):
    S = draw(st.sampled_from(catalog))
    w = Weight.trivial(S)
    return S, [WeightedL1Element(draw(vectors(S.order)), w) for _ in range(count)]


@pytest.fixture
def catalog():
    return CATALOG


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
