import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordharm.algebra import Weight, WeightedL1Element, beurling_norm
from ordharm.lattice import LatticeVector
from ordharm.lp import LpElement, NotAGroup, lp_action, lp_norm
from ordharm.operators import left_regular_matrix
from ordharm.semigroup import classify, cyclic_group, null_semigroup, symmetric_group

from conftest import CATALOG, vectors

GROUPS = [S for S in CATALOG if classify(S).is_group]
Z2 = cyclic_group(2)


def test_lp_norm_examples():
    assert lp_norm(LpElement(LatticeVector([3, 4]), 2, Z2)) == 5.0
    g = LatticeVector([1, Fraction(-5, 2)])
    assert lp_norm(LpElement(g, 1, Z2)) == beurling_norm(WeightedL1Element(g, Weight.trivial(Z2)))
    assert lp_norm(LpElement(LatticeVector([1, 1]), 3, Z2)) == pytest.approx(2 ** (1 / 3), abs=1e-12)


def test_p_below_one_rejected():
    with pytest.raises(ValueError):
        LpElement(LatticeVector([1, 1]), 0.5, Z2)


def test_action_examples():
    w = Weight.trivial(Z2)
    g = LpElement(LatticeVector([Fraction(1, 3), -2]), 2, Z2)
    assert lp_action(WeightedL1Element.delta(w, 0), g) == g
    swapped = lp_action(WeightedL1Element.delta(w, 1), g)
    assert swapped.vector == LatticeVector([-2, Fraction(1, 3)])
    assert lp_norm(swapped) == lp_norm(g)
    ones = WeightedL1Element(LatticeVector([1, 1]), w)
    out = lp_action(ones, LpElement(LatticeVector([1, 0]), 2, Z2))
    assert out.vector == LatticeVector([1, 1])
    assert lp_norm(out) == pytest.approx(math.sqrt(2))
    assert lp_norm(out) <= beurling_norm(ones) * 1


def test_action_requires_group_and_trivial_weight():
    N = null_semigroup(2)
    with pytest.raises(NotAGroup):
        lp_action(WeightedL1Element.delta(Weight.trivial(N), 0), LpElement(LatticeVector([1, 0]), 1, N))
    w = Weight(Z2, [1, 2])
    with pytest.raises(ValueError):
        lp_action(WeightedL1Element.delta(w, 0), LpElement(LatticeVector([1, 0]), 1, Z2))


def direct_action(G, mu, g):
    """(mu * g)(s) = sum over t u = s of mu(t) g(u), written without inverses."""
    out = [0] * G.order
    for t in range(G.order):
        for u in range(G.order):
            out[G.table[t][u]] += mu[t] * g[u]
    return LatticeVector(out)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
@given(data=st.data())
def test_action_matches_direct_sum_and_matrix(G, data):
    w = Weight.trivial(G)
    mu = WeightedL1Element(data.draw(vectors(G.order)), w)
    g = data.draw(vectors(G.order))
    got = lp_action(mu, LpElement(g, 2, G)).vector
    assert got == direct_action(G, mu.coords, g)
    assert got == left_regular_matrix(mu).apply(g)


floats = st.floats(-20, 20, allow_nan=False)


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
@pytest.mark.parametrize("p", [1, 2, 3, 1.5])
@given(data=st.data())
def test_contraction(G, p, data):
    w = Weight.trivial(G)
    mu = WeightedL1Element(LatticeVector(data.draw(st.lists(floats, min_size=G.order, max_size=G.order))), w)
    g = LpElement(LatticeVector(data.draw(st.lists(floats, min_size=G.order, max_size=G.order))), p, G)
    lhs = float(lp_norm(lp_action(mu, g)))
    rhs = float(beurling_norm(mu)) * float(lp_norm(g))
    assert lhs <= rhs + 1e-9 * max(1.0, rhs)


@pytest.mark.parametrize("G", [cyclic_group(5), symmetric_group(3)], ids=lambda G: G.name)
@given(data=st.data())
def test_attainment_on_constants(G, data):
    w = Weight.trivial(G)
    mu = WeightedL1Element(data.draw(vectors(G.order, st.fractions(0, 9, max_denominator=3))), w)
    ones = LatticeVector([1] * G.order)
    assert lp_norm(lp_action(mu, LpElement(ones, 1, G))) == beurling_norm(mu) * G.order
    for p in (2, 3):
        got = lp_norm(lp_action(mu, LpElement(ones, p, G)))
        assert got == pytest.approx(float(beurling_norm(mu)) * G.order ** (1 / p), abs=1e-9)
