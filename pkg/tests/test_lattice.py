import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ordharm.lattice import (
    ComplexLatticeVector,
    LatticeVector,
    UniverseMismatch,
    are_disjoint,
    complex_modulus,
    complex_modulus_oracle,
    inf,
    le,
    modulus,
    neg_part,
    negate,
    pos_part,
    sup,
)

from conftest import rationals, same_size_vectors, vectors

V = LatticeVector
floats = st.floats(min_value=-50, max_value=50, allow_nan=False)


def test_sup_examples():
    assert sup(V([1, -1]), V([0, 0])) == V([1, 0])
    assert sup(V([2, -3, 5]), V([-2, 3, 5])) == V([2, 3, 5])
    x = V([Fraction(1, 3), -2])
    assert sup(x, x) == x


def test_modulus_examples():
    assert modulus(V([1, -1])) == V([1, 1])
    assert modulus(V([0, 0])) == V([0, 0])
    assert modulus(V([-3, 0, 2])) == V([3, 0, 2])


def test_disjoint_examples():
    assert are_disjoint(V([1, 0]), V([0, -5]))
    assert not are_disjoint(V([1, 1]), V([0, 1]))
    x = V([3, -2, 0, Fraction(-1, 2)])
    assert are_disjoint(pos_part(x), neg_part(x))


def test_universe_mismatch():
    with pytest.raises(UniverseMismatch):
        sup(V([1]), V([1, 2]))
    with pytest.raises(UniverseMismatch):
        are_disjoint(V([1]), V([1, 2]))


def test_empty_vector_rejected():
    with pytest.raises(ValueError):
        V([])


@given(same_size_vectors(count=1))
def test_decomposition(vs):
    (x,) = vs
    p, n = pos_part(x), neg_part(x)
    assert modulus(x) == sup(x, negate(x))
    assert p - n == x
    assert p + n == modulus(x)
    assert p.is_positive() and n.is_positive()
    assert inf(p, n).is_zero()


@given(same_size_vectors(count=3))
def test_sup_is_least_upper_bound(vs):
    x, y, z = vs
    s = sup(x, y)
    assert le(x, s) and le(y, s)
    if le(x, z) and le(y, z):
        assert le(s, z)
    # Riesz decomposition identity
    assert sup(x, y) + inf(x, y) == x + y


@given(same_size_vectors(count=2))
def test_disjoint_moduli_add(vs):
    x, y = vs
    x = V(a if i % 2 == 0 else 0 for i, a in enumerate(x))
    y = V(b if i % 2 == 1 else 0 for i, b in enumerate(y))
    assert are_disjoint(x, y)
    assert modulus(x + y) == modulus(x) + modulus(y)


# -- complex modulus -------------------------------------------------------------

def C(re, im):
    return ComplexLatticeVector(V(re), V(im))


def test_complex_modulus_examples():
    assert complex_modulus(C([3], [4])) == V([5.0])
    assert complex_modulus(C([1, 0], [0, 1])) == V([1.0, 1.0])
    assert complex_modulus(C([-3, 2], [0, 0])) == V([3.0, 2.0])


def test_oracle_grid_four_by_hand():
    # theta in {0, pi/2, pi, 3pi/2}: values 3, 4, -3, -4
    assert complex_modulus_oracle(C([3], [4]), 4) == V([4.0])
    assert complex_modulus_oracle(C([1], [0]), 4) == V([1.0])


def test_oracle_fine_grid():
    got = complex_modulus_oracle(C([3], [4]), 10**5)
    assert abs(got[0] - 5.0) <= 1e-6


def test_oracle_rejects_coarse_grid():
    with pytest.raises(ValueError):
        complex_modulus_oracle(C([1], [1]), 3)


@st.composite
def complex_vectors(draw, count=1, max_n=5):
    n = draw(st.integers(1, max_n))
    return [C(draw(st.lists(floats, min_size=n, max_size=n)), draw(st.lists(floats, min_size=n, max_size=n)))
            for _ in range(count)]


@given(complex_vectors(count=1), st.integers(4, 400))
def test_oracle_below_closed_form_with_bounded_gap(zs, g):
    (z,) = zs
    exact = complex_modulus(z)
    approx = complex_modulus_oracle(z, g)
    for a, e in zip(approx, exact):
        assert a <= e + 1e-12 * max(1.0, e)
        assert e - a <= e * (1 - math.cos(math.pi / g)) + 1e-12 * max(1.0, e)


@given(complex_vectors(count=1), st.integers(4, 100))
def test_oracle_monotone_under_refinement(zs, g):
    (z,) = zs
    coarse = complex_modulus_oracle(z, g)
    fine = complex_modulus_oracle(z, 2 * g)
    assert le(coarse, fine, tol=1e-12)


@given(complex_vectors(count=2))
def test_complex_modulus_triangle(zs):
    z, w = zs
    if len(z) != len(w):
        return
    assert le(complex_modulus(z + w), complex_modulus(z) + complex_modulus(w), tol=1e-9)


@given(complex_vectors(count=1), floats, floats)
def test_complex_modulus_homogeneous(zs, a, b):
    (z,) = zs
    alpha = complex(a, b)
    lhs = complex_modulus(z.scale(alpha))
    for got, m in zip(lhs, complex_modulus(z)):
        assert got == pytest.approx(abs(alpha) * m, rel=1e-9, abs=1e-9)


@given(complex_vectors(count=1))
def test_complex_modulus_matches_cmath(zs):
    (z,) = zs
    for m, a, b in zip(complex_modulus(z), z.re, z.im):
        assert m == pytest.approx(abs(cmath.rect(1, 0) * complex(a, b)))
    assert complex_modulus(z).is_zero() == (z.re.is_zero() and z.im.is_zero())


@given(vectors(4, rationals))
def test_real_case_of_complex_modulus(x):
    zero = V([0] * 4)
    assert complex_modulus(ComplexLatticeVector(x, zero)) == V(float(a) for a in modulus(x))
