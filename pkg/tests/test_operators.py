import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from ordharm.algebra import Weight, WeightedL1Element, beurling_norm, convolve
from ordharm.lattice import LatticeVector
from ordharm.operators import (
    CutoffExceeded,
    RegularOperator,
    ShapeMismatch,
    commutant_basis,
    left_convolution_preimage,
    left_regular_matrix,
    nullspace,
    operator_inf,
    operator_modulus,
    operator_sup,
    regular_norm,
    right_translation_matrix,
    rk_inf_oracle,
    rk_modulus_oracle,
    rk_sup_oracle,
    weighted_operator_norm,
)
from ordharm.semigroup import classify, cyclic_group, null_semigroup, symmetric_group
from ordharm.lp import NotAGroup

from conftest import CATALOG, algebra_elements, rationals

R = RegularOperator
GROUPS = [S for S in CATALOG if classify(S).is_group]


def fraction_box_sup(T, x):
    """Independent route: itertools over sign vectors in pure Fraction arithmetic."""
    m, n = T.shape
    best = [Fraction(0)] * m
    for signs in itertools.product((-1, 1), repeat=n):
        y = [s * v for s, v in zip(signs, x)]
        for i in range(m):
            best[i] = max(best[i], abs(sum(a * b for a, b in zip(T.matrix[i], y))))
    return LatticeVector(best)


def fraction_split(S, T, x, pick):
    m, n = S.shape
    out = None
    for bits in itertools.product((0, 1), repeat=n):
        val = [sum((S.matrix[i][j] if bits[j] else T.matrix[i][j]) * x[j] for j in range(n)) for i in range(m)]
        out = val if out is None else [pick(a, b) for a, b in zip(out, val)]
    return LatticeVector(out)


@st.composite
def matrices(draw, max_dim=5, count=1):
    m = draw(st.integers(1, max_dim))
    n = draw(st.integers(1, max_dim))
    mats = [R(draw(st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=m, max_size=m)))
            for _ in range(count)]
    x = draw(st.lists(st.fractions(0, 9, max_denominator=3), min_size=n, max_size=n))
    return mats, x


def test_modulus_example():
    T = R([[1, -2], [-3, 4]])
    assert operator_modulus(T).matrix == R([[1, 2], [3, 4]]).matrix
    assert fraction_box_sup(T, [1, 1]) == LatticeVector([3, 7])
    assert rk_modulus_oracle(T, [1, 1]) == LatticeVector([3, 7])
    assert rk_modulus_oracle(T, [0, 0]).is_zero()
    P = R([[1, 2], [0, 3]])
    assert operator_modulus(P) == P
    assert rk_modulus_oracle(P, [2, 5]) == P.apply([2, 5])


def test_sup_inf_examples():
    S, T = R([[1, 0], [0, 0]]), R([[0, 0], [0, 1]])
    assert operator_sup(S, T).matrix == R([[1, 0], [0, 1]]).matrix
    assert fraction_split(S, T, [1, 1], max) == LatticeVector([1, 1])
    assert operator_inf(S, T).matrix == R([[0, 0], [0, 0]]).matrix
    assert fraction_split(S, T, [1, 1], min) == LatticeVector([0, 0])
    assert operator_sup(S, S) == S and operator_inf(S, S) == S
    A = R([[1, -2], [-3, 4]])
    assert operator_sup(A, -A) == operator_modulus(A)


@given(matrices(count=1))
def test_rk_modulus_oracle(data):
    (T,), x = data
    closed = operator_modulus(T).apply(x)
    assert rk_modulus_oracle(T, x) == closed
    assert fraction_box_sup(T, x) == closed


@given(matrices(count=2))
def test_rk_split_oracles(data):
    (S, T), x = data
    assert rk_sup_oracle(S, T, x) == operator_sup(S, T).apply(x) == fraction_split(S, T, x, max)
    assert rk_inf_oracle(S, T, x) == operator_inf(S, T).apply(x) == fraction_split(S, T, x, min)


@given(matrices(count=2))
def test_operator_lattice_identities(data):
    (S, T), _ = data
    assert operator_modulus(T) == operator_sup(T, -T)
    assert operator_sup(S, T) + operator_inf(S, T) == S + T


def test_oracle_cutoff_and_input_checks():
    T = R([[1] * 13])
    with pytest.raises(CutoffExceeded):
        rk_modulus_oracle(T, [1] * 13)
    assert rk_modulus_oracle(T, [1] * 13, cutoff=13) == LatticeVector([13])
    with pytest.raises(ValueError):
        rk_modulus_oracle(R([[1]]), [-1])
    with pytest.raises(ShapeMismatch):
        rk_sup_oracle(R([[1]]), R([[1, 2]]), [1])


def test_big_entries_fall_back_to_python_ints():
    big = Fraction(10**15, 7)
    T = R([[big, -big], [-big, 3]])
    x = [Fraction(10**6), Fraction(1, 11)]
    assert rk_modulus_oracle(T, x) == operator_modulus(T).apply(x) == fraction_box_sup(T, x)


# -- norms ---------------------------------------------------------------------------

def test_norm_examples():
    assert weighted_operator_norm(R([[1, 0], [0, 1]], (1, 2), (1, 2))) == 1
    # columns: (0*1 + 1*2)/1 = 2, (1*1 + 0*2)/2 = 1/2
    assert weighted_operator_norm(R([[0, 1], [1, 0]], (1, 2), (1, 2))) == 2
    assert weighted_operator_norm(R([[0, 0, 1], [1, 0, 0], [0, 1, 0]])) == 1
    assert regular_norm(R([[1, -1]])) == 1
    assert regular_norm(R([[0, 0], [0, 0]])) == 0
    P = R([[1, 2], [3, 4]], (1, 3), (2, 1))
    assert regular_norm(P) == weighted_operator_norm(P)


def norm_by_vertices(T):
    """The l1(w) unit ball has vertices +-e_j / w_j; the operator norm is attained at one."""
    m, n = T.shape
    best = Fraction(0)
    for j in range(n):
        y = [Fraction(0)] * n
        y[j] = 1 / T.domain_weight[j]
        Ty = T.apply(y)
        best = max(best, sum(abs(v) * w for v, w in zip(Ty, T.codomain_weight)))
    return best


@given(matrices(count=1), st.lists(st.fractions(1, 5, max_denominator=4).filter(lambda v: v > 0), min_size=10, max_size=10))
def test_weighted_norm_vs_vertex_evaluation(data, ws):
    (T,), _ = data
    m, n = T.shape
    T = R(T.matrix, ws[:n], ws[n:n + m] if m <= 10 - n else ws[:m])
    assert weighted_operator_norm(T) == norm_by_vertices(T)
    assert regular_norm(T) >= weighted_operator_norm(T)


@given(matrices(count=2))
def test_regular_norm_submultiplicative(data):
    (S, T), _ = data
    if S.shape[1] != T.shape[0]:
        T = R([list(r) for r in T.matrix[:1]] * S.shape[1])
    assert regular_norm(S @ T) <= regular_norm(S) * regular_norm(T)


# -- representations -----------------------------------------------------------------

def test_left_regular_examples():
    Z2 = cyclic_group(2)
    w = Weight.trivial(Z2)
    assert left_regular_matrix(WeightedL1Element.delta(w, 0)).matrix == R([[1, 0], [0, 1]]).matrix
    assert left_regular_matrix(WeightedL1Element.delta(w, 1)).matrix == R([[0, 1], [1, 0]]).matrix
    N = null_semigroup(2)
    x = WeightedL1Element(LatticeVector([2, -5]), Weight.trivial(N))
    assert left_regular_matrix(x).matrix == R([[-3, -3], [0, 0]]).matrix


@given(algebra_elements(count=2, catalog=CATALOG))
def test_representation_property(data):
    S, (x, y) = data
    Px, Py = left_regular_matrix(x), left_regular_matrix(y)
    assert Px.apply(y.vector) == convolve(x, y).vector
    assert left_regular_matrix(convolve(x, y)).matrix == (Px @ Py).matrix
    assert left_regular_matrix(x + y).matrix == (Px + Py).matrix
    assert left_regular_matrix(x.abs()).is_positive()


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
@given(data=st.data())
def test_isometry_on_groups(G, data):
    w = Weight.trivial(G)
    x = WeightedL1Element(LatticeVector(data.draw(st.lists(rationals, min_size=G.order, max_size=G.order))), w)
    assert weighted_operator_norm(left_regular_matrix(x)) == beurling_norm(x)


def test_right_translations():
    Z2, Z3, S3 = cyclic_group(2), cyclic_group(3), symmetric_group(3)
    assert right_translation_matrix(Z2, 0).matrix == R([[1, 0], [0, 1]]).matrix
    assert right_translation_matrix(Z2, 1).matrix == R([[0, 1], [1, 0]]).matrix
    for G in (Z3, S3):
        n = G.order
        for t, u in itertools.product(range(n), repeat=2):
            # (rho_t rho_u f)(s) = (rho_u f)(s t) = f(s t u)
            lhs = right_translation_matrix(G, t) @ right_translation_matrix(G, u)
            assert lhs.matrix == right_translation_matrix(G, G.table[t][u]).matrix
    with pytest.raises(NotAGroup):
        right_translation_matrix(null_semigroup(2), 0)


def test_nullspace_small():
    basis = nullspace([[1, 1, 0], [0, 0, 1]], 3)
    assert basis == [[-1, 1, 0]]
    assert nullspace([], 2) == [[1, 0], [0, 1]]


def commutant_dim_by_rank(G):
    """Independent route: floating-point rank of the stacked commutation constraints."""
    n = G.order
    rows = []
    for t in range(n):
        Rm = np.array(right_translation_matrix(G, t).matrix, dtype=float)
        # vec(T R - R T) = (R^T kron I - I kron R) vec(T) in column-major vec
        rows.append(np.kron(Rm.T, np.eye(n)) - np.kron(np.eye(n), Rm))
    return n * n - np.linalg.matrix_rank(np.vstack(rows))


def test_commutant_z2_by_hand():
    # T = [[a, b], [c, d]] commutes with the swap iff a = d and b = c
    basis = commutant_basis(cyclic_group(2))
    assert len(basis) == 2
    for B in basis:
        (a, b), (c, d) = B.matrix
        assert a == d and b == c


@pytest.mark.parametrize("G", GROUPS, ids=lambda G: G.name)
def test_commutant_is_left_convolutions(G):
    basis = commutant_basis(G)
    assert len(basis) == G.order == commutant_dim_by_rank(G)
    for B in basis:
        mu = left_convolution_preimage(B, G)
        assert mu is not None
    # and every left convolution by a point mass lies in the span: rank check
    flat = np.array([[float(v) for v in B.entries()] for B in basis])
    w = Weight.trivial(G)
    for s in range(G.order):
        P = left_regular_matrix(WeightedL1Element.delta(w, s))
        stacked = np.vstack([flat, [float(v) for v in P.entries()]])
        assert np.linalg.matrix_rank(stacked) == G.order


def test_commutant_cutoff():
    with pytest.raises(CutoffExceeded):
        commutant_basis(symmetric_group(3), cutoff=5)
