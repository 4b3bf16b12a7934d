"""Regular operators between weighted coordinate lattices.

In a coordinatewise lattice the Riesz-Kantorovich formulas reduce to
entrywise operations on the matrix. The ``*_oracle`` functions evaluate the
formulas themselves by enumerating box vertices or binary splits, using
exact integer arithmetic after clearing denominators.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .algebra import Weight, WeightedL1Element
from .lattice import LatticeVector, as_scalar
from .lp import group_inverses
from .semigroup import SemigroupTable, classify

__all__ = [
    "DEFAULT_CUTOFF",
    "CutoffExceeded",
    "ShapeMismatch",
    "RegularOperator",
    "operator_modulus",
    "operator_sup",
    "operator_inf",
    "rk_modulus_oracle",
    "rk_sup_oracle",
    "rk_inf_oracle",
    "weighted_operator_norm",
    "regular_norm",
    "left_regular_matrix",
    "right_translation_matrix",
    "nullspace",
    "commutant_basis",
    "left_convolution_preimage",
]

DEFAULT_CUTOFF = 12


class CutoffExceeded(ValueError):
    pass


class ShapeMismatch(ValueError):
    pass


def _ones(n):
    return (Fraction(1),) * n


@dataclass(frozen=True)
class RegularOperator:
    matrix: tuple
    domain_weight: tuple = None
    codomain_weight: tuple = None

    def __post_init__(self):
        rows = tuple(tuple(as_scalar(a) for a in row) for row in self.matrix)
        if not rows or not rows[0]:
            raise ShapeMismatch("empty matrix")
        if any(len(r) != len(rows[0]) for r in rows):
            raise ShapeMismatch("ragged matrix")
        object.__setattr__(self, "matrix", rows)
        m, n = len(rows), len(rows[0])
        dw = _ones(n) if self.domain_weight is None else tuple(as_scalar(w) for w in self.domain_weight)
        cw = _ones(m) if self.codomain_weight is None else tuple(as_scalar(w) for w in self.codomain_weight)
        if len(dw) != n or len(cw) != m:
            raise ShapeMismatch("weight lengths do not match the matrix shape")
        if any(not w > 0 for w in dw + cw):
            raise ValueError("coordinate weights must be strictly positive")
        object.__setattr__(self, "domain_weight", dw)
        object.__setattr__(self, "codomain_weight", cw)

    @property
    def shape(self) -> tuple:
        return len(self.matrix), len(self.matrix[0])

    def _same(self, other: "RegularOperator"):
        if self.shape != other.shape:
            raise ShapeMismatch(f"shapes differ: {self.shape} vs {other.shape}")

    def _entrywise(self, other, fn) -> "RegularOperator":
        self._same(other)
        rows = [[fn(a, b) for a, b in zip(r, s)] for r, s in zip(self.matrix, other.matrix)]
        return RegularOperator(rows, self.domain_weight, self.codomain_weight)

    def __add__(self, other):
        return self._entrywise(other, lambda a, b: a + b)

    def __sub__(self, other):
        return self._entrywise(other, lambda a, b: a - b)

    def __neg__(self):
        return RegularOperator([[-a for a in r] for r in self.matrix], self.domain_weight, self.codomain_weight)

    def scale(self, c) -> "RegularOperator":
        c = as_scalar(c)
        return RegularOperator([[c * a for a in r] for r in self.matrix], self.domain_weight, self.codomain_weight)

    def __matmul__(self, other: "RegularOperator") -> "RegularOperator":
        if self.shape[1] != other.shape[0]:
            raise ShapeMismatch(f"cannot compose {self.shape} with {other.shape}")
        cols = list(zip(*other.matrix))
        rows = [[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.matrix]
        return RegularOperator(rows, other.domain_weight, self.codomain_weight)

    def apply(self, x) -> LatticeVector:
        x = tuple(x)
        if len(x) != self.shape[1]:
            raise ShapeMismatch("vector length differs from the domain dimension")
        return LatticeVector(sum((a * b for a, b in zip(r, x)), Fraction(0)) for r in self.matrix)

    def is_positive(self) -> bool:
        return all(a >= 0 for r in self.matrix for a in r)

    def entries(self):
        return [a for r in self.matrix for a in r]


def operator_modulus(T: RegularOperator) -> RegularOperator:
    return RegularOperator([[abs(a) for a in r] for r in T.matrix], T.domain_weight, T.codomain_weight)


def operator_sup(S: RegularOperator, T: RegularOperator) -> RegularOperator:
    return S._entrywise(T, max)


def operator_inf(S: RegularOperator, T: RegularOperator) -> RegularOperator:
    return S._entrywise(T, min)


# -- enumeration oracles -------------------------------------------------------

def _integerize(*arrays) -> tuple:
    """Scale rational arrays by one common denominator; return (int arrays, denominator)."""
    den = 1
    for arr in arrays:
        for a in arr:
            den = math.lcm(den, Fraction(a).denominator)
    return [[int(Fraction(a) * den) for a in arr] for arr in arrays], den


def _patterns(n: int) -> np.ndarray:
    """All 0/1 vectors of length n, one per row."""
    idx = np.arange(1 << n, dtype=np.int64)
    return ((idx[:, None] >> np.arange(n)) & 1).astype(np.int64)


def _as_int_matrix(rows, bound: int):
    # int64 is exact while every partial sum stays below 2**62
    dtype = np.int64 if bound < (1 << 62) else object
    return np.array(rows, dtype=dtype)


def _check_oracle_input(T: RegularOperator, x, cutoff: int) -> tuple:
    m, n = T.shape
    if n > cutoff:
        raise CutoffExceeded(f"domain dimension {n} exceeds enumeration cutoff {cutoff}")
    x = tuple(as_scalar(v) for v in x)
    if len(x) != n:
        raise ShapeMismatch("vector length differs from the domain dimension")
    if any(v < 0 for v in x):
        raise ValueError("x must be positive")
    if any(isinstance(v, float) for v in x) or any(isinstance(a, float) for a in T.entries()):
        raise TypeError("oracles work on exact rational data")
    return m, n, x


def rk_modulus_oracle(T: RegularOperator, x, cutoff: int = DEFAULT_CUTOFF) -> LatticeVector:
    """``sup {|T y| : |y| <= x}`` by enumerating the 2^n vertices of the box ``[-x, x]``.

    The supremum of each coordinate of ``|T y|`` over the box is a maximum of a
    convex function of ``y`` and is attained at a vertex.
    """
    m, n, x = _check_oracle_input(T, x, cutoff)
    (flat, xs), den = _integerize(T.entries(), x)
    bound = n * max(map(abs, flat), default=0) * max(xs, default=0) + 1
    A = _as_int_matrix(flat, bound).reshape(m, n)
    cols = A * _as_int_matrix(xs, bound)[None, :]  # column j scaled by x_j
    signs = 2 * _patterns(n) - 1
    if A.dtype == object:
        signs = signs.astype(object)
    vals = np.abs(signs @ cols.T)  # (2^n, m)
    best = vals.max(axis=0)
    return LatticeVector(Fraction(int(b), den * den) for b in best)


def _split_oracle(S: RegularOperator, T: RegularOperator, x, cutoff: int, pick) -> LatticeVector:
    S._same(T)
    m, n, x = _check_oracle_input(S, x, cutoff)
    (fs, ft, xs), den = _integerize(S.entries(), T.entries(), x)
    bound = n * max(map(abs, fs + ft), default=0) * max(xs, default=0) + 1
    xv = _as_int_matrix(xs, bound)[None, :]
    Sc = _as_int_matrix(fs, bound).reshape(m, n) * xv
    Tc = _as_int_matrix(ft, bound).reshape(m, n) * xv
    P = _patterns(n)
    if Sc.dtype == object:
        P = P.astype(object)
    # pattern bit j = 1 puts x_j into y (acted on by S), else into z (acted on by T)
    vals = P @ Sc.T + (1 - P) @ Tc.T
    best = pick(vals, axis=0)
    return LatticeVector(Fraction(int(b), den * den) for b in best)


def rk_sup_oracle(S: RegularOperator, T: RegularOperator, x, cutoff: int = DEFAULT_CUTOFF) -> LatticeVector:
    """``sup {S y + T z : y, z >= 0, y + z = x}`` over the 2^n coordinate splits."""
    return _split_oracle(S, T, x, cutoff, np.max)


def rk_inf_oracle(S: RegularOperator, T: RegularOperator, x, cutoff: int = DEFAULT_CUTOFF) -> LatticeVector:
    return _split_oracle(S, T, x, cutoff, np.min)


# -- norms -----------------------------------------------------------------------

def weighted_operator_norm(T: RegularOperator):
    """Norm of T as a map l1(domain_weight) -> l1(codomain_weight): the max weighted column sum."""
    m, n = T.shape
    best = Fraction(0)
    for j in range(n):
        col = sum((abs(T.matrix[i][j]) * T.codomain_weight[i] for i in range(m)), Fraction(0))
        best = max(best, col / T.domain_weight[j])
    return best


def regular_norm(T: RegularOperator):
    return weighted_operator_norm(operator_modulus(T))


# -- representations ---------------------------------------------------------

def left_regular_matrix(x: WeightedL1Element) -> RegularOperator:
    """Matrix of ``y -> x * y``: ``M[t][s] = sum of x(r) over r with r s = t``."""
    S = x.semigroup
    n = S.order
    M = [[Fraction(0)] * n for _ in range(n)]
    for r, xr in enumerate(x.coords):
        if xr == 0:
            continue
        row = S.table[r]
        for s in range(n):
            M[row[s]][s] += xr
    w = x.weight.values
    return RegularOperator(M, w, w)


def right_translation_matrix(G: SemigroupTable, t: int) -> RegularOperator:
    """Matrix of ``f -> (s -> f(s t))``."""
    group_inverses(G)
    n = G.order
    M = [[0] * n for _ in range(n)]
    for s in range(n):
        M[s][G.table[s][t]] = 1
    return RegularOperator(M)


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of ``{v : A v = 0}`` by exact Gauss-Jordan elimination over the rationals."""
    A = [[Fraction(a) for a in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [a * inv for a in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -A[i][fc]
        basis.append(v)
    return basis


def commutant_basis(G: SemigroupTable, cutoff: int = DEFAULT_CUTOFF) -> list:
    """Basis of ``{T : T rho_t = rho_t T for all t}`` on the coordinate space of G."""
    n = G.order
    if n > cutoff:
        raise CutoffExceeded(f"group order {n} exceeds cutoff {cutoff}")
    rhos = [right_translation_matrix(G, t).matrix for t in range(n)]
    # unknown T[i][k] sits at position i*n + k
    rows = []
    for R in rhos:
        for i in range(n):
            for j in range(n):
                # (T R)[i][j] - (R T)[i][j] = sum_k T[i][k] R[k][j] - sum_k R[i][k] T[k][j]
                eq = [0] * (n * n)
                for k in range(n):
                    if R[k][j]:
                        eq[i * n + k] += R[k][j]
                    if R[i][k]:
                        eq[k * n + j] -= R[i][k]
                if any(eq):
                    rows.append(eq)
    basis = nullspace(rows, n * n)
    return [RegularOperator([v[i * n:(i + 1) * n] for i in range(n)]) for v in basis]


def left_convolution_preimage(T: RegularOperator, G: SemigroupTable) -> WeightedL1Element | None:
    """The measure mu with ``left_regular_matrix(mu) == T``, or None if there is none."""
    group_inverses(G)
    e = classify(G).identity
    w = Weight.trivial(G)
    # pi_mu delta_e = mu
    mu = WeightedL1Element(LatticeVector(T.matrix[t][e] for t in range(G.order)), w)
    if left_regular_matrix(mu).matrix == T.matrix:
        return mu
    return None
