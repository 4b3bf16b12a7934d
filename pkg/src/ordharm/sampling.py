"""Seeded random rational data.

Coefficients are numerator / denominator with numerators in [-9, 9] and
denominators in {1, 2, 3}, drawn from numpy's PCG64 generator.
"""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .algebra import Weight, WeightedL1Element, WeightError
from .lattice import LatticeVector
from .operators import RegularOperator
from .semigroup import SemigroupTable

NUMERATORS = range(-9, 10)
DENOMINATORS = (1, 2, 3)
SUPPORT_DENSITIES = (0.35, 0.7, 1.0)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def rational(rng: np.random.Generator, positive: bool = False) -> Fraction:
    lo = 0 if positive else -9
    num = int(rng.integers(lo, 10))
    den = int(rng.choice(DENOMINATORS))
    return Fraction(num, den)


def rational_vector(rng, n: int, positive: bool = False, density: float | None = None) -> LatticeVector:
    if density is None:
        density = float(rng.choice(SUPPORT_DENSITIES))
    coords = []
    for _ in range(n):
        if rng.random() < density:
            coords.append(rational(rng, positive))
        else:
            coords.append(Fraction(0))
    return LatticeVector(coords)


def random_element(rng, weight: Weight, positive: bool = False) -> WeightedL1Element:
    return WeightedL1Element(rational_vector(rng, weight.semigroup.order, positive), weight)


def random_matrix(rng, m: int, n: int) -> RegularOperator:
    return RegularOperator([[rational(rng) for _ in range(n)] for _ in range(m)])


def disjoint_pair(rng, n: int) -> tuple:
    """Two rational vectors whose supports are disjoint."""
    side = rng.integers(0, 3, size=n)  # 0: x, 1: y, 2: neither
    x = [rational(rng) if side[i] == 0 else Fraction(0) for i in range(n)]
    y = [rational(rng) if side[i] == 1 else Fraction(0) for i in range(n)]
    return LatticeVector(x), LatticeVector(y)


def random_weight(rng, S: SemigroupTable, tries: int = 50) -> Weight:
    """A valid weight on S.

    Values drawn from ``[c, c**2]`` with ``c >= 1`` are always submultiplicative;
    freer draws are tried first and fall back to that family.
    """
    n = S.order
    for _ in range(tries):
        vals = [Fraction(int(rng.integers(1, 13)), int(rng.choice((2, 3, 4)))) for _ in range(n)]
        try:
            return Weight(S, vals)
        except WeightError:
            continue
    c = Fraction(int(rng.integers(2, 5)), 2)
    vals = [c + (c * c - c) * Fraction(int(rng.integers(0, 7)), 6) for _ in range(n)]
    return Weight(S, vals)
