"""Finite-dimensional vector lattices with the coordinatewise order.

Coefficients are usually :class:`fractions.Fraction` so that lattice identities
hold exactly; floats are accepted where irrational values are unavoidable
(complex moduli).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Number
from typing import Iterable

import numpy as np

__all__ = [
    "UniverseMismatch",
    "LatticeVector",
    "ComplexLatticeVector",
    "as_scalar",
    "sup",
    "inf",
    "negate",
    "modulus",
    "pos_part",
    "neg_part",
    "le",
    "are_disjoint",
    "complex_modulus",
    "complex_modulus_oracle",
]


class UniverseMismatch(ValueError):
    pass


def as_scalar(value):
    """Coerce ints, decimal strings and ``"p/q"`` strings to Fraction; keep floats."""
    if isinstance(value, float):
        return value
    if isinstance(value, (int, Fraction, str)):
        return Fraction(value)
    if isinstance(value, np.integer):
        return Fraction(int(value))
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Number):
        return value
    raise TypeError(f"not a real scalar: {value!r}")


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple

    def __init__(self, coords: Iterable):
        coords = tuple(as_scalar(c) for c in coords)
        if not coords:
            raise ValueError("a lattice vector needs at least one coordinate")
        object.__setattr__(self, "coords", coords)

    @classmethod
    def zeros(cls, n: int) -> "LatticeVector":
        return cls([0] * n)

    @classmethod
    def unit(cls, n: int, i: int, value=1) -> "LatticeVector":
        c = [0] * n
        c[i] = value
        return cls(c)

    def __len__(self):
        return len(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __getitem__(self, i):
        return self.coords[i]

    def _check(self, other: "LatticeVector"):
        if len(self) != len(other):
            raise UniverseMismatch(f"dimensions differ: {len(self)} vs {len(other)}")

    def __add__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(a + b for a, b in zip(self.coords, other.coords))

    def __sub__(self, other: "LatticeVector") -> "LatticeVector":
        self._check(other)
        return LatticeVector(a - b for a, b in zip(self.coords, other.coords))

    def __neg__(self) -> "LatticeVector":
        return LatticeVector(-a for a in self.coords)

    def __mul__(self, scalar) -> "LatticeVector":
        scalar = as_scalar(scalar)
        return LatticeVector(scalar * a for a in self.coords)

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coords)

    def is_positive(self) -> bool:
        return all(a >= 0 for a in self.coords)

    def to_floats(self) -> np.ndarray:
        return np.array([float(a) for a in self.coords])


@dataclass(frozen=True)
class ComplexLatticeVector:
    re: LatticeVector
    im: LatticeVector

    def __post_init__(self):
        self.re._check(self.im)

    def __len__(self):
        return len(self.re)

    def __add__(self, other: "ComplexLatticeVector") -> "ComplexLatticeVector":
        return ComplexLatticeVector(self.re + other.re, self.im + other.im)

    def scale(self, alpha: complex) -> "ComplexLatticeVector":
        a, b = float(alpha.real), float(alpha.imag)
        re = LatticeVector(a * float(x) - b * float(y) for x, y in zip(self.re, self.im))
        im = LatticeVector(a * float(y) + b * float(x) for x, y in zip(self.re, self.im))
        return ComplexLatticeVector(re, im)


def sup(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    x._check(y)
    return LatticeVector(max(a, b) for a, b in zip(x, y))


def inf(x: LatticeVector, y: LatticeVector) -> LatticeVector:
    x._check(y)
    return LatticeVector(min(a, b) for a, b in zip(x, y))


def negate(x: LatticeVector) -> LatticeVector:
    return -x


def modulus(x: LatticeVector) -> LatticeVector:
    return LatticeVector(abs(a) for a in x)


def pos_part(x: LatticeVector) -> LatticeVector:
    return LatticeVector(max(a, 0) for a in x)


def neg_part(x: LatticeVector) -> LatticeVector:
    return LatticeVector(max(-a, 0) for a in x)


def le(x: LatticeVector, y: LatticeVector, tol: float = 0.0) -> bool:
    """Coordinatewise ``x <= y``; ``tol`` only matters for float data."""
    x._check(y)
    if tol:
        return all(a <= b + tol for a, b in zip(x, y))
    return all(a <= b for a, b in zip(x, y))


def are_disjoint(x: LatticeVector, y: LatticeVector) -> bool:
    x._check(y)
    return all(min(abs(a), abs(b)) == 0 for a, b in zip(x, y))


def complex_modulus(z: ComplexLatticeVector) -> LatticeVector:
    """Coordinatewise ``sqrt(re**2 + im**2)``.

    This is the value of ``sup_theta (re cos(theta) + im sin(theta))`` in a
    coordinatewise lattice, computed in closed form.
    """
    return LatticeVector(math.hypot(float(a), float(b)) for a, b in zip(z.re, z.im))


def complex_modulus_oracle(z: ComplexLatticeVector, grid_count: int) -> LatticeVector:
    """Coordinatewise max of ``re cos(t) + im sin(t)`` over ``t = 2 pi k / grid_count``.

    Approaches :func:`complex_modulus` from below; the gap at any coordinate is
    at most ``|z| (1 - cos(pi / grid_count))``.
    """
    if grid_count < 4:
        raise ValueError(f"grid_count must be >= 4, got {grid_count}")
    re = z.re.to_floats()
    im = z.im.to_floats()
    k = np.arange(grid_count)
    theta = 2.0 * np.pi * k / grid_count
    # exact values at quarter turns keep tiny grids exact
    c = np.cos(theta)
    s = np.sin(theta)
    if grid_count % 4 == 0:
        q = grid_count // 4
        c[[0, q, 2 * q, 3 * q]] = [1.0, 0.0, -1.0, 0.0]
        s[[0, q, 2 * q, 3 * q]] = [0.0, 1.0, 0.0, -1.0]
    best = np.full(re.shape, -np.inf)
    chunk = 1 << 14
    for start in range(0, grid_count, chunk):
        vals = np.outer(c[start:start + chunk], re) + np.outer(s[start:start + chunk], im)
        best = np.maximum(best, vals.max(axis=0))
    return LatticeVector(float(b) for b in best)

