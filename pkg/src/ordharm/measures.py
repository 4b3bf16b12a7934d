"""Signed measures on finite point sets, stored by their atoms.

The subset and partition formulas for the lattice operations are kept as
brute-force oracles next to the atomwise closed forms.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .lattice import as_scalar

__all__ = [
    "PointSetMismatch",
    "FiniteMeasure",
    "measure_sup",
    "measure_inf",
    "total_variation",
    "total_variation_norm",
    "set_partitions",
    "subset_sums",
    "measure_sup_oracle",
    "total_variation_oracle",
]


class PointSetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FiniteMeasure:
    points: tuple
    atoms: tuple

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(self.points))
        object.__setattr__(self, "atoms", tuple(as_scalar(a) for a in self.atoms))
        if len(self.points) != len(self.atoms):
            raise ValueError("one atom value per point is required")
        if len(set(self.points)) != len(self.points):
            raise ValueError("duplicate points")

    @classmethod
    def from_atoms(cls, atoms: Iterable) -> "FiniteMeasure":
        atoms = tuple(atoms)
        return cls(tuple(range(len(atoms))), atoms)

    def __call__(self, A: Iterable[int]) -> Fraction:
        """Measure of the subset given by point indices."""
        return sum((self.atoms[i] for i in A), Fraction(0))

    def mask_value(self, mask: int) -> Fraction:
        total = Fraction(0)
        i = 0
        while mask:
            if mask & 1:
                total += self.atoms[i]
            mask >>= 1
            i += 1
        return total

    def _check(self, other: "FiniteMeasure"):
        if self.points != other.points:
            raise PointSetMismatch("measures live on different point sets")

    def __len__(self):
        return len(self.points)


def measure_sup(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    mu._check(nu)
    return FiniteMeasure(mu.points, [max(a, b) for a, b in zip(mu.atoms, nu.atoms)])


def measure_inf(mu: FiniteMeasure, nu: FiniteMeasure) -> FiniteMeasure:
    mu._check(nu)
    return FiniteMeasure(mu.points, [min(a, b) for a, b in zip(mu.atoms, nu.atoms)])


def total_variation(mu: FiniteMeasure) -> FiniteMeasure:
    return FiniteMeasure(mu.points, [abs(a) for a in mu.atoms])


def total_variation_norm(mu: FiniteMeasure) -> Fraction:
    return sum((abs(a) for a in mu.atoms), Fraction(0))


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def set_partitions(mask: int) -> Iterator[list]:
    """Every partition of the set bits of ``mask`` into non-empty blocks (as bitmasks)."""
    if mask == 0:
        yield []
        return
    low = mask & -mask
    rest = mask ^ low
    for sub in _submasks(rest):
        block = sub | low
        for tail in set_partitions(rest ^ sub):
            yield [block] + tail


def subset_sums(mu: FiniteMeasure) -> list:
    """``mu`` evaluated on every subset, indexed by bitmask."""
    sums = [Fraction(0)] * (1 << len(mu))
    for m in range(1, len(sums)):
        low = m & -m
        sums[m] = sums[m ^ low] + mu.atoms[low.bit_length() - 1]
    return sums


def measure_sup_oracle(mu: FiniteMeasure, nu: FiniteMeasure, A_mask: int, sums=None) -> Fraction:
    """``sup {mu(B) + nu(A \\ B) : B subset of A}`` by enumerating every B.

    ``sums`` optionally carries precomputed ``(subset_sums(mu), subset_sums(nu))``.
    """
    mu._check(nu)
    ms, ns = sums if sums is not None else (subset_sums(mu), subset_sums(nu))
    return max(ms[B] + ns[A_mask ^ B] for B in _submasks(A_mask))


def total_variation_oracle(mu: FiniteMeasure, A_mask: int, sums=None) -> Fraction:
    """``sup sum |mu(B_i)|`` over every finite partition of A (the empty set gives 0)."""
    ms = sums if sums is not None else subset_sums(mu)
    return max(sum((abs(ms[b]) for b in part), Fraction(0)) for part in set_partitions(A_mask))
