"""Weighted l1 convolution algebras over finite semigroups.

For finite S the measure algebra M(S, w) and l1(S, w) coincide, so one
element type serves both.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Mapping

from .lattice import LatticeVector, ComplexLatticeVector, as_scalar, modulus
from .semigroup import SemigroupTable, SemigroupError

__all__ = [
    "WeightError",
    "AlgebraMismatch",
    "EmbeddingError",
    "Weight",
    "WeightedL1Element",
    "ComplexElement",
    "convolve",
    "complex_convolve",
    "beurling_norm",
    "support",
    "spectral_radius_probe",
    "zero_extend",
    "restrict_weight",
    "load_weights",
    "element_from_mapping",
]


class WeightError(ValueError):
    pass


class AlgebraMismatch(ValueError):
    pass


class EmbeddingError(SemigroupError):
    pass


@dataclass(frozen=True)
class Weight:
    semigroup: SemigroupTable
    values: tuple

    def __post_init__(self):
        S = self.semigroup
        vals = tuple(as_scalar(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) != S.order:
            raise WeightError(f"weight has {len(vals)} values for {S.order} elements")
        for s, v in enumerate(vals):
            if not v > 0:
                raise WeightError(f"weight at {S.elements[s]!r} is not strictly positive: {v}")
        for s in range(S.order):
            for t in range(S.order):
                st = S.table[s][t]
                if vals[st] > vals[s] * vals[t]:
                    raise WeightError(
                        f"not submultiplicative at ({S.elements[s]},{S.elements[t]}): "
                        f"w(st)={vals[st]} > {vals[s] * vals[t]}"
                    )

    @classmethod
    def trivial(cls, S: SemigroupTable) -> "Weight":
        return cls(S, (Fraction(1),) * S.order)

    @classmethod
    def from_mapping(cls, S: SemigroupTable, mapping: Mapping[str, object], default=1) -> "Weight":
        unknown = set(mapping) - set(S.elements)
        if unknown:
            raise WeightError(f"labels not in semigroup: {sorted(unknown)}")
        return cls(S, tuple(as_scalar(mapping.get(e, default)) for e in S.elements))

    def is_trivial(self) -> bool:
        return all(v == 1 for v in self.values)

    def __getitem__(self, s: int):
        return self.values[s]


@dataclass(frozen=True)
class WeightedL1Element:
    vector: LatticeVector
    weight: Weight

    def __post_init__(self):
        if not isinstance(self.vector, LatticeVector):
            object.__setattr__(self, "vector", LatticeVector(self.vector))
        if len(self.vector) != self.weight.semigroup.order:
            raise AlgebraMismatch("vector length differs from semigroup order")

    @property
    def semigroup(self) -> SemigroupTable:
        return self.weight.semigroup

    @property
    def coords(self) -> tuple:
        return self.vector.coords

    @classmethod
    def delta(cls, weight: Weight, s: int, value=1) -> "WeightedL1Element":
        return cls(LatticeVector.unit(weight.semigroup.order, s, value), weight)

    @classmethod
    def zero(cls, weight: Weight) -> "WeightedL1Element":
        return cls(LatticeVector.zeros(weight.semigroup.order), weight)

    def _check(self, other: "WeightedL1Element"):
        if self.weight != other.weight:
            raise AlgebraMismatch("elements live in different algebras")

    def with_vector(self, v: LatticeVector) -> "WeightedL1Element":
        return WeightedL1Element(v, self.weight)

    def __add__(self, other):
        self._check(other)
        return self.with_vector(self.vector + other.vector)

    def __sub__(self, other):
        self._check(other)
        return self.with_vector(self.vector - other.vector)

    def __neg__(self):
        return self.with_vector(-self.vector)

    def __mul__(self, scalar):
        return self.with_vector(self.vector * scalar)

    __rmul__ = __mul__

    def abs(self) -> "WeightedL1Element":
        return self.with_vector(modulus(self.vector))


@dataclass(frozen=True)
class ComplexElement:
    """``re + i im`` in the complexified algebra."""

    re: WeightedL1Element
    im: WeightedL1Element

    def __post_init__(self):
        self.re._check(self.im)

    def as_lattice(self) -> ComplexLatticeVector:
        return ComplexLatticeVector(self.re.vector, self.im.vector)


def _convolve_coords(S: SemigroupTable, x, y) -> list:
    out = [0] * S.order
    for r, xr in enumerate(x):
        if xr == 0:
            continue
        row = S.table[r]
        for s, ys in enumerate(y):
            if ys != 0:
                out[row[s]] += xr * ys
    return out


def convolve(x: WeightedL1Element, y: WeightedL1Element) -> WeightedL1Element:
    """``(x * y)(t) = sum over r s = t of x(r) y(s)``."""
    x._check(y)
    return x.with_vector(LatticeVector(_convolve_coords(x.semigroup, x.coords, y.coords)))


def complex_convolve(z: ComplexElement, w: ComplexElement) -> ComplexElement:
    a, b, c, d = z.re, z.im, w.re, w.im
    return ComplexElement(convolve(a, c) - convolve(b, d), convolve(a, d) + convolve(b, c))


def beurling_norm(x: WeightedL1Element):
    return sum((abs(c) * w for c, w in zip(x.coords, x.weight.values)), Fraction(0))


def support(x: WeightedL1Element) -> frozenset:
    return frozenset(s for s, c in enumerate(x.coords) if c != 0)


def spectral_radius_probe(x: WeightedL1Element, max_power: int) -> list:
    """``[||x^n||_w ** (1/n) for n = 1..max_power]`` as floats; no limit is claimed."""
    if max_power < 1:
        raise ValueError("max_power must be >= 1")
    out = []
    power = x
    for n in range(1, max_power + 1):
        if n > 1:
            power = convolve(power, x)
        norm = beurling_norm(power)
        out.append(_nth_root(norm, n))
    return out


def _nth_root(value, n: int) -> float:
    if value == 0:
        return 0.0
    if isinstance(value, Fraction):
        # log of big ints avoids float under/overflow for long powers
        log = math.log(value.numerator) - math.log(value.denominator)
    else:
        log = math.log(value)
    return math.exp(log / n)


def _check_restriction(S: SemigroupTable, G: SemigroupTable) -> list:
    try:
        idx = [G.elements.index(e) for e in S.elements]
    except ValueError as exc:
        raise EmbeddingError(f"{S.name or 'S'} has labels outside {G.name or 'G'}") from exc
    for a, ga in enumerate(idx):
        for b, gb in enumerate(idx):
            if idx[S.table[a][b]] != G.table[ga][gb]:
                raise EmbeddingError(
                    f"{S.elements[a]}*{S.elements[b]} differs between the two tables"
                )
    return idx


def restrict_weight(weight: Weight, S: SemigroupTable) -> Weight:
    idx = _check_restriction(S, weight.semigroup)
    return Weight(S, tuple(weight.values[g] for g in idx))


def zero_extend(x: WeightedL1Element, target: Weight) -> WeightedL1Element:
    """Copy ``x`` from a subsemigroup onto the ambient semigroup of ``target``, zero elsewhere."""
    G = target.semigroup
    idx = _check_restriction(x.semigroup, G)
    coords = [Fraction(0)] * G.order
    for s, g in enumerate(idx):
        coords[g] = x.coords[s]
    return WeightedL1Element(LatticeVector(coords), target)


def element_from_mapping(weight: Weight, mapping: Mapping[str, object]) -> WeightedL1Element:
    S = weight.semigroup
    unknown = set(mapping) - set(S.elements)
    if unknown:
        raise AlgebraMismatch(f"labels not in semigroup: {sorted(unknown)}")
    return WeightedL1Element(LatticeVector(as_scalar(mapping.get(e, 0)) for e in S.elements), weight)


def load_weights(path) -> dict:
    """Read a weight file: ``{label: "decimal"}`` or ``{entry_name: {label: "decimal"}}``."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if not isinstance(data, dict):
        raise WeightError("weight file must be a JSON object")

    def parse_map(m: Mapping) -> dict:
        out = {}
        for k, v in m.items():
            if not isinstance(v, (str, int)):
                raise WeightError(f"weight for {k!r} must be a decimal string")
            try:
                out[str(k)] = Fraction(v)
            except (ValueError, ZeroDivisionError) as exc:
                raise WeightError(f"bad weight for {k!r}: {v!r}") from exc
        return out

    if data and all(isinstance(v, dict) for v in data.values()):
        return {"per_entry": {name: parse_map(m) for name, m in data.items()}}
    return {"flat": parse_map(data)}


def weights_for(spec: dict | None, S: SemigroupTable) -> Weight:
    """Resolve a parsed weight file against one catalog entry (missing labels weigh 1)."""
    if not spec:
        return Weight.trivial(S)
    if "per_entry" in spec:
        mapping = spec["per_entry"].get(S.name)
        if mapping is None:
            return Weight.trivial(S)
    else:
        mapping = {k: v for k, v in spec["flat"].items() if k in S.elements}
    return Weight.from_mapping(S, mapping)


def iter_deltas(weight: Weight) -> Iterable[WeightedL1Element]:
    for s in range(weight.semigroup.order):
        yield WeightedL1Element.delta(weight, s)
