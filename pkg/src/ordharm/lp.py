"""L^p spaces on finite groups (counting measure as Haar measure) and the
left convolution action of measures on them."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import WeightedL1Element
from .lattice import LatticeVector
from .semigroup import SemigroupTable, SemigroupError, classify

__all__ = ["NotAGroup", "LpElement", "lp_norm", "lp_action", "group_inverses"]


class NotAGroup(SemigroupError):
    pass


@dataclass(frozen=True)
class LpElement:
    vector: LatticeVector
    p: float
    group: SemigroupTable

    def __post_init__(self):
        if not isinstance(self.vector, LatticeVector):
            object.__setattr__(self, "vector", LatticeVector(self.vector))
        if not self.p >= 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if len(self.vector) != self.group.order:
            raise ValueError("vector length differs from group order")


def lp_norm(g: LpElement):
    """``(sum |g(s)|^p)^(1/p)``.

    Exact (a Fraction) when ``p == 1`` and the data are rational; a float otherwise.
    """
    if g.p < 1:
        raise ValueError(f"p must be >= 1, got {g.p}")
    if g.p == 1:
        return sum((abs(c) for c in g.vector), Fraction(0))
    p = float(g.p)
    vals = [abs(float(c)) for c in g.vector]
    top = max(vals)
    if top == 0.0:
        return 0.0
    return top * math.fsum((v / top) ** p for v in vals) ** (1.0 / p)


def group_inverses(G: SemigroupTable) -> list:
    flags = classify(G)
    if not flags.is_group:
        raise NotAGroup(f"{G.name or 'table'} is not a group")
    e = flags.identity
    inv = [None] * G.order
    for s in range(G.order):
        for u in range(G.order):
            if G.table[s][u] == e:
                inv[s] = u
                break
    return inv


def lp_action(mu: WeightedL1Element, g: LpElement) -> LpElement:
    """``(mu * g)(s) = sum_t mu(t) g(t^-1 s)``."""
    G = mu.semigroup
    if G != g.group:
        raise ValueError("measure and function live on different groups")
    inv = group_inverses(G)
    if not mu.weight.is_trivial():
        raise ValueError("the L^p action is defined for the unweighted measure algebra")
    out = []
    for s in range(G.order):
        acc = 0
        for t, m in enumerate(mu.coords):
            if m != 0:
                acc += m * g.vector[G.table[inv[t]][s]]
        out.append(acc)
    return LpElement(LatticeVector(out), g.p, G)
