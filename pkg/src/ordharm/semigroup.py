"""Finite semigroups given by Cayley tables.

Elements are indexed by their position in ``elements``; every vector and
matrix elsewhere in the package uses that order.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

__all__ = [
    "SemigroupError",
    "AssociativityError",
    "IndexOutOfRange",
    "DuplicateLabel",
    "ShapeError",
    "ParseError",
    "SemigroupTable",
    "StructureFlags",
    "validate",
    "classify",
    "product_set",
    "opposite",
    "restrict",
    "subsemigroups",
    "direct_product",
    "cyclic_group",
    "klein_four",
    "symmetric_group",
    "left_zero",
    "right_zero",
    "null_semigroup",
    "multiplicative_monoid",
    "nilpotent_chain",
    "builtin_catalog",
    "load_catalog",
    "parse_catalog",
    "catalog_to_json",
    "dump_catalog",
]


class SemigroupError(ValueError):
    pass


class AssociativityError(SemigroupError):
    def __init__(self, i: int, j: int, k: int, labels: Sequence[str] | None = None, entry: str | None = None):
        self.i, self.j, self.k = i, j, k
        self.labels = tuple(labels) if labels is not None else None
        self.entry = entry
        super().__init__(self._message())

    @property
    def triple(self) -> tuple:
        if self.labels is None:
            return (self.i, self.j, self.k)
        return (self.labels[self.i], self.labels[self.j], self.labels[self.k])

    def _message(self) -> str:
        a, b, c = self.triple
        where = f"entry {self.entry!r}: " if self.entry else ""
        return f"{where}not associative at ({a},{b},{c})"

    def tagged(self, entry: str) -> "AssociativityError":
        return AssociativityError(self.i, self.j, self.k, self.labels, entry)


class IndexOutOfRange(SemigroupError):
    pass


class DuplicateLabel(SemigroupError):
    pass


class ShapeError(SemigroupError):
    pass


class ParseError(SemigroupError):
    def __init__(self, message: str, line: int | None = None, field: str | None = None, entry: str | None = None):
        self.line, self.field, self.entry = line, field, entry
        bits = []
        if line is not None:
            bits.append(f"line {line}")
        if entry is not None:
            bits.append(f"entry {entry!r}")
        if field is not None:
            bits.append(f"field {field!r}")
        prefix = ", ".join(bits)
        super().__init__(f"{prefix}: {message}" if prefix else message)


@dataclass(frozen=True)
class SemigroupTable:
    elements: tuple
    table: tuple
    name: str = field(default="", compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.table[i][j]

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def __len__(self):
        return len(self.elements)


@dataclass(frozen=True)
class StructureFlags:
    has_identity: bool
    identity: int | None
    is_cancellative: bool
    is_group: bool
    is_abelian: bool

    def as_dict(self) -> dict:
        return {
            "has_identity": self.has_identity,
            "identity": self.identity,
            "is_cancellative": self.is_cancellative,
            "is_group": self.is_group,
            "is_abelian": self.is_abelian,
        }


def _find_associativity_violation(table) -> tuple | None:
    n = len(table)
    for i in range(n):
        row_i = table[i]
        for j in range(n):
            ij = row_i[j]
            row_ij = table[ij]
            row_j = table[j]
            for k in range(n):
                if row_ij[k] != row_i[row_j[k]]:
                    return (i, j, k)
    return None


def validate(elements: Iterable[str], table: Iterable[Iterable[int]], name: str = "") -> SemigroupTable:
    """Check shape, labels, index range and associativity; return an immutable table.

    Triples are scanned in lexicographic order so the reported violation is
    the first one.
    """
    elements = tuple(str(e) for e in elements)
    n = len(elements)
    if n == 0:
        raise ShapeError("a semigroup needs at least one element")
    seen = set()
    for e in elements:
        if e in seen:
            raise DuplicateLabel(f"duplicate element label {e!r}")
        seen.add(e)
    rows = tuple(tuple(row) for row in table)
    if len(rows) != n:
        raise ShapeError(f"table has {len(rows)} rows, expected {n}")
    for r, row in enumerate(rows):
        if len(row) != n:
            raise ShapeError(f"row {r} has {len(row)} entries, expected {n}")
        for c, v in enumerate(row):
            if isinstance(v, bool) or not isinstance(v, int):
                raise ShapeError(f"entry ({r},{c}) is not an integer: {v!r}")
            if not 0 <= v < n:
                raise IndexOutOfRange(f"entry ({r},{c}) = {v} outside [0, {n})")
    bad = _find_associativity_violation(rows)
    if bad is not None:
        raise AssociativityError(*bad, labels=elements, entry=name or None)
    return SemigroupTable(elements, rows, name)


def _identity(S: SemigroupTable) -> int | None:
    rn = range(S.order)
    for e in rn:
        if all(S.table[e][x] == x and S.table[x][e] == x for x in rn):
            return e
    return None


def classify(S: SemigroupTable) -> StructureFlags:
    n = S.order
    rn = range(n)
    e = _identity(S)
    # s -> t s injective (rows) and s -> s t injective (columns), for every t
    left = all(len(set(S.table[t])) == n for t in rn)
    right = all(len({S.table[s][t] for s in rn}) == n for t in rn)
    cancellative = left and right
    is_group = False
    if e is not None:
        is_group = all(any(S.table[s][u] == e and S.table[u][s] == e for u in rn) for s in rn)
    abelian = all(S.table[i][j] == S.table[j][i] for i in rn for j in rn)
    return StructureFlags(e is not None, e, cancellative, is_group, abelian)


def product_set(S: SemigroupTable, A: Iterable[int], B: Iterable[int]) -> frozenset:
    B = list(B)
    return frozenset(S.table[a][b] for a in A for b in B)


def opposite(S: SemigroupTable) -> SemigroupTable:
    """Same elements with ``s * t`` replaced by ``t * s``."""
    n = S.order
    rows = tuple(tuple(S.table[j][i] for j in range(n)) for i in range(n))
    name = f"{S.name}^op" if S.name else ""
    return SemigroupTable(S.elements, rows, name)


def restrict(G: SemigroupTable, labels: Iterable[str], name: str = "") -> SemigroupTable:
    """The subsemigroup of ``G`` on ``labels`` (kept in ``G``'s order)."""
    wanted = set(labels)
    missing = wanted - set(G.elements)
    if missing:
        raise SemigroupError(f"labels not in {G.name or 'table'}: {sorted(missing)}")
    idx = [i for i, e in enumerate(G.elements) if e in wanted]
    if not idx:
        raise ShapeError("empty subset")
    pos = {g: k for k, g in enumerate(idx)}
    rows = []
    for i in idx:
        row = []
        for j in idx:
            p = G.table[i][j]
            if p not in pos:
                raise SemigroupError(
                    f"not closed: {G.elements[i]}*{G.elements[j]} = {G.elements[p]}"
                )
            row.append(pos[p])
        rows.append(tuple(row))
    return SemigroupTable(tuple(G.elements[i] for i in idx), tuple(rows), name)


def subsemigroups(G: SemigroupTable, proper: bool = True) -> list:
    """All non-empty subsets closed under multiplication (exhaustive, small tables only)."""
    n = G.order
    out = []
    for size in range(1, n + (0 if proper else 1)):
        for idx in itertools.combinations(range(n), size):
            s = set(idx)
            if all(G.table[i][j] in s for i in idx for j in idx):
                labels = [G.elements[i] for i in idx]
                out.append(restrict(G, labels, name=f"{G.name}[{','.join(labels)}]"))
    return out


def direct_product(A: SemigroupTable, B: SemigroupTable, name: str = "") -> SemigroupTable:
    pairs = [(i, j) for i in range(A.order) for j in range(B.order)]
    pos = {p: k for k, p in enumerate(pairs)}
    labels = [f"({A.elements[i]},{B.elements[j]})" for i, j in pairs]
    rows = [[pos[(A.table[i1][i2], B.table[j1][j2])] for (i2, j2) in pairs] for (i1, j1) in pairs]
    return validate(labels, rows, name or f"{A.name}x{B.name}")


# -- built-in generators ---------------------------------------------------------

def cyclic_group(n: int) -> SemigroupTable:
    return validate([str(i) for i in range(n)], [[(i + j) % n for j in range(n)] for i in range(n)], f"Z{n}")


def klein_four() -> SemigroupTable:
    labels = ["e", "a", "b", "c"]
    rows = [[i ^ j for j in range(4)] for i in range(4)]
    return validate(labels, rows, "V4")


def symmetric_group(k: int = 3) -> SemigroupTable:
    perms = list(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    labels = ["".join(str(v) for v in p) for p in perms]
    # (p*q)(x) = p(q(x))
    rows = [[pos[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    return validate(labels, rows, f"S{k}")


def left_zero(n: int) -> SemigroupTable:
    return validate([f"l{i}" for i in range(n)], [[i] * n for i in range(n)], f"LZ{n}")


def right_zero(n: int) -> SemigroupTable:
    return validate([f"r{i}" for i in range(n)], [list(range(n)) for _ in range(n)], f"RZ{n}")


def null_semigroup(n: int) -> SemigroupTable:
    """``s * t = z`` for all ``s, t``; ``z`` is element 0, the others are a, b, ..."""
    labels = ["z"] + [chr(ord("a") + i) for i in range(n - 1)]
    return validate(labels, [[0] * n for _ in range(n)], f"N{n}")


def multiplicative_monoid(n: int) -> SemigroupTable:
    """Integers mod ``n`` under multiplication."""
    return validate([f"m{i}" for i in range(n)], [[(i * j) % n for j in range(n)] for i in range(n)], f"M{n}")


def nilpotent_chain(k: int) -> SemigroupTable:
    """``{x^1, ..., x^k, 0}`` with ``x^i x^j = x^(i+j)`` or 0 past ``k``."""
    labels = [f"x{i}" for i in range(1, k + 1)] + ["0"]
    zero = k

    def mul(a, b):
        if a == zero or b == zero or a + b + 2 > k:
            return zero
        return a + b + 1

    n = k + 1
    return validate(labels, [[mul(a, b) for b in range(n)] for a in range(n)], f"C{k}")


def builtin_catalog(max_order: int = 6) -> list:
    """Groups and small non-cancellative semigroups up to ``max_order`` elements."""
    out = []
    for n in range(1, max_order + 1):
        out.append(cyclic_group(n))
    if max_order >= 4:
        out.append(klein_four())
    if max_order >= 6:
        out.append(symmetric_group(3))
    for n in range(2, min(max_order, 4) + 1):
        out.append(left_zero(n))
        out.append(right_zero(n))
        out.append(null_semigroup(n))
    for n in range(2, max_order + 1):
        out.append(multiplicative_monoid(n))
    for k in range(1, max_order):
        out.append(nilpotent_chain(k))
    return out


# -- catalog files -----------------------------------------------------------------

def _entry_line(text: str, index: int) -> int | None:
    # best-effort: line of the index-th '"name"' key
    count = -1
    for lineno, line in enumerate(text.splitlines(), start=1):
        count += line.count('"name"')
        if count >= index:
            return lineno
    return None


def parse_catalog(text: str) -> list:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, line=exc.lineno) from exc
    if not isinstance(data, list):
        raise ParseError("catalog must be a JSON array", line=1)
    tables = []
    for idx, entry in enumerate(data):
        line = _entry_line(text, idx)
        if not isinstance(entry, dict):
            raise ParseError(f"entry {idx} is not an object", line=line)
        name = entry.get("name")
        if not isinstance(name, str):
            raise ParseError("missing or non-string name", line=line, field="name")
        for key in ("elements", "table"):
            if key not in entry:
                raise ParseError("missing field", line=line, field=key, entry=name)
        elements, table = entry["elements"], entry["table"]
        if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
            raise ParseError("elements must be a list of strings", line=line, field="elements", entry=name)
        if not isinstance(table, list) or not all(isinstance(r, list) for r in table):
            raise ParseError("table must be a list of lists", line=line, field="table", entry=name)
        try:
            tables.append(validate(elements, table, name))
        except AssociativityError as exc:
            raise exc.tagged(name) from None
        except SemigroupError as exc:
            raise ParseError(str(exc), line=line, field="table", entry=name) from None
    return tables


def load_catalog(path) -> list:
    return parse_catalog(Path(path).read_text(encoding="utf-8"))


def catalog_to_json(tables: Sequence[SemigroupTable]) -> str:
    data = [
        {"name": S.name, "elements": list(S.elements), "table": [list(r) for r in S.table]}
        for S in tables
    ]
    return json.dumps(data, indent=1) + "\n"


def dump_catalog(tables: Sequence[SemigroupTable], path) -> None:
    Path(path).write_text(catalog_to_json(tables), encoding="utf-8")
