"""Per-instance checks of the lattice-homomorphism theorems and their companions.

Every check returns a :class:`Verdict`. A failing verdict carries a witness
holding the exact inputs and the two values that disagree, so the failure
can be recomputed with :func:`replay`.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .algebra import (
    Weight,
    WeightedL1Element,
    beurling_norm,
    convolve,
    restrict_weight,
    support,
    zero_extend,
)
from .lattice import LatticeVector, are_disjoint, le, modulus, sup
from .measures import (
    FiniteMeasure,
    measure_sup,
    measure_sup_oracle,
    subset_sums,
    total_variation,
    total_variation_oracle,
)
from .lp import LpElement, group_inverses, lp_action, lp_norm
from .operators import (
    DEFAULT_CUTOFF,
    RegularOperator,
    commutant_basis,
    left_convolution_preimage,
    left_regular_matrix,
    operator_inf,
    operator_modulus,
    operator_sup,
    regular_norm,
    right_translation_matrix,
    rk_inf_oracle,
    rk_modulus_oracle,
    rk_sup_oracle,
)
from .sampling import make_rng, random_element, random_matrix, rational_vector
from .semigroup import SemigroupTable, classify, opposite, product_set, validate

__all__ = [
    "Verdict",
    "RadicalityConfig",
    "RadicalityResult",
    "verify_lattice_hom",
    "verify_right_lattice_hom",
    "search_counterexamples",
    "verify_support_hypotheses",
    "verify_disjointness_lemma",
    "verify_lp_action",
    "radicality_probe",
    "verify_embedding",
    "verify_commutant",
    "replay",
    "probe_elements",
    "verify_algebra_inequalities",
    "verify_rk_oracles",
    "verify_measure_formulas",
]

SAMPLED = "sampled"
EXHAUSTIVE = "exhaustive"


@dataclass
class Verdict:
    theorem_id: str
    instance: str
    passed: bool
    mode: str
    checked: int
    witness: dict | None = None
    failures: int = 0
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "instance": self.instance,
            "passed": self.passed,
            "mode": self.mode,
            "checked": self.checked,
            "failures": self.failures,
            "witness": self.witness,
            "notes": list(self.notes),
        }


def _table_dict(S: SemigroupTable) -> dict:
    return {"name": S.name, "elements": list(S.elements), "table": [list(r) for r in S.table]}


def _table_from(d: dict) -> SemigroupTable:
    return validate(d["elements"], d["table"], d.get("name", ""))


def _max_dev(A: RegularOperator, B: RegularOperator) -> tuple:
    best, where = Fraction(0), None
    for i, (ra, rb) in enumerate(zip(A.matrix, B.matrix)):
        for j, (a, b) in enumerate(zip(ra, rb)):
            d = abs(a - b)
            if d > best:
                best, where = d, [i, j]
    return best, where


def _vec_dev(x, y) -> Fraction:
    return max(abs(a - b) for a, b in zip(x, y))


# -- lattice homomorphism ------------------------------------------------------

def _lattice_hom_gap(x: WeightedL1Element) -> tuple:
    lhs = operator_modulus(left_regular_matrix(x))
    rhs = left_regular_matrix(x.abs())
    dev, where = _max_dev(lhs, rhs)
    return lhs, rhs, dev, where


def verify_lattice_hom(
    S: SemigroupTable,
    weight: Weight,
    samples: Iterable[WeightedL1Element],
    theorem_id: str = "lattice_hom",
) -> Verdict:
    """Compare ``|pi_x|`` with ``pi_|x|`` for every sample."""
    checked = failures = 0
    witness = None
    for x in samples:
        checked += 1
        lhs, rhs, dev, where = _lattice_hom_gap(x)
        if dev != 0:
            failures += 1
            if witness is None:
                witness = {
                    "check": "lattice_hom",
                    "semigroup": _table_dict(S),
                    "weight": list(weight.values),
                    "x": list(x.coords),
                    "lhs": [list(r) for r in lhs.matrix],
                    "rhs": [list(r) for r in rhs.matrix],
                    "at": where,
                    "max_deviation": dev,
                }
    return Verdict(theorem_id, S.name, failures == 0, SAMPLED, checked, witness, failures)


def probe_elements(weight: Weight) -> list:
    """Deterministic probes: every ``delta_s - delta_t`` and ``delta_s + delta_t``."""
    n = weight.semigroup.order
    out = []
    for s, t in itertools.combinations(range(n), 2):
        for sign in (-1, 1):
            c = [Fraction(0)] * n
            c[s], c[t] = Fraction(sign), Fraction(1)
            out.append(WeightedL1Element(LatticeVector(c), weight))
    return out


def _entry_rng(seed: int, index: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index])))


def verify_right_lattice_hom(S: SemigroupTable, samples: Sequence[WeightedL1Element]) -> Verdict:
    """The same check on the opposite table, i.e. for right multiplication operators."""
    Sop = opposite(S)
    w = Weight(Sop, samples[0].weight.values) if samples else Weight.trivial(Sop)
    moved = [WeightedL1Element(x.vector, w) for x in samples]
    v = verify_lattice_hom(Sop, w, moved, theorem_id="lattice_hom_right")
    v.instance = S.name
    return v


def search_counterexamples(
    catalog: Sequence[SemigroupTable],
    trials: int,
    seed: int,
    weights: Callable[[SemigroupTable], Weight] | None = None,
) -> list:
    """Run the lattice-homomorphism check on every entry; one verdict per entry.

    Samples per entry are the structured probes plus ``trials`` random rational
    elements from a generator seeded by ``(seed, entry index)``.
    """
    verdicts = []
    for idx, S in enumerate(catalog):
        w = weights(S) if weights else Weight.trivial(S)
        rng = _entry_rng(seed, idx)
        samples = probe_elements(w) + [random_element(rng, w) for _ in range(trials)]
        v = verify_lattice_hom(S, w, samples)
        v.notes.append("cancellative" if classify(S).is_cancellative else "non-cancellative")
        verdicts.append(v)
    return verdicts


# -- supports and disjointness -------------------------------------------------------

def verify_support_hypotheses(S: SemigroupTable, weight: Weight, samples: Sequence[WeightedL1Element]) -> Verdict:
    """``supp(x * y)`` inside ``supp x . supp y`` on sample pairs, plus coordinate restrictions."""
    checked = failures = 0
    witness = None
    pairs = list(zip(samples, samples[1:])) + [(x, x) for x in samples]
    for x, y in pairs:
        checked += 1
        got = support(convolve(x, y))
        allowed = product_set(S, support(x), support(y))
        if not got <= allowed:
            failures += 1
            if witness is None:
                witness = {
                    "check": "support",
                    "semigroup": _table_dict(S),
                    "weight": list(weight.values),
                    "x": list(x.coords),
                    "y": list(y.coords),
                    "lhs": sorted(got),
                    "rhs": sorted(allowed),
                    "max_deviation": len(got - allowed),
                }
    # restrictions chi_A y stay in the space, are dominated by |y| and add back up to y
    for y in samples:
        sy = sorted(support(y))
        if len(sy) > 10:
            continue
        for r in range(len(sy) + 1):
            for A in itertools.combinations(sy, r):
                checked += 1
                A = set(A)
                part = LatticeVector(c if s in A else 0 for s, c in enumerate(y.coords))
                rest = LatticeVector(c if s not in A else 0 for s, c in enumerate(y.coords))
                ok = (
                    {s for s, c in enumerate(part) if c != 0} <= A
                    and le(modulus(part), modulus(y.vector))
                    and part + rest == y.vector
                )
                if not ok:
                    failures += 1
                    if witness is None:
                        witness = {"check": "restriction", "y": list(y.coords), "A": sorted(A)}
    return Verdict("support_hypotheses", S.name, failures == 0, SAMPLED, checked, witness, failures)


def verify_disjointness_lemma(pairs: Iterable[tuple], instance: str = "") -> Verdict:
    """``|x + y| = |x| + |y|`` on the pairs with disjoint supports; others are skipped."""
    checked = failures = 0
    witness = None
    for x, y in pairs:
        x = x.vector if isinstance(x, WeightedL1Element) else x
        y = y.vector if isinstance(y, WeightedL1Element) else y
        if not are_disjoint(x, y):
            continue
        checked += 1
        lhs = modulus(x + y)
        rhs = modulus(x) + modulus(y)
        if lhs != rhs:
            failures += 1
            if witness is None:
                witness = {
                    "check": "disjointness",
                    "x": list(x),
                    "y": list(y),
                    "lhs": list(lhs),
                    "rhs": list(rhs),
                    "max_deviation": _vec_dev(lhs, rhs),
                }
    return Verdict("disjointness_lemma", instance, failures == 0, SAMPLED, checked, witness, failures)


# -- L^p action ------------------------------------------------------------------

def verify_lp_action(
    G: SemigroupTable,
    p_values: Sequence[float],
    trials: int,
    seed: int,
    tol: float = 1e-9,
) -> Verdict:
    """Lattice, norm and injectivity properties of ``mu -> pi_mu`` on ``L^p(G)``."""
    group_inverses(G)
    n = G.order
    w = Weight.trivial(G)
    rng = make_rng(seed)
    checked = failures = 0
    witness = None
    notes = []

    def fail(record):
        nonlocal failures, witness
        failures += 1
        if witness is None:
            witness = record

    for _ in range(trials):
        mu = random_element(rng, w)
        g_pos = rational_vector(rng, n, positive=True)
        g = rational_vector(rng, n)
        M = left_regular_matrix(mu)
        # matrix of the action agrees with the defining formula
        checked += 1
        direct = lp_action(mu, LpElement(g, 1, G)).vector
        if M.apply(g) != direct:
            fail({"check": "lp_matrix", "semigroup": _table_dict(G), "mu": list(mu.coords), "g": list(g),
                  "lhs": list(M.apply(g)), "rhs": list(direct), "max_deviation": _vec_dev(M.apply(g), direct)})
        # |pi_mu| g = pi_|mu| g for g >= 0
        checked += 1
        lhs = operator_modulus(M).apply(g_pos)
        rhs = lp_action(mu.abs(), LpElement(g_pos, 1, G)).vector
        if lhs != rhs:
            fail({"check": "lp_modulus", "semigroup": _table_dict(G), "mu": list(mu.coords), "g": list(g_pos),
                  "lhs": list(lhs), "rhs": list(rhs), "max_deviation": _vec_dev(lhs, rhs)})
        mu_norm = beurling_norm(mu)
        for p in p_values:
            checked += 1
            gp = LpElement(g, p, G)
            left = lp_norm(lp_action(mu, gp))
            right = mu_norm * lp_norm(gp)
            if float(left) > float(right) + tol:
                fail({"check": "lp_contraction", "p": p, "mu": list(mu.coords), "g": list(g),
                      "lhs": float(left), "rhs": float(right), "max_deviation": float(left) - float(right)})
    # attainment on the constant function for positive measures
    ones = LatticeVector([1] * n)
    for _ in range(trials):
        mu = random_element(rng, w, positive=True)
        for p in p_values:
            checked += 1
            gp = LpElement(ones, p, G)
            left = lp_norm(lp_action(mu, gp))
            right = beurling_norm(mu) * lp_norm(gp)
            ok = left == right if p == 1 else abs(float(left) - float(right)) <= tol
            if not ok:
                fail({"check": "lp_attainment", "p": p, "mu": list(mu.coords),
                      "lhs": left, "rhs": right, "max_deviation": abs(float(left) - float(right))})
    # injectivity on the point masses
    mats = {left_regular_matrix(WeightedL1Element.delta(w, s)).matrix for s in range(n)}
    checked += 1
    if len(mats) != n:
        fail({"check": "lp_injective", "distinct": len(mats), "expected": n})
    notes.append(f"p in {sorted(float(p) for p in p_values)}; float tolerance {tol:g}")
    return Verdict("lp_action", G.name, failures == 0, SAMPLED, checked, witness, failures, notes)


# -- radicality -------------------------------------------------------------------

RADICAL = "RADICAL_CANDIDATE"
SEMISIMPLE = "SEMISIMPLE_CANDIDATE"
INCONCLUSIVE = "INCONCLUSIVE"


@dataclass(frozen=True)
class RadicalityConfig:
    threshold: float = 1e-3  # last root must fall below this for a radical candidate
    floor: float = 0.1  # tail bounded below by this reads as non-quasi-nilpotent
    min_depth: int = 4
    tail_fraction: float = 0.5


@dataclass
class RadicalityResult:
    depth: int
    roots: list
    classification: str

    def to_dict(self) -> dict:
        return {"depth": self.depth, "roots": list(self.roots), "classification": self.classification}


def radicality_probe(log_weight, depth: int, config: RadicalityConfig = RadicalityConfig()) -> RadicalityResult:
    """Probe ``w(n) ** (1/n)`` for the generator of the additive semigroup {0, 1, 2, ...}.

    ``log_weight`` is a callable ``n -> log w(n)`` or a sequence indexed by
    ``n = 0..depth``; logs keep weights such as ``exp(-n**2)`` representable.
    Submultiplicativity is checked on the truncation ``n + m <= depth``.
    """
    if depth < 1:
        raise ValueError("depth must be >= 1")
    if callable(log_weight):
        logs = [float(log_weight(n)) for n in range(depth + 1)]
    else:
        logs = [float(v) for v in log_weight]
        if len(logs) < depth + 1:
            raise ValueError(f"need log weights for n = 0..{depth}")
        logs = logs[: depth + 1]
    for n, v in enumerate(logs):
        if not math.isfinite(v):
            raise ValueError(f"weight at n={n} is not a finite positive number")
    for a in range(depth + 1):
        for b in range(depth + 1 - a):
            slack = 1e-12 * max(1.0, abs(logs[a]) + abs(logs[b]))
            if logs[a + b] > logs[a] + logs[b] + slack:
                raise ValueError(f"weight not submultiplicative at ({a},{b})")
    roots = [math.exp(logs[n] / n) for n in range(1, depth + 1)]
    if depth < config.min_depth:
        label = INCONCLUSIVE
    else:
        start = min(int(len(roots) * (1 - config.tail_fraction)), len(roots) - 2)
        tail = roots[start:]
        decreasing = all(b <= a for a, b in zip(tail, tail[1:]))
        if decreasing and tail[-1] < config.threshold:
            label = RADICAL
        elif min(tail) >= config.floor:
            label = SEMISIMPLE
        else:
            label = INCONCLUSIVE
    return RadicalityResult(depth, roots, label)


# -- embedding -------------------------------------------------------------------------

def verify_embedding(
    S: SemigroupTable,
    target: Weight,
    samples: Sequence[WeightedL1Element],
    seed: int = 0,
) -> Verdict:
    """Zero extension from l1(S) into l1(G) respects the lattice and algebra structure."""
    G = target.semigroup
    ws = restrict_weight(target, S)
    idx = [G.elements.index(e) for e in S.elements]
    off = [g for g in range(G.order) if g not in set(idx)]
    rng = make_rng(seed)
    checked = failures = 0
    witness = None
    samples = [WeightedL1Element(x.vector, ws) for x in samples]
    pairs = list(zip(samples, samples[1:] + samples[:1]))
    for x, y in pairs:
        ex, ey = zero_extend(x, target), zero_extend(y, target)
        checks = {
            "sup": (zero_extend(x.with_vector(sup(x.vector, y.vector)), target).vector, sup(ex.vector, ey.vector)),
            "modulus": (zero_extend(x.abs(), target).vector, modulus(ex.vector)),
            "convolution": (zero_extend(convolve(x, y), target).vector, convolve(ex, ey).vector),
        }
        for name, (a, b) in checks.items():
            checked += 1
            if a != b:
                failures += 1
                witness = witness or {"check": f"embedding_{name}", "x": list(x.coords), "y": list(y.coords),
                                      "lhs": list(a), "rhs": list(b), "max_deviation": _vec_dev(a, b)}
        checked += 2
        if support(ex) != {idx[s] for s in support(x)}:
            failures += 1
            witness = witness or {"check": "embedding_support", "x": list(x.coords)}
        if beurling_norm(ex) != beurling_norm(x):
            failures += 1
            witness = witness or {"check": "embedding_norm", "x": list(x.coords)}
        # order ideal: anything dominated by |ext x| vanishes off S
        checked += 1
        bound = modulus(ex.vector)
        u = []
        for b in bound:
            r = Fraction(int(rng.integers(-6, 7)), 6)
            u.append(r * b)
        u = LatticeVector(u)
        if le(modulus(u), bound) and any(u[g] != 0 for g in off):
            failures += 1
            witness = witness or {"check": "embedding_ideal", "u": list(u)}
    return Verdict("embedding", f"{S.name} in {G.name}", failures == 0, SAMPLED, checked, witness, failures)


# -- commutant ---------------------------------------------------------------------------

def verify_commutant(G: SemigroupTable, p: float = 1, cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    """Operators commuting with all right translations are exactly the left convolutions."""
    basis = commutant_basis(G, cutoff)
    rhos = [right_translation_matrix(G, t) for t in range(G.order)]
    failures = 0
    witness = None
    checked = 1
    if len(basis) != G.order:
        failures += 1
        witness = {"check": "commutant_dimension", "lhs": len(basis), "rhs": G.order}

    def commutes(T):
        return all((T @ R).matrix == (R @ T).matrix for R in rhos)

    for k, B in enumerate(basis):
        checked += 2
        if left_convolution_preimage(B, G) is None:
            failures += 1
            witness = witness or {"check": "commutant_wendel", "basis_index": k, "matrix": [list(r) for r in B.matrix]}
        if not commutes(operator_modulus(B)):
            failures += 1
            witness = witness or {"check": "commutant_modulus", "basis_index": k}
    for (i, A), (j, B) in itertools.combinations_with_replacement(enumerate(basis), 2):
        checked += 3
        if not commutes(A @ B):
            failures += 1
            witness = witness or {"check": "commutant_product", "pair": [i, j]}
        if not commutes(operator_modulus(A - B)) or not commutes(operator_modulus(A + B)):
            failures += 1
            witness = witness or {"check": "commutant_modulus", "pair": [i, j]}
    v = Verdict("commutant", G.name, failures == 0, EXHAUSTIVE, checked, witness, failures)
    v.notes.append(f"dimension {len(basis)}; p={p} (commutation is p-independent at finite order)")
    return v


# -- replay -----------------------------------------------------------------------------

def _frac_list(xs):
    return [Fraction(v) if not isinstance(v, float) else v for v in xs]


def replay(witness: dict):
    """Recompute the deviation recorded in a witness (also accepts its JSON form)."""
    check = witness["check"]
    if check == "lattice_hom":
        S = _table_from(witness["semigroup"])
        w = Weight(S, _frac_list(witness["weight"]))
        x = WeightedL1Element(LatticeVector(_frac_list(witness["x"])), w)
        return _lattice_hom_gap(x)[2]
    if check == "disjointness":
        x = LatticeVector(_frac_list(witness["x"]))
        y = LatticeVector(_frac_list(witness["y"]))
        return _vec_dev(modulus(x + y), modulus(x) + modulus(y))
    if check == "lp_modulus":
        G = _table_from(witness["semigroup"])
        w = Weight.trivial(G)
        mu = WeightedL1Element(LatticeVector(_frac_list(witness["mu"])), w)
        g = LatticeVector(_frac_list(witness["g"]))
        lhs = operator_modulus(left_regular_matrix(mu)).apply(g)
        rhs = lp_action(mu.abs(), LpElement(g, 1, G)).vector
        return _vec_dev(lhs, rhs)
    if check == "support":
        S = _table_from(witness["semigroup"])
        w = Weight(S, _frac_list(witness["weight"]))
        x = WeightedL1Element(LatticeVector(_frac_list(witness["x"])), w)
        y = WeightedL1Element(LatticeVector(_frac_list(witness["y"])), w)
        return len(support(convolve(x, y)) - product_set(S, support(x), support(y)))
    raise ValueError(f"no replay for witness kind {check!r}")


# -- sweeps over inequalities and oracles --------------------------------------------

def verify_algebra_inequalities(S: SemigroupTable, weight: Weight, samples: Sequence[WeightedL1Element]) -> Verdict:
    """Riesz inequality, Beurling submultiplicativity and regular-norm submultiplicativity."""
    checked = failures = 0
    witness = None
    pairs = list(zip(samples, samples[1:] + samples[:1]))
    for x, y in pairs:
        xy = convolve(x, y)
        lhs = modulus(xy.vector)
        rhs = convolve(x.abs(), y.abs()).vector
        checked += 3
        if not le(lhs, rhs):
            failures += 1
            witness = witness or {"check": "riesz", "x": list(x.coords), "y": list(y.coords),
                                  "lhs": list(lhs), "rhs": list(rhs)}
        if beurling_norm(xy) > beurling_norm(x) * beurling_norm(y):
            failures += 1
            witness = witness or {"check": "beurling_submultiplicative", "x": list(x.coords), "y": list(y.coords),
                                  "lhs": beurling_norm(xy), "rhs": beurling_norm(x) * beurling_norm(y)}
        Px, Py = left_regular_matrix(x), left_regular_matrix(y)
        a, b = regular_norm(Px @ Py), regular_norm(Px) * regular_norm(Py)
        if a > b:
            failures += 1
            witness = witness or {"check": "regular_norm_submultiplicative", "x": list(x.coords),
                                  "y": list(y.coords), "lhs": a, "rhs": b}
    return Verdict("algebra_inequalities", S.name, failures == 0, SAMPLED, checked, witness, failures)


def verify_rk_oracles(trials: int, seed: int, max_dim: int = 10, cutoff: int = DEFAULT_CUTOFF) -> Verdict:
    """Random rational matrices: box-vertex and binary-split oracles against the entrywise forms."""
    rng = make_rng(seed)
    checked = failures = 0
    witness = None
    max_dim = min(max_dim, cutoff)
    for _ in range(trials):
        m = int(rng.integers(1, max_dim + 1))
        n = int(rng.integers(1, max_dim + 1))
        S = random_matrix(rng, m, n)
        T = random_matrix(rng, m, n)
        x = rational_vector(rng, n, positive=True)
        cases = (
            ("rk_modulus", rk_modulus_oracle(S, x, cutoff), operator_modulus(S).apply(x)),
            ("rk_sup", rk_sup_oracle(S, T, x, cutoff), operator_sup(S, T).apply(x)),
            ("rk_inf", rk_inf_oracle(S, T, x, cutoff), operator_inf(S, T).apply(x)),
        )
        for name, oracle, closed in cases:
            checked += 1
            if oracle != closed:
                failures += 1
                witness = witness or {"check": name, "S": [list(r) for r in S.matrix],
                                      "T": [list(r) for r in T.matrix], "x": list(x),
                                      "lhs": list(oracle), "rhs": list(closed),
                                      "max_deviation": _vec_dev(oracle, closed)}
    return Verdict("riesz_kantorovich", f"{trials} random matrices, n<={max_dim}", failures == 0,
                   SAMPLED, checked, witness, failures)


def verify_measure_formulas(mus: Sequence[FiniteMeasure], nus: Sequence[FiniteMeasure]) -> Verdict:
    """Subset and partition suprema against the atomwise closed forms, on every subset A."""
    checked = failures = 0
    witness = None
    for mu, nu in zip(mus, nus):
        ms, ns = subset_sums(mu), subset_sums(nu)
        closed_sup = subset_sums(measure_sup(mu, nu))
        closed_tv = subset_sums(total_variation(mu))
        for A in range(1 << len(mu)):
            checked += 2
            got = measure_sup_oracle(mu, nu, A, (ms, ns))
            if got != closed_sup[A]:
                failures += 1
                witness = witness or {"check": "measure_sup", "mu": list(mu.atoms), "nu": list(nu.atoms),
                                      "A": A, "lhs": got, "rhs": closed_sup[A]}
            got = total_variation_oracle(mu, A, ms)
            if got != closed_tv[A]:
                failures += 1
                witness = witness or {"check": "total_variation", "mu": list(mu.atoms),
                                      "A": A, "lhs": got, "rhs": closed_tv[A]}
    return Verdict("measure_lattice", f"{len(mus)} measures", failures == 0, EXHAUSTIVE, checked, witness, failures)
