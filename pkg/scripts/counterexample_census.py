"""Which catalog tables break |pi_x| = pi_|x|, on the left and on the right?

Prints one row per table: structure flags, left and right verdicts, and the
largest deviation seen.
"""
import argparse

from ordharm.algebra import Weight
from ordharm.sampling import make_rng, random_element
from ordharm.semigroup import builtin_catalog, classify
from ordharm.verifiers import probe_elements, verify_lattice_hom, verify_right_lattice_hom


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    print(f"{'table':8} {'ord':>3} {'canc':>5} {'group':>5}  {'left':>5} {'right':>5}  max dev")
    for idx, S in enumerate(builtin_catalog(args.max_order)):
        f = classify(S)
        w = Weight.trivial(S)
        rng = make_rng(args.seed + idx)
        xs = probe_elements(w) + [random_element(rng, w) for _ in range(args.trials)]
        left, right = verify_lattice_hom(S, w, xs), verify_right_lattice_hom(S, xs)
        dev = max((v.witness["max_deviation"] for v in (left, right) if v.witness), default=0)
        print(f"{S.name:8} {S.order:3d} {f.is_cancellative!s:>5} {f.is_group!s:>5}  "
              f"{'ok' if left.passed else 'FAIL':>5} {'ok' if right.passed else 'FAIL':>5}  {dev}")


if __name__ == "__main__":
    main()
