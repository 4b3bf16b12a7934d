"""nth-root sequences and labels for a few weight families on {0, 1, 2, ...}."""
import argparse
import math

from ordharm.verifiers import radicality_probe

FAMILIES = {
    "exp(-n^2)": lambda n: -float(n * n),
    "exp(-n^1.5)": lambda n: -float(n) ** 1.5,
    "2^-n": lambda n: -n * math.log(2),
    "1": lambda n: 0.0,
    "(1+n)^-2": lambda n: -2 * math.log1p(n),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--depths", type=int, nargs="+", default=[1, 5, 10, 20, 30, 60])
    args = ap.parse_args()
    for name, log_w in FAMILIES.items():
        for depth in args.depths:
            try:
                r = radicality_probe(log_w, depth)
            except ValueError as exc:
                print(f"{name:12} depth {depth:3d}  rejected: {exc}")
                continue
            print(f"{name:12} depth {depth:3d}  last root {r.roots[-1]:.3e}  {r.classification}")


if __name__ == "__main__":
    main()
