"""Write example catalogs and weight files into a directory (default: ./catalogs)."""
import argparse
import json
from pathlib import Path

from ordharm.semigroup import builtin_catalog, catalog_to_json, classify


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("outdir", nargs="?", default="catalogs")
    ap.add_argument("--max-order", type=int, default=6)
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)
    cat = builtin_catalog(args.max_order)
    (out / "builtin.json").write_text(catalog_to_json(cat), encoding="utf-8")
    groups = [S for S in cat if classify(S).is_group]
    (out / "groups.json").write_text(catalog_to_json(groups), encoding="utf-8")
    # (a a) b = b b = a, a (a b) = a a = b
    broken = [{"name": "broken", "elements": ["a", "b"], "table": [[1, 0], [0, 0]]}]
    (out / "non_associative.json").write_text(json.dumps(broken, indent=1) + "\n", encoding="utf-8")
    # per-entry weights; labels left out weigh 1
    weights = {"N3": {"z": "1", "a": "2", "b": "3"}, "Z2": {"0": "1", "1": "3/2"}}
    (out / "weights.json").write_text(json.dumps(weights, indent=1) + "\n", encoding="utf-8")
    for name in ("builtin", "groups", "non_associative", "weights"):
        print(out / f"{name}.json")


if __name__ == "__main__":
    main()
