"""Command-line entry point: ``ordharm {validate,verify,radicality,commutant,rk-check,search}``.

Exit codes: 0 success, 1 unexpected theorem failure, 2 usage or ingestion error.
"""
from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from .algebra import WeightError, load_weights, restrict_weight, weights_for
from .lp import NotAGroup
from .report import (
    ConfigError,
    RunConfig,
    build_report,
    dumps,
    exit_status,
    load_config_file,
)
from .sampling import disjoint_pair, random_element
from .semigroup import (
    SemigroupError,
    builtin_catalog,
    classify,
    load_catalog,
    subsemigroups,
)
from .verifiers import (
    RadicalityConfig,
    probe_elements,
    radicality_probe,
    search_counterexamples,
    verify_algebra_inequalities,
    verify_commutant,
    verify_disjointness_lemma,
    verify_embedding,
    verify_lattice_hom,
    verify_lp_action,
    verify_right_lattice_hom,
    verify_rk_oracles,
    verify_support_hypotheses,
)

EXIT_OK, EXIT_THEOREM, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _entry_rng(seed: int, index: int, stream: int = 0):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, index, stream])))


def _catalog(cfg: RunConfig) -> list:
    if cfg.catalog_path is None:
        return builtin_catalog(cfg.max_order)
    try:
        return load_catalog(cfg.catalog_path)
    except OSError as exc:
        raise UsageError(f"cannot read catalog {cfg.catalog_path}: {exc.strerror or exc}") from exc


def _weight_spec(cfg: RunConfig):
    if cfg.weight_path is None:
        return None
    try:
        return load_weights(cfg.weight_path)
    except OSError as exc:
        raise UsageError(f"cannot read weights {cfg.weight_path}: {exc.strerror or exc}") from exc


def _entries(catalog) -> list:
    return [{"name": S.name, "order": S.order, "flags": classify(S).as_dict()} for S in catalog]


def _emit(report: dict, cfg: RunConfig) -> None:
    text = dumps(report)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text, encoding="utf-8")
        s = report.get("summary", {})
        print(f"wrote {cfg.output_path}: {s.get('passed', 0)} passed, {s.get('failed', 0)} failed "
              f"({s.get('unexpected_failures', 0)} unexpected)")
    else:
        sys.stdout.write(text)


# -- subcommands ------------------------------------------------------------------

def cmd_validate(cfg: RunConfig) -> tuple:
    catalog = _catalog(cfg)
    report = build_report("validate", cfg, _entries(catalog), [])
    return EXIT_OK, report


def cmd_verify(cfg: RunConfig) -> tuple:
    catalog = _catalog(cfg)
    spec = _weight_spec(cfg)
    verdicts = []
    for idx, S in enumerate(catalog):
        flags = classify(S)
        w = weights_for(spec, S)
        rng = _entry_rng(cfg.seed, idx)
        samples = probe_elements(w) + [random_element(rng, w) for _ in range(cfg.trials)]
        verdicts.append(verify_lattice_hom(S, w, samples))
        verdicts.append(verify_right_lattice_hom(S, samples))
        verdicts.append(verify_support_hypotheses(S, w, samples[-cfg.trials:]))
        verdicts.append(verify_algebra_inequalities(S, w, samples))
        pairs = [disjoint_pair(rng, S.order) for _ in range(cfg.trials)]
        verdicts.append(verify_disjointness_lemma(pairs, instance=S.name))
        if flags.is_group:
            verdicts.append(verify_lp_action(S, cfg.p_values, cfg.trials, seed=cfg.seed + idx))
            if S.order <= cfg.enumeration_cutoff:
                verdicts.append(verify_commutant(S, p=cfg.p_values[0], cutoff=cfg.enumeration_cutoff))
        sub_rng = _entry_rng(cfg.seed, idx, stream=1)
        per_pair = max(2, cfg.trials // 10)
        for T in subsemigroups(S) if S.order <= 6 else []:
            ws = restrict_weight(w, T)
            xs = [random_element(sub_rng, ws) for _ in range(per_pair)]
            v = verify_embedding(T, w, xs, seed=cfg.seed + idx)
            v.instance = S.name
            v.notes.append(f"sub={','.join(T.elements)}")
            verdicts.append(v)
    report = build_report("verify", cfg, _entries(catalog), verdicts)
    return exit_status(report), report


def cmd_search(cfg: RunConfig) -> tuple:
    catalog = _catalog(cfg)
    spec = _weight_spec(cfg)
    verdicts = search_counterexamples(catalog, cfg.trials, cfg.seed, lambda S: weights_for(spec, S))
    report = build_report("search", cfg, _entries(catalog), verdicts)
    report["witnesses"] = [v.to_dict() for v in verdicts if not v.passed]
    return exit_status(report), report


def cmd_commutant(cfg: RunConfig) -> tuple:
    catalog = _catalog(cfg)
    groups = [S for S in catalog if classify(S).is_group and S.order <= cfg.enumeration_cutoff]
    verdicts = [verify_commutant(G, p=cfg.p_values[0], cutoff=cfg.enumeration_cutoff) for G in groups]
    report = build_report("commutant", cfg, _entries(groups), verdicts)
    return exit_status(report), report


def cmd_rk_check(cfg: RunConfig) -> tuple:
    v = verify_rk_oracles(cfg.trials, cfg.seed, max_dim=min(10, cfg.enumeration_cutoff), cutoff=cfg.enumeration_cutoff)
    report = build_report("rk-check", cfg, [], [v])
    return exit_status(report), report


def _log_weight_family(cfg: RunConfig):
    fam = cfg.family
    if fam == "exp-neg-square":
        return lambda n: -float(n * n)
    if fam == "trivial":
        return lambda n: 0.0
    if fam == "geometric":
        r = Fraction(cfg.ratio)
        if r <= 0:
            raise UsageError("ratio must be positive")
        lr = math.log(r.numerator) - math.log(r.denominator)
        return lambda n: n * lr
    if fam == "polynomial":
        # w(n) = (1 + n)^(-ratio); submultiplicative only for ratio <= 0
        a = float(Fraction(cfg.ratio))
        return lambda n: -a * math.log1p(n)
    raise UsageError(f"unknown weight family {fam!r}")


def _log_weights_from_file(cfg: RunConfig):
    spec = _weight_spec(cfg)
    flat = spec.get("flat") if spec else None
    if flat is None:
        raise UsageError("radicality weight file must map n to a decimal string")
    logs = []
    for n in range(cfg.depth + 1):
        v = flat.get(str(n))
        if v is None or v <= 0:
            raise UsageError(f"weight file lacks a positive value for n={n}")
        logs.append(math.log(v.numerator) - math.log(v.denominator))
    return logs


def cmd_radicality(cfg: RunConfig) -> tuple:
    log_w = _log_weights_from_file(cfg) if cfg.weight_path else _log_weight_family(cfg)
    try:
        result = radicality_probe(log_w, cfg.depth, RadicalityConfig())
    except ValueError as exc:
        raise WeightError(str(exc)) from exc
    report = build_report("radicality", cfg, [], [], extra={"radicality": result.to_dict()})
    return EXIT_OK, report


COMMANDS = {
    "validate": cmd_validate,
    "verify": cmd_verify,
    "search": cmd_search,
    "commutant": cmd_commutant,
    "rk-check": cmd_rk_check,
    "radicality": cmd_radicality,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ordharm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--catalog", dest="catalog_path", help="JSON catalog (default: built-in)")
        p.add_argument("--weights", dest="weight_path", help="JSON weight file")
        p.add_argument("--seed", type=int)
        p.add_argument("--trials", type=int)
        p.add_argument("--cutoff", dest="enumeration_cutoff", type=int)
        p.add_argument("--p", dest="p_values", type=float, action="append", help="repeatable")
        p.add_argument("--out", dest="output_path")
        p.add_argument("--config", help="JSON config; flags override it")
        p.add_argument("--max-order", dest="max_order", type=int, help="size bound of the built-in catalog")
        if name == "radicality":
            p.add_argument("--depth", type=int)
            p.add_argument("--family", choices=["exp-neg-square", "trivial", "geometric", "polynomial"])
            p.add_argument("--ratio")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    flags = vars(args).copy()
    command = flags.pop("command")
    config_path = flags.pop("config")
    try:
        file_values = load_config_file(config_path) if config_path else None
        cfg = RunConfig.merged(file_values, flags)
        code, report = COMMANDS[command](cfg)
    except (SemigroupError, WeightError, ConfigError, UsageError, NotAGroup) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(report, cfg)
    return code


if __name__ == "__main__":
    sys.exit(main())
