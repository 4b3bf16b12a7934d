"""Run configuration, report assembly and the deterministic JSON encoding."""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction
from pathlib import Path

from . import __version__

EXPECTED_WHEN_NOT_CANCELLATIVE = frozenset({"lattice_hom", "lattice_hom_right"})


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    catalog_path: str | None = None  # None: the built-in catalog
    weight_path: str | None = None  # None: trivial weight
    seed: int = 0
    trials: int = 50
    enumeration_cutoff: int = 12
    p_values: list = field(default_factory=lambda: [1, 2, 3])
    output_path: str | None = None
    max_order: int = 6  # size bound for the built-in catalog
    depth: int = 30
    family: str = "exp-neg-square"
    ratio: str = "1/2"

    def check(self) -> "RunConfig":
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not 4 <= self.enumeration_cutoff <= 20:
            raise ConfigError(f"cutoff must lie in [4, 20], got {self.enumeration_cutoff}")
        if not self.p_values or any(float(p) < 1 for p in self.p_values):
            raise ConfigError(f"every p must be >= 1, got {self.p_values}")
        if self.depth < 1:
            raise ConfigError("depth must be >= 1")
        return self

    @classmethod
    def merged(cls, file_values: dict | None, cli_values: dict) -> "RunConfig":
        """Defaults, overridden by the config file, overridden by command-line flags."""
        names = {f.name for f in fields(cls)}
        values = {}
        for source in (file_values or {}, cli_values):
            for k, v in source.items():
                if k not in names:
                    raise ConfigError(f"unknown config key {k!r}")
                if v is not None:
                    values[k] = v
        try:
            cfg = cls(**values)
        except TypeError as exc:
            raise ConfigError(str(exc)) from exc
        cfg.p_values = [_number(p) for p in cfg.p_values]
        return cfg.check()

    def echo(self) -> dict:
        # the destination does not influence the content
        d = asdict(self)
        d.pop("output_path")
        return d


def _number(p):
    p = float(p)
    return int(p) if p.is_integer() else p


def load_config_file(path) -> dict:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return data


def to_jsonable(obj):
    """Fractions as ``"p/q"``, floats as 17-significant-digit strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Fraction):
        return f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return format(obj, ".17g")
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_jsonable(v) for v in items]
    if hasattr(obj, "to_dict"):
        return to_jsonable(obj.to_dict())
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(report: dict) -> str:
    return json.dumps(to_jsonable(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def sort_verdicts(verdicts: list) -> list:
    return sorted(verdicts, key=lambda v: (v.theorem_id, v.instance))


def unexpected_failures(report: dict) -> list:
    """Failing verdicts not explained by a non-cancellative table.

    Uses the flags recorded in the report itself, so a report whose flags and
    verdicts contradict each other is caught.
    """
    flags = {e["name"]: e["flags"] for e in report.get("entries", [])}
    out = []
    for v in report["verdicts"]:
        d = v if isinstance(v, dict) else v.to_dict()
        if d["passed"]:
            continue
        f = flags.get(d["instance"])
        if d["theorem_id"] in EXPECTED_WHEN_NOT_CANCELLATIVE and f is not None and not f["is_cancellative"]:
            continue
        out.append(d)
    return out


def summarize(report: dict) -> dict:
    verdicts = [v if isinstance(v, dict) else v.to_dict() for v in report["verdicts"]]
    unexpected = len(unexpected_failures(report))
    failed = sum(not v["passed"] for v in verdicts)
    return {
        "verdicts": len(verdicts),
        "passed": sum(v["passed"] for v in verdicts),
        "failed": failed,
        "expected_failures": failed - unexpected,
        "unexpected_failures": unexpected,
        "sampled": sum(v["mode"] == "sampled" for v in verdicts),
        "exhaustive": sum(v["mode"] == "exhaustive" for v in verdicts),
    }


def build_report(command: str, config: RunConfig, entries: list, verdicts: list, extra: dict | None = None) -> dict:
    report = {
        "tool": "ordharm",
        "version": __version__,
        "command": command,
        "config": config.echo(),
        "entries": entries,
        "verdicts": [v.to_dict() for v in sort_verdicts(verdicts)],
    }
    if extra:
        report.update(extra)
    report["summary"] = summarize(report)
    return report


def exit_status(report: dict) -> int:
    return 1 if unexpected_failures(report) else 0
