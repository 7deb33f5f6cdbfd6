"""Session configuration: defaults, then the session file, then HGW_* variables, then flags."""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields

from ..exact import Field

REPORT_FORMATS = ("text", "json")

# environment variable -> SessionConfig field
ENV_VARS = {
    "HGW_DEGREE_CAP": "degree_cap",
    "HGW_ALPHA_CAP": "alpha_cap",
    "HGW_CYCLOTOMIC_ORDER": "cyclotomic_order",
    "HGW_REPORT": "report",
    "HGW_PARALLEL": "parallel",
    "HGW_CAPACITY_MONOMIALS": "capacity_monomials",
    "HGW_SEED": "seed",
    "HGW_TIMING": "timing",
}


class ConfigError(ValueError):
    pass


def _parse_bool(text: str) -> bool:
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"not a boolean: {text!r}")


@dataclass
class SessionConfig:
    cyclotomic_order: int = 1          # 1 means the rationals
    degree_cap: int = 3
    alpha_cap: int = 3
    capacity_monomials: int = 200000
    parallel: int = 1
    report: str = "text"
    seed: int = 0
    timing: bool = False

    def __post_init__(self):
        self.validate()

    def validate(self):
        if self.cyclotomic_order < 1:
            raise ConfigError(f"cyclotomic order must be >= 1, got {self.cyclotomic_order}")
        for name in ("degree_cap", "alpha_cap", "capacity_monomials", "parallel"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.report not in REPORT_FORMATS:
            raise ConfigError(f"report must be one of {REPORT_FORMATS}, got {self.report!r}")

    @property
    def field(self) -> Field:
        return Field(self.cyclotomic_order)

    def updated(self, **changes) -> "SessionConfig":
        """A copy with the given fields replaced (``None`` values are ignored)."""
        data = asdict(self)
        for k, v in changes.items():
            if v is None:
                continue
            if k not in data:
                raise ConfigError(f"unknown setting {k!r}")
            data[k] = coerce_setting(k, v)
        return SessionConfig(**data)

    def with_env(self, environ=None) -> "SessionConfig":
        environ = os.environ if environ is None else environ
        return self.updated(**{f: environ[v] for v, f in ENV_VARS.items() if v in environ})

    def to_dict(self) -> dict:
        d = asdict(self)
        d["field"] = "rational" if self.field.is_rational else f"cyclotomic {self.cyclotomic_order}"
        return d


def coerce_setting(name: str, value):
    types = {f.name: f.type for f in fields(SessionConfig)}
    kind = types[name]
    try:
        if kind == "bool":
            return value if isinstance(value, bool) else _parse_bool(value)
        if kind == "int":
            return int(value)
        return str(value)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad value for {name}: {value!r}") from exc
