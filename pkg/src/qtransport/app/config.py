"""Run configuration: flat ``key = value`` files merged with overrides."""
from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from pathlib import Path

SCENARIOS = ("product", "zero_cc", "custom")
SWEEP_PARAMS = ("p", "gamma", "T_A", "T_B", "omega")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class SweepSpec:
    param: str
    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.param not in SWEEP_PARAMS:
            raise ConfigError(f"sweep parameter must be one of {SWEEP_PARAMS}, got {self.param!r}")
        if self.count < 2:
            raise ConfigError(f"sweep count must be >= 2, got {self.count}")

    @classmethod
    def parse(cls, text: str) -> "SweepSpec":
        parts = [s.strip() for s in text.replace(":", ",").split(",")]
        if len(parts) != 4:
            raise ConfigError(f"sweep must be 'param,start,stop,count', got {text!r}")
        try:
            return cls(parts[0], float(parts[1]), float(parts[2]), int(parts[3]))
        except ValueError as exc:
            raise ConfigError(f"bad sweep spec {text!r}: {exc}") from None

    def values(self) -> list[float]:
        step = (self.stop - self.start) / (self.count - 1)
        return [self.start + i * step for i in range(self.count - 1)] + [self.stop]


@dataclass(frozen=True)
class RunConfig:
    scenario: str = "product"
    p: float = 0.5
    T_A: float = 15.0
    T_B: float = 10.0
    omega: float = 100.0
    gamma: float = 10.0
    t_max: float = 0.5
    dt: float = 1e-3
    fd_dt: float = 5e-4
    fd_scheme: str = "forward"
    out: str | None = None
    emit_coeffs: bool = False
    sweep: SweepSpec | None = None
    populations: tuple[float, ...] | None = None
    state_file: str | None = None
    workers: int = 1

    def __post_init__(self):
        if self.scenario not in SCENARIOS:
            raise ConfigError(f"scenario must be one of {SCENARIOS}, got {self.scenario!r}")
        for name in ("T_A", "T_B", "omega", "t_max", "dt", "fd_dt"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.gamma < 0:
            raise ConfigError(f"gamma must be non-negative, got {self.gamma}")
        if self.T_A == self.T_B:
            raise ConfigError("T_A and T_B must differ")
        if self.scenario == "custom" and self.populations is None and self.state_file is None:
            raise ConfigError("custom scenario needs 'populations' or 'state_file'")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")


_FLOAT_KEYS = {"p", "T_A", "T_B", "omega", "gamma", "t_max", "dt", "fd_dt"}
_BOOL_TRUE = {"1", "true", "yes", "on"}
_BOOL_FALSE = {"0", "false", "no", "off"}


def _coerce(key: str, raw) -> object:
    if raw is None or not isinstance(raw, str):
        return raw
    value = raw.strip()
    try:
        if key in _FLOAT_KEYS:
            return float(value)
        if key == "workers":
            return int(value)
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {value!r} as a number") from None
    if key == "emit_coeffs":
        low = value.lower()
        if low in _BOOL_TRUE:
            return True
        if low in _BOOL_FALSE:
            return False
        raise ConfigError(f"emit_coeffs: expected a boolean, got {value!r}")
    if key == "sweep":
        return SweepSpec.parse(value)
    if key == "populations":
        try:
            return tuple(float(x) for x in value.split(","))
        except ValueError:
            raise ConfigError(f"populations: cannot parse {value!r}") from None
    return value


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    known = {f.name for f in dataclasses.fields(RunConfig)}
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, value)
    return out


def load_config(path: str | Path | None = None, **overrides) -> RunConfig:
    """Defaults, then the config file, then non-``None`` overrides."""
    values = {}
    if path is not None:
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        values.update(parse_config_text(text))
    for key, raw in overrides.items():
        if raw is not None:
            values[key] = _coerce(key, raw)
    try:
        return RunConfig(**values)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
