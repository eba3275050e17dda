"""Run configuration read from ``key=value`` files."""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass, field

from .errors import ConfigError, UnknownKeyError


@dataclass
class RunConfig:
    """Settings shared by the command-line subcommands.

    Attributes:
        N: Sieve bound.
        T: Half-width of the zero scan on the 1-line.
        A: Partial-sum exponent (None: take it from the catalog entry).
        K: Partial-sum constant (None: estimate from the table).
        checkpoints: Values of x for the compensated prime sums
            (empty: powers of ten from 10^3 to N).
        grid_step: Spacing of the zero-scan grid.
        output_dir: Where CSV and SVG files go.
        cache_dir: Sieve cache directory (None: default location).
        workers: Thread count for sieving.
        weight: Series weighting: ``sharp``, ``riesz`` or ``auto`` (Riesz
            when D >= 2).
    """

    N: int = 10**6
    T: float = 5.0
    A: float | None = None
    K: float | None = None
    checkpoints: list[int] = field(default_factory=list)
    grid_step: float = 1e-2
    output_dir: str = "out"
    cache_dir: str | None = None
    workers: int = 1
    weight: str = "auto"

    def validate(self) -> "RunConfig":
        for name in ("N", "T", "grid_step", "workers"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"{name} must be positive")
        for name in ("A", "K"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ConfigError(f"{name} must be positive")
        if any(x < 1 or x > self.N for x in self.checkpoints):
            raise ConfigError("checkpoints must lie in [1, N]")
        if self.weight not in ("sharp", "riesz", "auto"):
            raise ConfigError("weight must be sharp, riesz or auto")
        return self


def _convert(name: str, raw: str):
    if name in ("N", "workers"):
        return int(float(raw)) if "e" in raw.lower() else int(raw)
    if name in ("T", "grid_step"):
        return float(raw)
    if name in ("A", "K"):
        return None if raw.lower() == "none" else float(raw)
    if name == "checkpoints":
        return [int(float(v)) for v in raw.split(",") if v.strip()]
    if name == "cache_dir":
        return raw or None
    return raw


KEYS = tuple(f.name for f in dataclasses.fields(RunConfig))


def parse_config_text(text: str, source: str = "<string>") -> RunConfig:
    """Parse ``key=value`` lines; '#' starts a comment.

    Raises:
        ConfigError: malformed line or invalid value, with its line number.
        UnknownKeyError: a key that RunConfig does not have.
    """
    values = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key=value")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in KEYS:
            raise UnknownKeyError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = _convert(key, raw)
        except ValueError as exc:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {raw!r}") from exc
        v = values[key]
        if isinstance(v, (int, float)) and not v > 0:
            raise ConfigError(f"{source}:{lineno}: {key} must be positive, got {raw!r}")
    cfg = RunConfig(**values)
    try:
        return cfg.validate()
    except ConfigError as exc:
        raise ConfigError(f"{source}: {exc}") from exc


def parse_config(path: str | os.PathLike) -> RunConfig:
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read(), str(path))


def merge(cfg: RunConfig, overrides: dict) -> RunConfig:
    """Apply non-None overrides (command-line flags win over file values)."""
    changes = {k: v for k, v in overrides.items() if v is not None and k in KEYS}
    return dataclasses.replace(cfg, **changes).validate()
