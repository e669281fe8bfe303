"""Run configuration: defaults, config files and precedence.

Lookup order for the file: ``--config`` flag, then ``$WEIER_STAB_CONFIG``,
then ``./weier-stab.toml``, then ``./weier-stab.json``. Command-line flags
override whatever the file provides.
"""

from __future__ import annotations

import json
import os
import sys
from dataclasses import dataclass, replace
from pathlib import Path

from .exact import Rational, as_rational, format_rational
from .surface import ClassFormatError, ParameterError, SurfaceParams
from .walls import DEFAULT_CANDIDATE_CAP

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

ENV_VAR = "WEIER_STAB_CONFIG"
DEFAULT_FILES = ("weier-stab.toml", "weier-stab.json")
DEFAULT_PARAMS = {"e": "0", "m": "2", "alpha": "1", "lambda": "1"}
DEFAULT_SEED = 42


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    params: SurfaceParams
    u_max: Rational = Rational(1)
    candidate_cap: int = DEFAULT_CANDIDATE_CAP
    output_format: str = "json"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.u_max <= 0:
            raise ConfigError(f"u_max must be positive (got {self.u_max})")
        if self.candidate_cap < 0:
            raise ConfigError("candidate_cap must be non-negative")
        if self.output_format not in ("json", "table"):
            raise ConfigError(f"format must be 'json' or 'table' (got {self.output_format!r})")

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "u_max": format_rational(self.u_max),
            "candidate_cap": self.candidate_cap,
            "format": self.output_format,
            "seed": self.seed,
        }


def _read(path: Path) -> dict:
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    try:
        if path.suffix == ".toml":
            return tomllib.loads(text)
        return json.loads(text)
    except (ValueError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc


def config_from_mapping(data: dict, source: str = "config") -> RunConfig:
    known = {"params", "u_max", "candidate_cap", "format", "seed"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"{source}: unknown keys {unknown}")
    given = data.get("params", {})
    if not isinstance(given, dict):
        raise ConfigError(f"{source}: params must be a table/object")
    raw = {**DEFAULT_PARAMS, **given}
    try:
        params = SurfaceParams.from_json(raw)
    except ClassFormatError as exc:
        raise ConfigError(f"{source}: params: {exc.field_errors}") from exc
    except ParameterError as exc:
        raise ConfigError(f"{source}: {exc}") from exc
    try:
        return RunConfig(
            params=params,
            u_max=as_rational(str(data.get("u_max", "1"))),
            candidate_cap=int(data.get("candidate_cap", DEFAULT_CANDIDATE_CAP)),
            output_format=str(data.get("format", "json")),
            seed=int(data.get("seed", DEFAULT_SEED)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"{source}: {exc}") from exc


def load_config(path: str | None = None, cwd: Path | None = None, environ=None) -> RunConfig:
    environ = os.environ if environ is None else environ
    cwd = cwd or Path.cwd()
    if path is None:
        path = environ.get(ENV_VAR) or None
    if path is not None:
        return config_from_mapping(_read(Path(path)), str(path))
    for name in DEFAULT_FILES:
        candidate = cwd / name
        if candidate.is_file():
            return config_from_mapping(_read(candidate), str(candidate))
    return config_from_mapping({}, "defaults")


def with_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    changes = {k: v for k, v in overrides.items() if v is not None}
    return replace(cfg, **changes) if changes else cfg
