"""JSON run configuration.

Top-level keys::

    {
      "units":  "gamma" | "si",
      "system": {SystemParams fields},
      "probe":  {"omega41": ..., "relativeStrength": ...},
      "medium": {MediumParams fields},      # optional
      "gammaSI": 6.13e7                      # optional, rad/s per gamma unit
    }

In ``"gamma"`` units every rate is a multiple of ``gammaSI`` (default the
sodium D1 natural linewidth), which is only needed to convert Doppler
shifts.  In ``"si"`` units rates are in rad/s.  Unknown keys are an error.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Optional

from .atom import MediumParams, ProbeSpec, SystemParams
from .presets import SODIUM_LINEWIDTH, Preset

UNITS = ("gamma", "si")
_TOP_KEYS = {"units", "system", "probe", "medium", "gammaSI"}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    system: SystemParams
    probe: ProbeSpec
    units: str = "gamma"
    medium: Optional[MediumParams] = None
    gammaSI: float = SODIUM_LINEWIDTH

    @property
    def frequencyScale(self) -> float:
        """rad/s per unit of the configured rates."""
        return self.gammaSI if self.units == "gamma" else 1.0


def _build(cls, data, section):
    if not isinstance(data, dict):
        raise ConfigError(f"'{section}' must be an object")
    names = {f.name for f in dataclasses.fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown keys in '{section}': {', '.join(sorted(unknown))}")
    kwargs = dict(data)
    for key in ("fieldDirections", "wavenumberScales"):
        if key in kwargs:
            kwargs[key] = tuple(kwargs[key])
    try:
        return cls(**kwargs)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid '{section}': {exc}") from exc


def config_from_dict(data: dict) -> Config:
    if not isinstance(data, dict):
        raise ConfigError("configuration must be a JSON object")
    unknown = set(data) - _TOP_KEYS
    if unknown:
        raise ConfigError(f"unknown top-level keys: {', '.join(sorted(unknown))}")
    units = data.get("units", "gamma")
    if units not in UNITS:
        raise ConfigError(f"units must be one of {UNITS}")
    if "system" not in data:
        raise ConfigError("missing 'system'")
    system = _build(SystemParams, data["system"], "system")
    probe = _build(ProbeSpec, data.get("probe", {}), "probe")
    medium = _build(MediumParams, data["medium"], "medium") if "medium" in data else None
    gammaSI = data.get("gammaSI", SODIUM_LINEWIDTH)
    if not isinstance(gammaSI, (int, float)) or gammaSI <= 0:
        raise ConfigError("gammaSI must be a positive number")
    return Config(system, probe, units, medium, float(gammaSI))


def load_config(path) -> Config:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON in {path}: {exc}") from exc
    return config_from_dict(data)


def config_to_dict(cfg: Config) -> dict:
    out = {"units": cfg.units,
           "system": dataclasses.asdict(cfg.system),
           "probe": dataclasses.asdict(cfg.probe)}
    if cfg.medium is not None:
        med = dataclasses.asdict(cfg.medium)
        med["fieldDirections"] = list(med["fieldDirections"])
        med["wavenumberScales"] = list(med["wavenumberScales"])
        out["medium"] = med
    if cfg.units == "gamma":
        out["gammaSI"] = cfg.gammaSI
    return out


def config_from_preset(pre: Preset) -> Config:
    return Config(pre.system, pre.probe, pre.units, pre.medium)
