"""Flat ``key = value`` run configuration files.

Blank lines and ``#`` comments are ignored. Keys are the fields of
:class:`~parity_radar.scenario.Scenario` plus those of :class:`ScanSettings`;
anything else is rejected.
"""

from __future__ import annotations

import dataclasses
import math
import typing
from dataclasses import dataclass
from pathlib import Path

from .scenario import Scenario


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class ScanSettings:
    phase_min: float = -math.pi  # rad
    phase_max: float = math.pi  # rad
    phase_step: float = 0.005  # rad
    theta_min: float = -5.0e-3  # rad
    theta_max: float = 5.0e-3  # rad
    theta_step: float = 2.5e-4  # rad
    sweep_photons: tuple = (25.0, 100.0, 400.0, 1600.0)
    guess_error: float = 0.0  # rad, port-A local-oscillator phase guess error


def _convert(kind, raw: str, key: str):
    try:
        if kind is bool:
            low = raw.lower()
            if low in ("1", "true", "yes", "on"):
                return True
            if low in ("0", "false", "no", "off"):
                return False
            raise ValueError(raw)
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
        if kind is tuple:
            return tuple(float(v) for v in raw.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"{key}: cannot parse {raw!r} as {kind.__name__}") from None
    return raw


def _field_types(cls) -> dict:
    hints = typing.get_type_hints(cls)
    return {f.name: hints[f.name] for f in dataclasses.fields(cls)}


def parse_config(text: str, source: str = "<config>") -> tuple[Scenario, ScanSettings]:
    scenario_types = _field_types(Scenario)
    scan_types = _field_types(ScanSettings)
    scenario_kw, scan_kw = {}, {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value'")
        key, raw = (part.strip() for part in line.split("=", 1))
        if key in scenario_types:
            scenario_kw[key] = _convert(scenario_types[key], raw, key)
        elif key in scan_types:
            scan_kw[key] = _convert(scan_types[key], raw, key)
        else:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
    try:
        return Scenario(**scenario_kw), ScanSettings(**scan_kw)
    except ValueError as exc:
        raise ConfigError(f"{source}: {exc}") from None


def load_config(path: str | Path | None) -> tuple[Scenario, ScanSettings]:
    if path is None:
        return Scenario(), ScanSettings()
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))


def config_dict(scenario: Scenario, scan: ScanSettings | None = None) -> dict:
    out = dataclasses.asdict(scenario)
    if scan is not None:
        out.update({k: list(v) if isinstance(v, tuple) else v
                    for k, v in dataclasses.asdict(scan).items()})
    return out
