"""File output shared by the CLI: CSV, JSON, config parsing and the run manifest."""
from __future__ import annotations

import configparser
import csv
import json
import math
import os
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .constants import CONSTANTS_TABLE_VERSION
from .errors import DomainError

CONFIG_KEYS = {
    "mass_kg": float,
    "charge_C": float,
    "radius_m": float,
    "n": int,
    "flux_Wb": float,
    "omega_rad_s": float,
    "solenoid_radius_m": float,
    "turns_per_m": float,
    "current_A": float,
}


def fmt(value) -> str:
    """Shortest round-trip text for a CSV cell."""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if value is None:
        return ""
    return repr(float(value))


def write_csv(path: str | os.PathLike, header: Sequence[str], rows: Iterable[Sequence]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def _json_safe(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {str(k): _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    if hasattr(obj, "item"):  # numpy scalar
        return _json_safe(obj.item())
    return obj


def write_json(path: str | os.PathLike, data) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_json_safe(data), indent=2, sort_keys=True) + "\n")
    return path


def read_config(path: str | os.PathLike) -> dict:
    """Parse a flat ``key = value`` file; unknown keys are rejected.

    Raises:
        DomainError: unreadable file, unknown key or unparsable value.
    """
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read config {path}: {exc}") from exc
    parser = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#", ";"))
    parser.optionxform = str
    try:
        parser.read_string("[config]\n" + text)
    except configparser.Error as exc:
        raise DomainError(f"malformed config {path}: {exc}") from exc
    out = {}
    for key, raw in parser["config"].items():
        if key not in CONFIG_KEYS:
            raise DomainError(f"unknown config key {key!r}; expected one of {', '.join(CONFIG_KEYS)}")
        try:
            value = CONFIG_KEYS[key](float(raw)) if CONFIG_KEYS[key] is int else float(raw)
        except ValueError as exc:
            raise DomainError(f"config key {key}: cannot parse {raw!r}") from exc
        if CONFIG_KEYS[key] is int and float(raw) != value:
            raise DomainError(f"config key {key} must be an integer, got {raw!r}")
        out[key] = value
    return out


@dataclass
class RunManifest:
    command: str
    config_path: str = ""
    parameters: dict = field(default_factory=dict)
    outputs: list = field(default_factory=list)
    tool_version: str = ""
    constants_table_version: str = CONSTANTS_TABLE_VERSION

    def add(self, path: str | os.PathLike) -> None:
        self.outputs.append(str(path))

    def write(self, path: str | os.PathLike) -> Path:
        missing = [p for p in self.outputs if not Path(p).exists()]
        if missing:
            raise FileNotFoundError(f"manifest lists missing outputs: {missing}")
        return write_json(path, asdict(self))
