"""XDG YAML configuration loader for almost-golomb.

Configuration is read following the XDG Base Directory specification:
- User config: $XDG_CONFIG_HOME/almost-golomb/config.yaml (or config.yml)
- System config: each dir in $XDG_CONFIG_DIRS/almost-golomb/config.yaml (or config.yml)

Config keys (all optional):
- count: positive int, default number of terms for gen/verify
- format: one of bfile, csv, json, text; default sequence format for gen
- workers: positive int, process pool size for the meta sweep
- max_samples: non-negative int, violation samples kept per report
- full: bool, run the perturbation sweep with verify
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Any, Callable, Dict, List

import yaml

from .formatter import SEQUENCE_FORMATS

_APP_DIR_NAME = "almost-golomb"
_CONFIG_FILENAMES = ("config.yaml", "config.yml")


def _is_int(value: Any, minimum: int) -> bool:
    return isinstance(value, int) and not isinstance(value, bool) and value >= minimum


_VALIDATORS: Dict[str, Callable[[Any], bool]] = {
    "count": lambda v: _is_int(v, 1),
    "format": lambda v: v in SEQUENCE_FORMATS,
    "workers": lambda v: _is_int(v, 1),
    "max_samples": lambda v: _is_int(v, 0),
    "full": lambda v: isinstance(v, bool),
}

ALLOWED_KEYS = tuple(_VALIDATORS)


def _xdg_config_home() -> Path:
    xdg = os.environ.get("XDG_CONFIG_HOME")
    return Path(xdg).expanduser() if xdg else Path.home() / ".config"


def _xdg_config_dirs() -> List[Path]:
    raw = os.environ.get("XDG_CONFIG_DIRS", "/etc/xdg")
    return [Path(p) for p in raw.split(":") if p]


def _candidate_files() -> List[Path]:
    """Return config file candidates, lowest precedence first.

    System directories come before the user directory; within a directory
    config.yaml comes before config.yml.
    """
    bases = [*_xdg_config_dirs(), _xdg_config_home()]
    return [base / _APP_DIR_NAME / name for base in bases for name in _CONFIG_FILENAMES]


def _safe_yaml_load(path: Path) -> Dict[str, Any]:
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8"))
    except FileNotFoundError:
        return {}
    except Exception as exc:  # YAML error or IO error
        raise RuntimeError(f"Failed to load config file {path}: {exc}")
    # non-mapping documents are ignored
    return data if isinstance(data, dict) else {}


def _checked(path: Path, data: Dict[str, Any]) -> Dict[str, Any]:
    """Keep known keys; a known key with a bad value is an error."""
    kept: Dict[str, Any] = {}
    for key, value in data.items():
        if key not in _VALIDATORS:
            continue
        if not _VALIDATORS[key](value):
            raise RuntimeError(f"Invalid value for '{key}' in config file {path}: {value!r}")
        kept[key] = value
    return kept


def load_config() -> Dict[str, Any]:
    """Merge all candidate files; later files win and unknown keys are dropped."""
    merged: Dict[str, Any] = {}
    for path in _candidate_files():
        if path.is_file():
            merged.update(_checked(path, _safe_yaml_load(path)))
    return merged
