"""
Run configuration files.

A run config is TOML: top-level `seed` and `out`, then one `[section]` per
pipeline stage. Relative paths are resolved against the config file's
directory; command-line flags override file values before validation.
"""

import logging
import os
from pathlib import Path
from typing import Any, Optional

import tomli
from pydantic import ValidationError

from vprkit.core.exceptions import ConfigError
from vprkit.models.config import RunConfig

logger = logging.getLogger(__name__)

DATASET_PATH_KEYS = ("db", "q", "gt", "gt_soft")


def _format_validation_error(source: str, exc: ValidationError) -> str:
    problems = []
    for error in exc.errors():
        location = ".".join(str(part) for part in error["loc"]) or "<root>"
        problems.append(f"{location}: {error['msg']}")
    return f"{source}: " + "; ".join(problems)


def parse_config_text(text: str, source: str = "<config>") -> dict[str, Any]:
    try:
        return tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        raise ConfigError(f"{source}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _resolve_paths(raw: dict[str, Any], base: Path) -> None:
    dataset = raw.get("dataset")
    if isinstance(dataset, dict):
        for key in DATASET_PATH_KEYS:
            if isinstance(dataset.get(key), str):
                dataset[key] = str(base / dataset[key])
    if isinstance(raw.get("out"), str):
        raw["out"] = str(base / raw["out"])


def apply_overrides(raw: dict[str, Any], overrides: Optional[dict[str, Any]]) -> dict[str, Any]:
    """Apply dotted-key overrides, e.g. {"matching.mode": "multi_match"}; None values are skipped."""
    for dotted, value in (overrides or {}).items():
        if value is None:
            continue
        *parents, leaf = dotted.split(".")
        node = raw
        for part in parents:
            node = node.setdefault(part, {})
        node[leaf] = value
    return raw


def build_run_config(
    raw: dict[str, Any], source: str = "<config>", overrides: Optional[dict[str, Any]] = None
) -> RunConfig:
    try:
        return RunConfig.model_validate(apply_overrides(raw, overrides))
    except ValidationError as exc:
        raise ConfigError(_format_validation_error(source, exc)) from exc


def load_run_config(
    path: str | os.PathLike, overrides: Optional[dict[str, Any]] = None, check_files: bool = True
) -> RunConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"{path}: cannot read config: {exc.strerror}") from exc

    raw = parse_config_text(text, str(path))
    _resolve_paths(raw, path.resolve().parent)
    config = build_run_config(raw, str(path), overrides)

    if check_files:
        missing = [str(p) for p in config.referenced_paths() if not p.exists()]
        if missing:
            raise ConfigError(f"{path}: referenced files do not exist: {', '.join(missing)}")
    logger.debug(f"Loaded run config {path}")
    return config
