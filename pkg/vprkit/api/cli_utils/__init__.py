"""
Command-line plumbing: run configs, stages, output locks and the pipeline.
"""

from vprkit.api.cli_utils.run_config import (
    load_run_config,
    build_run_config,
    parse_config_text,
    apply_overrides,
)
from vprkit.api.cli_utils.runner import (
    stage,
    output_lock,
    cli_command,
    console,
    error_console,
)
from vprkit.api.cli_utils.options import CliMode, CliSession, parse_threshold, parse_radius
from vprkit.api.cli_utils.dataset import load_dataset, check_bundle, synth_bundle, synth_traverses
from vprkit.api.cli_utils.pipeline import run_pipeline, PipelineResult

__all__ = [
    # Config
    "load_run_config",
    "build_run_config",
    "parse_config_text",
    "apply_overrides",
    # Runner
    "stage",
    "output_lock",
    "cli_command",
    "console",
    "error_console",
    # Options
    "CliMode",
    "CliSession",
    "parse_threshold",
    "parse_radius",
    # Dataset
    "load_dataset",
    "check_bundle",
    "synth_bundle",
    "synth_traverses",
    # Pipeline
    "run_pipeline",
    "PipelineResult",
]
