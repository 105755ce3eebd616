"""Shared command-line option types and parsers."""

import enum
from typing import Optional

import typer

from vprkit.models.data import MatchMode, SessionMode


class CliMode(str, enum.Enum):
    SINGLE_BEST = "single-best"
    MULTI_MATCH = "multi-match"

    def to_match_mode(self) -> MatchMode:
        return MatchMode(self.value.replace("-", "_"))


class CliSession(str, enum.Enum):
    SINGLE = "single"
    MULTI = "multi"

    def to_session_mode(self) -> SessionMode:
        return SessionMode(self.value)


def parse_threshold(value: Optional[str]) -> Optional[float | str]:
    """'auto' or a float; None passes through."""
    if value is None:
        return None
    if value.strip().lower() == "auto":
        return "auto"
    try:
        return float(value)
    except ValueError:
        raise typer.BadParameter(f"expected 'auto' or a number, got {value!r}")


def parse_radius(value: str) -> tuple[int, int]:
    """'r' or 'r_rows,r_cols'."""
    try:
        parts = [int(p) for p in value.split(",")]
    except ValueError:
        raise typer.BadParameter(f"expected 'r' or 'r_rows,r_cols', got {value!r}")
    if len(parts) == 1:
        parts = parts * 2
    if len(parts) != 2 or min(parts) < 0:
        raise typer.BadParameter(f"expected two non-negative radii, got {value!r}")
    return parts[0], parts[1]
