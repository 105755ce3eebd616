"""
Command plumbing: stage wrapping, error reporting and output locking.
"""

import functools
import logging
import os
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import typer
from filelock import FileLock, Timeout
from pydantic import ValidationError
from rich.console import Console

from vprkit.core.config import get_settings
from vprkit.core.exceptions import StageError, VprError

logger = logging.getLogger(__name__)

console = Console()
error_console = Console(stderr=True)

LOCK_NAME = ".vprkit.lock"


@contextmanager
def stage(name: str) -> Iterator[None]:
    """Log a stage and re-raise its failures as StageError(name, cause)."""
    logger.info(f"Stage '{name}' started")
    started = time.perf_counter()
    try:
        yield
    except StageError:
        raise
    except (VprError, ValidationError, ValueError, OSError) as exc:
        raise StageError(name, exc) from exc
    logger.info(f"Stage '{name}' finished in {time.perf_counter() - started:.2f}s")


@contextmanager
def output_lock(directory: str | os.PathLike, timeout: Optional[float] = None) -> Iterator[Path]:
    """Hold `<directory>/.vprkit.lock` so two runs never share an output directory."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    wait = get_settings().lock_timeout if timeout is None else timeout
    lock = FileLock(str(directory / LOCK_NAME), timeout=wait)
    try:
        with lock:
            yield directory
    except Timeout as exc:
        raise VprError(f"output directory {directory} is locked by another run") from exc


def cli_command(func):
    """Turn library errors into `error: ...` on stderr and exit code 1."""

    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except (VprError, ValidationError, OSError) as exc:
            logger.debug("Command failed", exc_info=True)
            error_console.print(f"error: {exc}", markup=False, highlight=False, soft_wrap=True)
            raise typer.Exit(code=1)

    return wrapper
