import argparse
import csv
import json
import logging
from pathlib import Path

import numpy as np
from halo import Halo

from .constants import CSV_FLOAT_FORMAT
from .exceptions import ConfigError

logger = logging.getLogger(__name__)


def print_if_not_silent(what_to_print: str, silent: bool = False) -> None:
    if not silent:
        print(what_to_print)


def ensure_output_dir(path: Path) -> Path:
    """Create ``path`` if needed and check that it is a writable directory."""
    path = Path(path)
    try:
        path.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise ConfigError(f"Cannot create output directory {path}: {e}") from e
    if not path.is_dir():
        raise ConfigError(f"Output path {path} is not a directory")
    return path


def format_cell(value) -> str:
    """CSV cell: floats with 12 significant digits, booleans as 0/1."""
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return CSV_FLOAT_FORMAT % value
    return str(value)


def write_csv(path: Path, header: list[str], rows) -> Path:
    path = Path(path)
    with open(path, "w", encoding="UTF-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_cell(value) for value in row])
    logger.info("Wrote %s", path)
    return path


def _json_default(value):
    if hasattr(value, "__json__"):
        return value.__json__()
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def to_json(value) -> str:
    return json.dumps(value, indent=2, sort_keys=True, default=_json_default)


def write_json(path: Path, document) -> Path:
    path = Path(path)
    with open(path, "w", encoding="UTF-8") as f:
        f.write(to_json(document) + "\n")
    logger.info("Wrote %s", path)
    return path


class SpinnerWrapper:
    """
    A Halo spinner that is only created when output is interactive.

    Halo writes control sequences to stdout even with ``enabled=False``, so the
    spinner is not instantiated at all under ``--quiet``, ``--debug``, ``--ci``
    or the ``autocomplete`` subcommand. Every call on a disabled wrapper is a
    no-op returning the wrapper.
    """

    def __init__(self, args=None, **kwargs):
        self.args = args or argparse.Namespace()
        is_autocomplete = getattr(self.args, "mode", None) == "autocomplete"

        self.enabled = (
            not any(
                getattr(self.args, flag, False) for flag in ("quiet", "debug", "ci")
            )
            and not is_autocomplete
        )
        self.spinner = Halo(enabled=True, **kwargs) if self.enabled else None

    def __getattr__(self, name):
        if self.spinner:
            return getattr(self.spinner, name)

        def no_op(*args, **kwargs):
            return self

        return no_op
