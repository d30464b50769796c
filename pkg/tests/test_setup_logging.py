import logging
import sys
from unittest import mock

import pytest

from xyopt.constants import DEBUG_LOG_FILENAME
from xyopt.setup_logging import (
    SmartWidthFormatter,
    clear_run_context,
    configure_early_logging,
    initialize_logging,
    run_context,
    set_run_context,
    setup_root_logger,
)


@pytest.fixture(autouse=True)
def restore_root_logger():
    handlers, level = logging.root.handlers[:], logging.root.level
    clear_run_context()
    yield
    for handler in logging.root.handlers:
        if handler not in handlers:
            handler.close()
    logging.root.handlers = handlers
    logging.root.setLevel(level)
    clear_run_context()


def early(*argv: str):
    with mock.patch.object(sys, "argv", ["xyopt", *argv]):
        return configure_early_logging()


def test_configure_early_logging():
    assert early("analyze") == (False, None)
    assert early("analyze", "--debug") == (True, None)
    assert early("analyze", "--debug", "--log-level", "INFO") == (True, "info")
    assert early("verify", "--log-level", "warn") == (False, "warn")


@pytest.mark.parametrize(
    "argv",
    [
        ("--debug", "yes"),
        ("--log-level",),
        ("--log-level", "verbose"),
    ],
)
def test_configure_early_logging_rejects(argv):
    with pytest.raises(SystemExit):
        early("analyze", *argv)


def test_initialize_logging_defaults_to_critical():
    with mock.patch.object(sys, "argv", ["xyopt", "analyze"]):
        assert initialize_logging() == (False, "critical")
    assert logging.root.level == logging.CRITICAL


def test_warn_maps_to_warning():
    setup_root_logger("warn")
    assert logging.root.level == logging.WARNING
    assert len(logging.root.handlers) == 1
    assert isinstance(logging.root.handlers[0].formatter, SmartWidthFormatter)


def test_debug_file(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    setup_root_logger("debug", create_debug_file=True)
    logging.getLogger("xyopt.tests").debug("value iteration sweep")
    for handler in logging.root.handlers:
        handler.flush()
    content = (tmp_path / DEBUG_LOG_FILENAME).read_text()
    assert "BEGIN XYOPT RUN" in content
    assert "value iteration sweep" in content


def test_silenced_loggers():
    setup_root_logger("debug", silence_loggers=["noisy.library"])
    assert logging.getLogger("noisy.library").level == logging.CRITICAL


def test_formatter_widens_for_long_names():
    formatter = SmartWidthFormatter()
    name = "x" * (formatter.width + 5)
    record = logging.LogRecord(name, logging.INFO, __file__, 1, "message", None, None)
    line = formatter.format(record)
    assert name in line
    assert formatter.width == len(name)
    assert SmartWidthFormatter().width >= len(name)


def record(name: str = "xyopt.barrier") -> logging.LogRecord:
    return logging.LogRecord(name, logging.INFO, __file__, 1, "relaxed", None, None)


def test_lines_carry_the_run_context():
    formatter = SmartWidthFormatter()
    assert " - - - relaxed" in formatter.format(record())

    set_run_context(mode="barrier", potential="two-well", grid_n=64)
    line = formatter.format(record())
    assert "mode=barrier potential=two-well grid_n=64 - relaxed" in line

    set_run_context(potential=None, grid_n=128)
    assert "potential=two-well grid_n=128" in formatter.format(record())

    with pytest.raises(KeyError):
        set_run_context(seed=3)


def test_early_logging_seeds_the_run_context():
    early("quotient", "-p", "two-well", "--grid-n", "128", "--debug")
    assert run_context() == {
        "mode": "quotient",
        "potential": "two-well",
        "grid_n": "128",
    }
