import logging

from .cli.utils import parse_cli_args
from .constants import (
    DEBUG_LOG_FILENAME,
    LOG_LEVEL_DEFAULT,
    LOG_LEVEL_DEFAULT_DEBUG_MODE,
    LOG_LEVELS,
)


# Run fields shown on every log line, in this order
RUN_CONTEXT_FIELDS = ("mode", "potential", "grid_n")
_run_context: dict[str, str] = {}


def set_run_context(**fields) -> None:
    """
    Update the run fields carried by every log line. Unknown names raise
    ``KeyError``; ``None`` leaves a field unchanged.
    """
    for name, value in fields.items():
        if name not in RUN_CONTEXT_FIELDS:
            raise KeyError(f"Unknown run context field: {name}")
        if value is not None:
            _run_context[name] = str(value)


def clear_run_context() -> None:
    _run_context.clear()


def run_context() -> dict[str, str]:
    return dict(_run_context)


def _run_label() -> str:
    fields = [
        f"{name}={_run_context[name]}"
        for name in RUN_CONTEXT_FIELDS
        if name in _run_context
    ]
    return " ".join(fields) or "-"


class SmartWidthFormatter(logging.Formatter):
    """
    Formatter that pads logger names to a shared column width and stamps
    each record with the run context (mode, potential, grid_n) as ``run``.

    The width starts at the longest logger name registered when the formatter
    is built and grows whenever a longer name shows up. It never shrinks, so
    columns stay aligned for the whole run.
    """

    _max_width = 0

    def __init__(self, fmt=None, datefmt=None):
        names = list(logging.root.manager.loggerDict) + ["root"]
        SmartWidthFormatter._max_width = max(
            SmartWidthFormatter._max_width, max(len(name) for name in names)
        )
        self.width = SmartWidthFormatter._max_width
        super().__init__(fmt or self._pattern(self.width), datefmt)

    @staticmethod
    def _pattern(width: int) -> str:
        return (
            f"%(asctime)s - %(levelname)-8s - %(name)-{width}s - %(run)s - %(message)s"
        )

    def format(self, record):
        record.run = _run_label()
        if len(record.name) > self.width:
            SmartWidthFormatter._max_width = len(record.name)
            self.width = SmartWidthFormatter._max_width
            self._style._fmt = self._pattern(self.width)
        return super().format(record)


def initialize_logging() -> tuple[bool, str]:
    """
    Configure the root logger from the raw command line, ahead of argparse.

    Numerical modules log while they are imported and while the parser is
    being built, so the level has to be known before ``parse_arguments`` runs.

    Returns:
        tuple[bool, str]: whether ``--debug`` was given and the level in use.
    """
    debug_requested, level = configure_early_logging()

    if not level:
        level = LOG_LEVEL_DEFAULT_DEBUG_MODE if debug_requested else LOG_LEVEL_DEFAULT

    setup_root_logger(level, debug_requested)
    return debug_requested, level


def configure_early_logging() -> tuple[bool, str | None]:
    """
    Read ``--debug`` and ``--log-level`` straight from ``sys.argv``.
    The subcommand, potential and grid size found there seed the run
    context until the resolved configuration replaces them.

    Examples:
        --debug                     -> (True, None)
        --debug --log-level info    -> (True, "info")
        --log-level warn            -> (False, "warn")
        (neither)                   -> (False, None)

    Raises:
        SystemExit: on ``--debug <value>``, a bare ``--log-level`` or an
            unknown level.
    """
    arg_map = parse_cli_args()
    set_run_context(
        **{
            field: arg_map[flag][0]
            for field, flag in (
                ("mode", "mode"),
                ("potential", "potential"),
                ("grid_n", "grid-n"),
            )
            if arg_map.get(flag)
        }
    )

    debug_enabled = "debug" in arg_map
    if debug_enabled and arg_map["debug"]:
        raise SystemExit("Error: --debug flag doesn't accept values")

    log_level = None
    if "log-level" in arg_map:
        if not arg_map["log-level"]:
            raise SystemExit("Error: --log-level requires a value")
        log_level = arg_map["log-level"][0].lower()
        if log_level not in LOG_LEVELS:
            raise SystemExit(
                f"Error: Invalid log level '{log_level}'. "
                f"Must be one of: {', '.join(sorted(LOG_LEVELS))}"
            )

    return debug_enabled, log_level


def setup_root_logger(
    level: str | None = None,
    create_debug_file: bool = False,
    silence_loggers: list[str] | None = None,
) -> None:
    """
    Install a console handler (and optionally a debug file) on the root logger.

    Args:
        level: One of ``LOG_LEVELS``; ``None`` falls back to ``LOG_LEVEL_DEFAULT``.
        create_debug_file: Also write every record to ``DEBUG_LOG_FILENAME``.
        silence_loggers: Logger names pinned to CRITICAL, e.g. noisy libraries.
    """
    logging.root.handlers = []

    formatter = SmartWidthFormatter()
    console_handler = logging.StreamHandler()
    console_handler.setFormatter(formatter)
    logging.root.addHandler(console_handler)

    log_level = str(level or LOG_LEVEL_DEFAULT).upper()
    if log_level == "WARN":
        log_level = "WARNING"
    logging.root.setLevel(logging.getLevelName(log_level))

    if create_debug_file:
        file_handler = logging.FileHandler(DEBUG_LOG_FILENAME)
        file_handler.setFormatter(formatter)
        logging.root.addHandler(file_handler)

        header = "#" * 30
        logging.info("%s BEGIN XYOPT RUN %s", header, header)

    for logger_name in silence_loggers or []:
        logging.getLogger(logger_name).setLevel(logging.CRITICAL)
