import logging
import shlex
import sys

# Short aliases the early reader understands, mapped to their long names
SHORT_FLAGS = {"-p": "potential", "-q": "quiet"}


def parse_cli_args(command_line: str | None = None) -> dict[str, list[str]]:
    """
    Read an xyopt command line into ``{flag: values}`` before argparse runs.

    Logging is configured from this mapping, and the run context shown on
    every log line is seeded from it, so it has to work on lines argparse
    would still reject.

    Args:
        command_line: Full line including the program name, as argcomplete
            sees it. ``None`` reads ``sys.argv``.

    Returns:
        Flag names without dashes mapped to the tokens that follow them.
        ``-p`` and ``-q`` are stored under ``potential`` and ``quiet``. The
        subcommand, when it comes before the first flag, is stored under
        ``mode``. A line that cannot be tokenized yields an empty mapping.

    Examples:
        >>> parse_cli_args("xyopt barrier -p two-well --grid-n 64 --debug")
        {'mode': ['barrier'], 'potential': ['two-well'], 'grid-n': ['64'], 'debug': []}
    """
    logger = logging.getLogger(__name__)

    try:
        tokens = (
            shlex.split(command_line)[1:] if command_line is not None else sys.argv[1:]
        )
    except ValueError as e:
        if command_line is None:
            logger.warning("Failed to parse command line arguments: %s", str(e))
        return {}

    arg_map: dict[str, list[str]] = {}
    current_key = None

    for token in tokens:
        if token.startswith("--"):
            current_key = token[2:]
            arg_map.setdefault(current_key, [])
        elif token in SHORT_FLAGS:
            current_key = SHORT_FLAGS[token]
            arg_map.setdefault(current_key, [])
        elif current_key is not None:
            arg_map[current_key].append(token)
        elif "mode" not in arg_map:
            arg_map["mode"] = [token]

    return arg_map
