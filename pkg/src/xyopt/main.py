# set up logging early, so that module-level work during import is logged
from .setup_logging import initialize_logging

initialize_logging()

import logging
import sys
from time import time

from argcomplete.shell_integration import shellcode
from termcolor import colored

from . import __version__ as xyopt_version
from .cli.argument_handler import build_run_config, parse_arguments
from .commands import COMMANDS
from .exceptions import ComputationError, ConfigError
from .helpers import SpinnerWrapper, print_if_not_silent
from .setup_logging import set_run_context
from .verifier import format_check_table

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_CONFIG_ERROR = 2
EXIT_COMPUTATION_ERROR = 3


def main():
    """Parse the command line, run the chosen subcommand and exit with its code."""

    time_started = time()

    args = parse_arguments()

    if args.mode == "version":
        print(xyopt_version)
        raise SystemExit(EXIT_OK)

    elif args.mode == "autocomplete":
        if getattr(args, "autocomplete_action", None) != "show":
            print("autocomplete command requires an action: show")
            raise SystemExit(EXIT_CONFIG_ERROR)
        raw = shellcode("xyopt")
        print(raw.replace("#compdef x y o p t", "compdef _python_argcomplete xyopt"))
        raise SystemExit(EXIT_OK)

    elif args.mode in COMMANDS:
        quiet = getattr(args, "quiet", False)

        try:
            config = build_run_config(args)
            set_run_context(mode=args.mode, grid_n=config.grid_n)
        except ConfigError as e:
            print(f"Configuration error: {e}", file=sys.stderr)
            raise SystemExit(EXIT_CONFIG_ERROR)

        status_spinner = SpinnerWrapper(args=args, color="blue")
        status_spinner.start(f"Running {args.mode} for {config.potential}...")
        try:
            outcome = COMMANDS[args.mode](config)
        except ConfigError as e:
            status_spinner.fail()
            print(f"Configuration error: {e}", file=sys.stderr)
            raise SystemExit(EXIT_CONFIG_ERROR)
        except ComputationError as e:
            status_spinner.fail()
            logger.debug("Computation failed", exc_info=True)
            print(f"Computation error ({type(e).__name__}): {e}", file=sys.stderr)
            raise SystemExit(EXIT_COMPUTATION_ERROR)
        status_spinner.succeed(f"{args.mode} complete: {outcome.summary}")

        if args.mode == "verify":
            print_if_not_silent(format_check_table(outcome.checks), quiet)

        for path in outcome.files:
            print_if_not_silent(f"Wrote {colored(str(path), 'green')}", quiet)
        logger.info("%s finished in %.2fs", args.mode, time() - time_started)

        if outcome.failed_checks:
            print(
                f"Verification failed: {', '.join(outcome.failed_checks)}",
                file=sys.stderr,
            )
            raise SystemExit(EXIT_VERIFICATION_FAILED)
        raise SystemExit(EXIT_OK)

    else:
        print("No subcommand given. Use `xyopt -h` for the list of subcommands.")
        raise SystemExit(EXIT_CONFIG_ERROR)
