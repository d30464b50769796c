"""
xyopt CLI Argument Parser Module

Arguments are grouped by concern (potential, grid, output, development) into
parent parsers that the subcommands combine. Every run option defaults to
None so that a value from ``--config`` is only overridden when the flag is
actually given.
"""

from argparse import Action, ArgumentParser, RawTextHelpFormatter
from pathlib import Path

from ..constants import LOG_LEVEL_DEFAULT, LOG_LEVEL_DEFAULT_DEBUG_MODE, LOG_LEVELS
from ..potential import BUILTIN_POTENTIALS
from ..setup_logging import configure_early_logging

BUILTIN_DESCRIPTIONS = {
    "example-nonclosed": "(x - y)^2 + x^2; single point minimizer, Mane set not closed",
    "rho-quadratic": "(x - y)^2 + |x - y| / 2; quotient isometric to [0, 1]",
    "rho-quartic": "(x - y)^4 + (x - y)^2 + |x - y| / 2",
    "remark-nonsmooth": "|x - y| / 2 + sqrt(1 + (x - y)^2); alpha = 1",
    "flat-well": "(x - y)^2 / 2 + 100 (w(x) + w(y)), one flat well [0.25, 0.75]",
    "two-well": "(x - y)^2 / 2 + 100 (w(x) + w(y)), wells [0.1, 0.3] and [0.7, 0.9]",
}


def potential_completer(prefix, parsed_args, **kwargs):
    return {
        name: BUILTIN_DESCRIPTIONS.get(name, "")
        for name in sorted(BUILTIN_POTENTIALS)
        if name.startswith(prefix)
    }


class FileExistsAction(Action):
    def __call__(self, parser, namespace, value, option_string=None):
        path = Path(value)
        if not path.is_file():
            parser.error(f"File '{value}' does not exist.")
        setattr(namespace, self.dest, path)


class PositiveNumberAction(Action):
    """Store a number after checking it is strictly positive."""

    def __call__(self, parser, namespace, value, option_string=None):
        if value <= 0:
            parser.error(f"{option_string} must be > 0, got {value}")
        setattr(namespace, self.dest, value)


class Parsers:
    def __init__(self):
        self.potential_parser = self._build_potential_parser()
        self.grid_parser = self._build_grid_parser()
        self.output_parser = self._build_output_parser()
        debug_enabled, log_level = configure_early_logging()
        self.dev_parser = self._build_dev_parser(debug_enabled, log_level)

    def _build_potential_parser(self):
        parser = ArgumentParser(add_help=False)
        group = parser.add_argument_group(
            "Potential Options",
            "Choose the potential and, optionally, a run configuration file.",
        )
        potential_arg = group.add_argument(
            "--potential",
            "-p",
            type=str,
            default=None,
            help="Built-in name, path to a JSON/YAML potential or an inline JSON document.",
        )
        potential_arg.completer = potential_completer

        group.add_argument(
            "--config",
            action=FileExistsAction,
            default=None,
            help="JSON/YAML run configuration. Command-line flags override its values.",
        )
        return parser

    def _build_grid_parser(self):
        parser = ArgumentParser(add_help=False)
        group = parser.add_argument_group(
            "Grid Options", "Resolution, tolerances and iteration limits."
        )
        group.add_argument(
            "--grid-n",
            type=int,
            default=None,
            help="Number of grid intervals N on [0, 1] (>= 16). Default 256.",
        )
        group.add_argument(
            "--quad-n",
            type=int,
            default=None,
            help="Simpson panels for barrier integrals. Default 512.",
        )
        group.add_argument(
            "--spacing",
            type=float,
            action=PositiveNumberAction,
            default=None,
            help="Anchor spacing inside minimizer intervals. Default 0.05.",
        )
        group.add_argument(
            "--refine-tol",
            type=float,
            action=PositiveNumberAction,
            default=None,
            help="Golden-section and bisection width. Default 1e-8.",
        )
        group.add_argument(
            "--tol-subaction",
            type=float,
            action=PositiveNumberAction,
            default=None,
            help="Value-iteration stopping tolerance. Default 1e-7.",
        )
        group.add_argument(
            "--eps-class",
            type=float,
            action=PositiveNumberAction,
            default=None,
            help="Quotient class threshold. Default max(4 eps_diag, 2 / N).",
        )
        group.add_argument(
            "--max-iters",
            type=int,
            default=None,
            help="Value-iteration sweep limit. Default 5000.",
        )
        group.add_argument(
            "--seed",
            type=int,
            default=None,
            help="Seed for every sampled check. Default 0.",
        )
        return parser

    def _build_output_parser(self):
        parser = ArgumentParser(add_help=False)
        group = parser.add_argument_group(
            "Output Options", "Control where results go and how much is printed."
        )
        group.add_argument(
            "--out",
            dest="output_dir",
            type=Path,
            default=None,
            help="Directory receiving CSV/JSON results. Default ./xyopt_output.",
        )
        group.add_argument(
            "--quiet",
            "--silence",
            "-q",
            action="store_true",
            help="Suppress output to console.",
        )
        group.add_argument("--ci", action="store_true", help="CI mode disables spinner.")
        return parser

    def _build_dev_parser(self, debug_enabled, log_level):
        parser = ArgumentParser(add_help=False)
        group = parser.add_argument_group(
            "Development Options", "Dev and debugging flags."
        )
        group.add_argument(
            "--debug",
            action="store_true",
            default=debug_enabled,
            help="Enable debug logging and write a debug log file.",
        )
        group.add_argument(
            "--log-level",
            type=str,
            default=log_level
            or (LOG_LEVEL_DEFAULT_DEBUG_MODE if debug_enabled else LOG_LEVEL_DEFAULT),
            choices=LOG_LEVELS,
            help="Set log level. Defaults to 'critical' generally or 'debug' in debug mode.",
        )
        return parser

    @property
    def run_parents(self) -> list[ArgumentParser]:
        return [
            self.potential_parser,
            self.grid_parser,
            self.output_parser,
            self.dev_parser,
        ]


class Subparsers:
    def __init__(self, root_parser: ArgumentParser, parsers: Parsers):
        self.root_parser = root_parser
        self.parsers = parsers
        self.subparser_object = self.root_parser.add_subparsers(dest="mode")

        self.analyze = self._add_run_command(
            "analyze",
            "Optimal average and minimizer set.",
            "Compute alpha, the minimizer components and the Aubry anchors.\n"
            "Writes groundstate.csv and summary.json.",
        )
        self.barrier = self._add_run_command(
            "barrier",
            "Mane potential and Peierls barrier.",
            "Compute the grid Mane potential and the barrier between anchors.\n"
            "Writes barrier.csv and barrier_matrix.csv.",
        )
        self.subaction = self._add_run_command(
            "subaction",
            "Calibrated subaction by value iteration.",
            "Solve for a calibrated subaction on the grid.\nWrites subaction.csv.",
        )
        self.quotient = self._add_run_command(
            "quotient",
            "Quotient Aubry set.",
            "Symmetrize the barrier over the anchors and cluster it.\n"
            "Writes quotient.csv and classes.json.",
        )
        self.semistatic = self._add_semistatic()
        self.verify = self._add_run_command(
            "verify",
            "Run the acceptance suite.",
            "Run every acceptance check that applies to the potential.\n"
            "Writes report.json; exits 1 when a check fails.",
        )
        self.version = self._add_version()
        self.autocomplete = self._add_autocomplete()

    def _add_run_command(self, name: str, help_text: str, description: str):
        return self.subparser_object.add_parser(
            name=name,
            help=help_text,
            description=description,
            usage=f"xyopt {name} --potential <name|file|json> [options]",
            formatter_class=RawTextHelpFormatter,
            parents=self.parsers.run_parents,
        )

    def _add_semistatic(self):
        parser = self._add_run_command(
            "semistatic",
            "Semi-static check of orbit words.",
            "Compare predicted Mane membership with the semi-static check.\n"
            "Writes verdicts.csv.",
        )
        parser.add_argument(
            "--words",
            action=FileExistsAction,
            default=None,
            help='JSON/YAML list of {"symbols": [...], "tail": c or [...]}.',
        )
        return parser

    def _add_version(self):
        return self.subparser_object.add_parser(
            name="version",
            help="Show version and exit.",
            description="Print the xyopt version.",
            usage="xyopt version",
            formatter_class=RawTextHelpFormatter,
        )

    def _add_autocomplete(self):
        autocomplete = self.subparser_object.add_parser(
            name="autocomplete",
            help="Shell autocompletion.",
            description="Print the shell completion hook.",
            usage="xyopt autocomplete show",
            formatter_class=RawTextHelpFormatter,
            parents=[self.parsers.dev_parser],
        )
        actions = autocomplete.add_subparsers(dest="autocomplete_action")
        actions.add_parser(
            "show",
            help="Print shell completion script for use with eval.",
            parents=[self.parsers.dev_parser],
        )
        return autocomplete
