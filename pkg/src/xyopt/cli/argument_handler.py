import logging
from argparse import ArgumentParser, Namespace, RawTextHelpFormatter
from pathlib import Path

import yaml
from argcomplete import autocomplete

from ..exceptions import ConfigError
from ..models import RunConfig
from .parsers import Parsers, Subparsers

logger = logging.getLogger(__name__)

DESCRIPTION = """
xyopt computes ground states, Mane potentials, Peierls barriers, calibrated
subactions and quotient Aubry sets for 2-local XY-model potentials on [0, 1].
"""

EPILOG = """
For help with specific subcommands, use:
    xyopt {analyze, barrier, subaction, quotient, semistatic, verify, version, autocomplete} -h
"""

RUN_OPTIONS = (
    "potential",
    "grid_n",
    "quad_n",
    "spacing",
    "refine_tol",
    "tol_subaction",
    "eps_class",
    "max_iters",
    "output_dir",
    "seed",
    "words",
)


def build_root_parser() -> ArgumentParser:
    root_parser = ArgumentParser(
        prog="xyopt",
        description=DESCRIPTION,
        usage="xyopt {analyze, barrier, subaction, quotient, semistatic, verify, version, autocomplete}",
        formatter_class=RawTextHelpFormatter,
        epilog=EPILOG,
    )
    Subparsers(root_parser, Parsers())
    return root_parser


def parse_arguments(argv: list[str] | None = None) -> Namespace:
    """Parse command-line arguments."""
    root_parser = build_root_parser()
    autocomplete(root_parser, always_complete_options=False)
    return root_parser.parse_args(argv)


def read_config_file(path: Path) -> RunConfig:
    try:
        document = yaml.safe_load(Path(path).read_text(encoding="UTF-8"))
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    except yaml.YAMLError as e:
        raise ConfigError(f"Malformed config file {path}: {e}") from e
    return RunConfig.from_dict(document or {})


def build_run_config(args: Namespace) -> RunConfig:
    """
    Layer the run configuration: built-in defaults, then ``--config``, then
    the flags given on the command line. Raises ConfigError when the result
    is invalid.
    """
    config = RunConfig()
    if getattr(args, "config", None):
        config = read_config_file(args.config)
        logger.info("Loaded run configuration from %s", args.config)

    overrides = {name: getattr(args, name, None) for name in RUN_OPTIONS}
    config = config.merged(overrides)
    logger.debug("Effective run configuration: %s", config)
    return config.validate()
