from pathlib import Path


def find_project_root(start_path: Path) -> Path:
    """Walk upwards until a directory holding pyproject.toml is found."""
    current = start_path
    while current != current.parent:
        if (current / "pyproject.toml").exists():
            return current
        current = current.parent
    return start_path


# Root paths
PATH_XYOPT_ROOT: Path = Path(__file__).resolve().parent
PATH_PROJECT_ROOT: Path = find_project_root(PATH_XYOPT_ROOT)

# Log levels
LOG_LEVEL_DEFAULT_DEBUG_MODE = "debug"
LOG_LEVEL_DEFAULT = "critical"
LOG_LEVELS = ("debug", "info", "warn", "error", "critical")
DEBUG_LOG_FILENAME = "xyopt_output_debug.log"

# Run configuration defaults
DEFAULT_GRID_N = 256
DEFAULT_QUAD_N = 512
DEFAULT_SPACING = 0.05
DEFAULT_REFINE_TOL = 1e-8
DEFAULT_TOL_SUBACTION = 1e-7
DEFAULT_MAX_ITERS = 5000
DEFAULT_SEED = 0
DEFAULT_OUTPUT_DIR = "xyopt_output"
MIN_GRID_N = 16

# Numerical constants
LIPSCHITZ_SCAN_N = 256
LIPSCHITZ_INFLATION = 1.1
LIPSCHITZ_FLOOR = 1e-6
H3_STRICT_MARGIN = 1e-12
NEG_CYCLE_FACTOR = 10.0
WORD_TRUNCATION = 40

# Desk-scale limits for the exhaustive enumerators
ORACLE_MAX_GRID_N = 10
ORACLE_MAX_LEN = 6
PERIODIC_MAX_GRID_N = 24
PERIODIC_MAX_PERIOD = 4

# Output
CSV_FLOAT_FORMAT = "%.12g"
