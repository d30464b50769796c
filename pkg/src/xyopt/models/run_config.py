from dataclasses import dataclass, field, fields, replace
from pathlib import Path

from ..constants import (
    DEFAULT_GRID_N,
    DEFAULT_MAX_ITERS,
    DEFAULT_OUTPUT_DIR,
    DEFAULT_QUAD_N,
    DEFAULT_REFINE_TOL,
    DEFAULT_SEED,
    DEFAULT_SPACING,
    DEFAULT_TOL_SUBACTION,
    MIN_GRID_N,
)
from ..exceptions import ConfigError

TOLERANCE_KEYS = ("refine_tol", "tol_subaction", "eps_class")


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a subcommand needs to run.

    ``potential`` is a built-in name, a path to a JSON/YAML document, an
    inline JSON string, or an already parsed mapping.
    """

    potential: str | dict | None = None
    grid_n: int = DEFAULT_GRID_N
    quad_n: int = DEFAULT_QUAD_N
    spacing: float = DEFAULT_SPACING
    refine_tol: float = DEFAULT_REFINE_TOL
    tol_subaction: float = DEFAULT_TOL_SUBACTION
    eps_class: float | None = None
    max_iters: int = DEFAULT_MAX_ITERS
    output_dir: Path = field(default_factory=lambda: Path(DEFAULT_OUTPUT_DIR))
    seed: int = DEFAULT_SEED
    words: Path | None = None

    def __post_init__(self):
        object.__setattr__(self, "output_dir", Path(self.output_dir))
        if self.words is not None:
            object.__setattr__(self, "words", Path(self.words))

    def validate(self) -> "RunConfig":
        if self.potential is None:
            raise ConfigError("No potential given; use --potential or a config file")
        if not _is_int(self.grid_n) or self.grid_n < MIN_GRID_N:
            raise ConfigError(f"grid_n must be an integer >= {MIN_GRID_N}")
        if not _is_int(self.quad_n) or self.quad_n < 2:
            raise ConfigError("quad_n must be an integer >= 2")
        if not _is_int(self.max_iters) or self.max_iters < 1:
            raise ConfigError("max_iters must be a positive integer")
        if not _is_int(self.seed):
            raise ConfigError("seed must be an integer")
        for label in ("spacing", "refine_tol", "tol_subaction", "eps_class"):
            value = getattr(self, label)
            if value is None and label == "eps_class":
                continue
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise ConfigError(f"{label} must be a number, got {value!r}")
            if value <= 0:
                raise ConfigError(f"{label} must be > 0, got {value}")
        return self

    def merged(self, overrides: dict) -> "RunConfig":
        """Copy with every non-None override applied."""
        known = {f.name for f in fields(self)}
        return replace(
            self, **{k: v for k, v in overrides.items() if k in known and v is not None}
        )

    def __json__(self) -> dict:
        return {
            "potential": self.potential,
            "grid_n": self.grid_n,
            "quad_n": self.quad_n,
            "spacing": self.spacing,
            "tolerances": {
                "refine_tol": self.refine_tol,
                "tol_subaction": self.tol_subaction,
                "eps_class": self.eps_class,
            },
            "output_dir": str(self.output_dir),
            "seed": self.seed,
            "max_iters": self.max_iters,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        """
        Build a config from a parsed document. Keys may use dashes or
        underscores; tolerances may be nested under ``tolerances``.
        """
        if not isinstance(data, dict):
            raise ConfigError("A run configuration must be a mapping")

        flat = {str(k).replace("-", "_"): v for k, v in data.items()}
        tolerances = flat.pop("tolerances", None) or {}
        if not isinstance(tolerances, dict):
            raise ConfigError("'tolerances' must be a mapping")
        for key, value in tolerances.items():
            key = str(key).replace("-", "_")
            if key not in TOLERANCE_KEYS:
                raise ConfigError(f"Unknown tolerance '{key}'")
            flat[key] = value

        if flat.get("eps_class") == "auto":
            flat["eps_class"] = None

        if "out" in flat:
            flat["output_dir"] = flat.pop("out")

        known = {f.name for f in fields(cls)}
        unknown = set(flat) - known
        if unknown:
            raise ConfigError(f"Unknown config keys: {', '.join(sorted(unknown))}")

        return cls().merged(flat)


def _is_int(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)
