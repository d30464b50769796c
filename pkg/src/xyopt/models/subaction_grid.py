from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class SubactionGrid:
    """
    Candidate reduced subaction on the barrier grid.

    Attributes:
        grid: Node values x_i = i / N.
        v: Subaction values, ``v[anchor] == 0``.
        anchor: Grid index of the normalization point.
        calibration_residual: max_x |v(x) - (min_y [h(y, x) + v(y)] - alpha)|.
        subaction_defect: max over (x, y) of the positive part of
            v(y) - v(x) - h(x, y) + alpha.
        calibration_gap: Per-node calibration residual.
        iterations: Value-iteration sweeps performed (0 for reconstructions).
        converged: Whether the sweep change dropped below the tolerance.
    """

    grid: np.ndarray = field(repr=False)
    v: np.ndarray = field(repr=False)
    anchor: int
    calibration_residual: float
    subaction_defect: float
    calibration_gap: np.ndarray = field(repr=False)
    alpha: float
    iterations: int = 0
    converged: bool = True

    def value_at(self, x) -> np.ndarray | float:
        """Piecewise-linear interpolation of v at x."""
        values = np.interp(x, self.grid, self.v)
        return float(values) if np.ndim(values) == 0 else values

    def node_value(self, a: float) -> float:
        index = int(np.clip(np.rint(a * (len(self.grid) - 1)), 0, len(self.grid) - 1))
        return float(self.v[index])

    def __json__(self) -> dict:
        return {
            "grid_n": len(self.grid) - 1,
            "anchor": self.anchor,
            "calibration_residual": self.calibration_residual,
            "subaction_defect": self.subaction_defect,
            "iterations": self.iterations,
            "converged": self.converged,
        }
