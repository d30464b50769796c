from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class BarrierMatrix:
    """
    Grid Mane potential between the nodes x_i = i / N, i = 0..N.

    ``S[i, j]`` is the minimum over path lengths n >= 1 (or 1..max_len when
    bounded) of the reduced cost of grid paths from x_i to x_j.
    ``cost[i, j]`` is the one-step reduced cost h(x_i, x_j) - alpha.
    """

    grid: np.ndarray = field(repr=False)
    alpha: float
    S: np.ndarray = field(repr=False)
    cost: np.ndarray = field(repr=False)
    neg_cycle_margin: float
    eps_cyc: float
    eps_num: float
    lipschitz_bound: float
    rounds: int
    max_len: int | None = None

    @property
    def grid_n(self) -> int:
        return len(self.grid) - 1

    def index_of(self, a: float) -> int:
        """Nearest grid node to the anchor a."""
        return int(np.clip(np.rint(a * self.grid_n), 0, self.grid_n))

    def node(self, a: float) -> float:
        return float(self.grid[self.index_of(a)])

    def value(self, a: float, b: float) -> float:
        return float(self.S[self.index_of(a), self.index_of(b)])

    def __json__(self) -> dict:
        return {
            "grid_n": self.grid_n,
            "alpha": self.alpha,
            "neg_cycle_margin": self.neg_cycle_margin,
            "eps_cyc": self.eps_cyc,
            "eps_num": self.eps_num,
            "rounds": self.rounds,
            "max_len": self.max_len,
        }
