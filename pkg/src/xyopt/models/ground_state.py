from dataclasses import dataclass, field

import numpy as np

Interval = tuple[float, float]

# Slack when deciding whether a real anchor lies in a component.
MEMBERSHIP_SLACK = 1e-12


@dataclass(frozen=True)
class GroundState:
    """
    Optimal average and minimizer set of the diagonal profile a -> h(a, a).

    Attributes:
        alpha: Approximation of min_a h(a, a).
        components: Sorted, pairwise disjoint closed intervals [l, r]; l == r
            marks a point component.
        tolerance: Membership cut; a is a minimizer iff h(a, a) <= alpha + tolerance.
        grid_n: Diagonal resolution used for the scan.
        refined_minimizers: Golden-section argmins that produced alpha candidates.
    """

    alpha: float
    components: tuple[Interval, ...]
    tolerance: float
    grid_n: int
    refined_minimizers: tuple[float, ...] = field(default=(), compare=False)

    def contains(self, a: float, slack: float = MEMBERSHIP_SLACK) -> bool:
        return self.component_index(a, slack) is not None

    def component_index(self, a: float, slack: float = MEMBERSHIP_SLACK) -> int | None:
        for index, (left, right) in enumerate(self.components):
            if left - slack <= a <= right + slack:
                return index
        return None

    def is_point_component(self, index: int) -> bool:
        left, right = self.components[index]
        return left == right

    def distance_to_minimizers(self, x) -> np.ndarray:
        """Distance from x (scalar or array) to the union of the components."""
        x = np.asarray(x, dtype=float)
        if not self.components:
            return np.full_like(x, np.inf)
        gaps = [
            np.maximum(np.maximum(left - x, x - right), 0.0)
            for left, right in self.components
        ]
        return np.min(np.stack(gaps), axis=0)

    def __json__(self) -> dict:
        return {
            "alpha": self.alpha,
            "components": [[left, right] for left, right in self.components],
            "tolerance": self.tolerance,
            "grid_n": self.grid_n,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GroundState":
        return cls(
            alpha=float(data["alpha"]),
            components=tuple(
                (float(left), float(right)) for left, right in data["components"]
            ),
            tolerance=float(data["tolerance"]),
            grid_n=int(data["grid_n"]),
        )
