from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True, eq=False)
class QuotientStructure:
    """
    Finite anchor cover of the minimizer set with the symmetrized barrier.

    Attributes:
        anchors: Real anchors covering the minimizer set.
        nodes: Grid nodes the anchors snap to in the barrier matrix.
        delta: delta[i, j] = H(a_i, a_j) + H(a_j, a_i).
        classes: Anchor index groups, clusters of delta <= eps_class.
        class_of: Class index per anchor.
        component_of: Minimizer component index per anchor.
        hausdorff: Hausdorff distance between the components of a_i and a_j.
        components: The component intervals referenced by ``component_of``.
        eps_class: Clustering threshold in use.
        eps_diag: Largest |S[a][a]| over the anchors.
    """

    anchors: tuple[float, ...]
    nodes: tuple[float, ...]
    delta: np.ndarray = field(repr=False)
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    component_of: tuple[int, ...]
    hausdorff: np.ndarray = field(repr=False)
    components: tuple[tuple[float, float], ...]
    eps_class: float
    eps_diag: float

    def same_class(self, i: int, j: int) -> bool:
        return self.class_of[i] == self.class_of[j]

    def same_component(self, i: int, j: int) -> bool:
        return self.component_of[i] == self.component_of[j]

    def pairs(self):
        """Index pairs i < j."""
        count = len(self.anchors)
        return ((i, j) for i in range(count) for j in range(i + 1, count))
