import logging
from functools import cached_property

from ..aubry import build_quotient
from ..barrier import build_barrier
from ..groundstate import aubry_fixed_points, compute_ground_state
from ..models import PotentialSpec, RunConfig
from ..subaction import solve_calibrated

logger = logging.getLogger(__name__)


class VerificationContext:
    """
    Lazily computed objects shared by the acceptance checks of one run.

    Each stage is built once, on first access, from the run configuration.
    """

    def __init__(self, spec: PotentialSpec, config: RunConfig):
        self.spec = spec
        self.config = config

    @cached_property
    def gs(self):
        return compute_ground_state(
            self.spec, self.config.grid_n, self.config.refine_tol
        )

    @cached_property
    def bm(self):
        return build_barrier(self.spec, self.gs, self.config.grid_n)

    @cached_property
    def sub(self):
        return solve_calibrated(
            self.spec,
            self.gs,
            self.config.grid_n,
            self.config.max_iters,
            self.config.tol_subaction,
        )

    @cached_property
    def quotient(self):
        return build_quotient(
            self.spec, self.gs, self.bm, self.config.spacing, self.config.eps_class
        )

    @cached_property
    def anchors(self) -> list[float]:
        return aubry_fixed_points(self.gs, self.config.spacing)
