from .potential_spec import PotentialSpec
from .ground_state import GroundState
from .barrier_matrix import BarrierMatrix
from .subaction_grid import SubactionGrid
from .quotient_structure import QuotientStructure
from .orbit_word import OrbitWord
from .run_config import RunConfig
from .reports import (
    TwistReport,
    H3Report,
    PairCheckReport,
    ComponentVerdict,
    PseudoMetricReport,
    DiagonalScanReport,
    WordVerdict,
    ConfusionTable,
    CheckResult,
)
