"""
Semi-static and static behaviour of eventually periodic orbit words, and the
predicted Mane set.
"""

import logging
import math
from pathlib import Path

import numpy as np
import yaml

from .barrier import mane_eventually_fixed
from .exceptions import ConfigError, DomainError, InfiniteBarrierError
from .models import (
    BarrierMatrix,
    ConfusionTable,
    GroundState,
    OrbitWord,
    PairCheckReport,
    PotentialSpec,
    WordVerdict,
)
from .potential import evaluate

logger = logging.getLogger(__name__)


def word_distance(w: OrbitWord, v: OrbitWord, truncation: int) -> tuple[float, float]:
    """
    Partial sum of d_X(w, v) = sum_i |w_i - v_i| / 2^(i + 1) over i < truncation,
    with the bound 2^-truncation on the omitted tail.
    """
    if truncation < 1:
        raise DomainError("truncation must be >= 1")
    weights = 0.5 ** np.arange(1, truncation + 1)
    difference = np.abs(np.subtract(w.expand(truncation), v.expand(truncation)))
    return float(difference @ weights), 2.0**-truncation


def _partial_sums(spec: PotentialSpec, alpha: float, points) -> np.ndarray:
    points = np.asarray(points, dtype=float)
    steps = evaluate(spec, points[:-1], points[1:]) - alpha
    return np.concatenate(([0.0], np.cumsum(steps)))


def _step_allowance(spec: PotentialSpec, bm: BarrierMatrix) -> float:
    return 2.0 * spec.lipschitz_bound / bm.grid_n


def _horizon(spec, gs, bm, w: OrbitWord, tol: float) -> int:
    """
    Last index compared for the canonical word w: its prefix and then enough
    tail periods for a cycle whose action beats the grid allowance to fail.

    Along the tail the defect at (i, i + k p) is (k - 1) * cycle, against an
    allowance of tol + k p a, so k > (cycle + tol) / (cycle - p a) suffices.
    """
    n, p = len(w.symbols), w.period
    cycle = float(_partial_sums(spec, gs.alpha, w.tail + w.tail[:1])[-1])
    growth = cycle - p * _step_allowance(spec, bm)

    if growth > 0.0:
        periods = math.floor((cycle + tol) / growth) + 2
    else:
        periods = 3
        if cycle > tol:
            logger.info(
                "Cycle action %.3g of %s is below the grid allowance; "
                "refine the grid to resolve it",
                cycle,
                w,
            )

    cap = max(3, bm.grid_n // p)
    if periods > cap:
        logger.warning(
            "Comparing %d tail period(s) of %s instead of %d", cap, w, periods
        )
        periods = cap
    return n + p * periods


def _pair_check(spec, gs, bm, w, tol, defect_of) -> PairCheckReport:
    horizon = _horizon(spec, gs, bm, w, tol)
    sums = _partial_sums(spec, gs.alpha, w.expand(horizon + 1))
    step_allowance = _step_allowance(spec, bm)

    worst_pair, worst_defect, worst_excess = None, -math.inf, -math.inf
    checked = 0
    for i in range(horizon):
        for j in range(i + 1, horizon + 1):
            defect = defect_of(float(sums[j] - sums[i]), i, j)
            excess = defect - (tol + step_allowance * (j - i))
            checked += 1
            if excess > worst_excess:
                worst_pair, worst_defect, worst_excess = (i, j), defect, excess

    return PairCheckReport(
        passes=worst_excess <= 0.0,
        worst_pair=worst_pair,
        worst_defect=worst_defect,
        pairs_checked=checked,
    )


def semistatic_check(
    spec: PotentialSpec,
    gs: GroundState,
    bm: BarrierMatrix,
    w: OrbitWord,
    tol: float,
) -> PairCheckReport:
    """
    Compare, for 0 <= i < j up to the horizon, the action of w from step i to
    step j with S(sigma^i w, sigma^j w). The word passes when every defect
    stays below tol + 2 L (j - i) / N.

    Indices refer to the canonical form of w, so every writing of the same
    point gets the same verdict. The horizon covers the prefix and at least
    three tail periods, more when the cycle action outgrows the allowance.

    Raises:
        InfiniteBarrierError: some S(sigma^i w, sigma^j w) has no finite branch.
    """
    w = w.canonical()

    def defect_of(action: float, i: int, j: int) -> float:
        return action - mane_eventually_fixed(bm, gs, spec, w.shift(i), w.shift(j))

    report = _pair_check(spec, gs, bm, w, tol, defect_of)
    logger.debug("Semi-static check of %s: %s", w, report)
    return report


def static_check(
    spec: PotentialSpec,
    gs: GroundState,
    bm: BarrierMatrix,
    w: OrbitWord,
    tol: float,
) -> PairCheckReport:
    """
    Static identity: the action from step i to step j equals
    -S(sigma^j w, sigma^i w). Pairs with no finite return barrier count as
    an infinite defect.
    """
    w = w.canonical()

    def defect_of(action: float, i: int, j: int) -> float:
        try:
            back = mane_eventually_fixed(bm, gs, spec, w.shift(j), w.shift(i))
        except InfiniteBarrierError:
            return math.inf
        return abs(action + back)

    return _pair_check(spec, gs, bm, w, tol, defect_of)


def shifts_pairwise_distinct(w: OrbitWord) -> bool:
    """
    Whether sigma^i(w) != sigma^j(w) for all i != j. An eventually periodic
    point repeats after its prefix, so the scan over one period settles it.
    """
    shifts = [w.shift(i) for i in range(len(w.symbols) + w.period + 1)]
    return not any(
        shifts[i].same_point(shifts[j])
        for i in range(len(shifts))
        for j in range(i + 1, len(shifts))
    )


def mane_membership_predicted(w: OrbitWord, gs: GroundState) -> bool:
    """Injective orbit, or preimage of a fixed point a^inf with a a minimizer."""
    if shifts_pairwise_distinct(w):
        return True
    c = w.tail_symbol
    return c is not None and gs.contains(c)


def cross_validate(
    spec: PotentialSpec,
    gs: GroundState,
    bm: BarrierMatrix,
    words,
    tol: float,
) -> ConfusionTable:
    """Predicted membership against the semi-static check for every word."""
    table = ConfusionTable()
    for w in words:
        try:
            report = semistatic_check(spec, gs, bm, w, tol)
        except InfiniteBarrierError as e:
            logger.info("No finite barrier for %s: %s", w, e)
            report = PairCheckReport(False, None, math.inf)
        table.add(
            WordVerdict(
                word=str(w),
                predicted=mane_membership_predicted(w, gs),
                observed=report.passes,
                worst_defect=report.worst_defect,
                worst_pair=report.worst_pair,
            )
        )
    if table.disagreements:
        logger.warning(
            "%d of %d word(s) disagree with the predicted membership",
            table.disagreements,
            len(table.verdicts),
        )
    return table


def partial_action_bound(
    spec: PotentialSpec, gs: GroundState, w: OrbitWord, length: int
) -> float:
    """Largest |running action| along the first ``length`` transitions of w."""
    if length < 1:
        raise DomainError("length must be >= 1")
    sums = _partial_sums(spec, gs.alpha, w.expand(length + 1))
    return float(np.max(np.abs(sums)))


def load_words(path) -> list[OrbitWord]:
    """Read a JSON/YAML list of {"symbols": [...], "tail": c or [...]}."""
    path = Path(path)
    try:
        document = yaml.safe_load(path.read_text(encoding="UTF-8"))
    except FileNotFoundError:
        raise ConfigError(f"Words file {path} does not exist") from None
    except yaml.YAMLError as e:
        raise ConfigError(f"Malformed words file {path}: {e}") from e

    if document is None:
        return []
    if not isinstance(document, list):
        raise ConfigError(f"Words file {path} must hold a list of words")
    return [OrbitWord.from_dict(entry) for entry in document]
