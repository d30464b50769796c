"""
Calibrated subactions on the grid.

A subaction is stored as a function of the first coordinate only; the
potential depends on two coordinates, so the operator
    (T v)(x) = min_y [h(y, x) + v(y)] - alpha
maps such functions to themselves.
"""

import logging
import math

import numpy as np

from .constants import MIN_GRID_N
from .exceptions import DomainError, EmptyGroundStateError, SourceNotInAubryError
from .models import BarrierMatrix, GroundState, OrbitWord, PotentialSpec, SubactionGrid
from .potential import cost_matrix, evaluate

logger = logging.getLogger(__name__)


def anchor_index(gs: GroundState, grid_n: int) -> int:
    """Leftmost grid node inside the first minimizer component."""
    if not gs.components:
        raise EmptyGroundStateError("The ground state has no minimizer components")
    left, right = gs.components[0]
    first = math.ceil(left * grid_n - 1e-9)
    if first <= math.floor(right * grid_n + 1e-9):
        return int(first)
    return int(round(left * grid_n))


def _apply(cost: np.ndarray, v: np.ndarray) -> np.ndarray:
    # cost[y, x] = h(y, x) - alpha
    return np.min(cost + v[:, None], axis=0)


def _measure(
    grid: np.ndarray,
    v: np.ndarray,
    cost: np.ndarray,
    anchor: int,
    alpha: float,
    iterations: int,
    converged: bool,
) -> SubactionGrid:
    gap = np.abs(v - _apply(cost, v))
    defect = float(np.max(np.maximum(v[None, :] - v[:, None] - cost, 0.0)))
    return SubactionGrid(
        grid=grid,
        v=v,
        anchor=anchor,
        calibration_residual=float(np.max(gap)),
        subaction_defect=defect,
        calibration_gap=gap,
        alpha=alpha,
        iterations=iterations,
        converged=converged,
    )


def solve_calibrated(
    spec: PotentialSpec,
    gs: GroundState,
    grid_n: int,
    max_iters: int,
    tol: float,
    initial=None,
) -> SubactionGrid:
    """
    Value iteration v <- T v, renormalized to v(anchor) = 0 after every sweep,
    until the sup-change drops below ``tol`` or ``max_iters`` sweeps ran.

    The default start v_0(x) = h(a, x) - alpha at the leftmost anchor a picks
    the barrier-generated subaction H(a^inf, .). Non-convergence is reported
    on the result, not raised.
    """
    if grid_n < MIN_GRID_N:
        raise DomainError(f"grid_n must be >= {MIN_GRID_N}, got {grid_n}")
    if tol <= 0:
        raise DomainError("tol must be > 0")
    if max_iters < 1:
        raise DomainError("max_iters must be >= 1")

    grid = np.arange(grid_n + 1) / grid_n
    cost = cost_matrix(spec, grid, gs.alpha)
    anchor = anchor_index(gs, grid_n)

    if initial is None:
        v = cost[anchor].copy()
    else:
        v = np.array(initial, dtype=float)
        if v.shape != grid.shape:
            raise DomainError(f"initial must have {grid_n + 1} entries")
    v = v - v[anchor]

    converged = False
    iterations = 0
    while iterations < max_iters:
        updated = _apply(cost, v)
        updated = updated - updated[anchor]
        change = float(np.max(np.abs(updated - v)))
        v = updated
        iterations += 1
        if change < tol:
            converged = True
            break

    result = _measure(grid, v, cost, anchor, gs.alpha, iterations, converged)
    if converged:
        logger.info(
            "Subaction converged after %d sweep(s), residual %.3g",
            iterations,
            result.calibration_residual,
        )
    else:
        logger.warning(
            "Subaction did not converge in %d sweep(s); residual %.3g, defect %.3g",
            iterations,
            result.calibration_residual,
            result.subaction_defect,
        )
    return result


def reconstruct(
    bm: BarrierMatrix, gs: GroundState, u_on_aubry: dict[float, float]
) -> SubactionGrid:
    """v(y) = min over anchors a of H(a^inf, y) + u(a), normalized at the anchor."""
    if not u_on_aubry:
        raise DomainError("reconstruct needs at least one anchor value")
    rows = []
    for a, u in u_on_aubry.items():
        if not gs.contains(a):
            raise SourceNotInAubryError(f"Anchor {a} is not a diagonal minimizer")
        rows.append(bm.S[bm.index_of(a)] + u)

    anchor = anchor_index(gs, bm.grid_n)
    v = np.min(np.stack(rows), axis=0)
    v = v - v[anchor]
    return _measure(bm.grid, v, bm.cost, anchor, bm.alpha, 0, True)


def class_consistency_check(
    bm: BarrierMatrix, gs: GroundState, sub: SubactionGrid, pairs
) -> float:
    """
    Largest |(S[a][y] + v(a)) - (S[b][y] + v(b))| over equivalent anchor
    pairs (a, b) and grid targets y.
    """
    worst = 0.0
    for a, b in pairs:
        i, j = bm.index_of(a), bm.index_of(b)
        difference = (bm.S[i] + sub.v[i]) - (bm.S[j] + sub.v[j])
        worst = max(worst, float(np.max(np.abs(difference))))
    return worst


def static_identity_check(
    spec: PotentialSpec, gs: GroundState, sub: SubactionGrid, w: OrbitWord
) -> float:
    """
    Largest |v(w_{k+1}) - v(w_k) - (h(w_k, w_{k+1}) - alpha)| along the
    head of w and one pass through its tail.
    """
    points = np.asarray(w.expand(len(w.symbols) + len(w.tail) + 1))
    increments = np.diff(sub.value_at(points))
    costs = evaluate(spec, points[:-1], points[1:]) - gs.alpha
    return float(np.max(np.abs(increments - costs)))


def subaction_lipschitz_defect(
    spec: PotentialSpec, sub: SubactionGrid, tol: float
) -> float:
    """Largest |v(x) - v(y)| - L |x - y| - 2 tol over grid pairs, floored at 0."""
    spread = np.abs(sub.v[:, None] - sub.v[None, :])
    bound = spec.lipschitz_bound * np.abs(sub.grid[:, None] - sub.grid[None, :])
    return max(float(np.max(spread - bound - 2.0 * tol)), 0.0)


def subaction_rows(sub: SubactionGrid) -> list[tuple]:
    return [
        (float(x), float(v), float(gap))
        for x, v, gap in zip(sub.grid, sub.v, sub.calibration_gap)
    ]
