"""
Optimal average alpha = min_a h(a, a) and the minimizer set of the diagonal.
"""

import logging
import math

import numpy as np
from scipy.optimize import bisect

from .constants import MIN_GRID_N
from .exceptions import DomainError, EmptyGroundStateError
from .models import GroundState, PotentialSpec
from .potential import diagonal_profile

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARED = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """
    Golden-section search for a unimodal f on [a, b].

    Returns a sub-interval [c, d] containing the minimum with d - c <= tol.
    """
    a, b = min(a, b), max(a, b)
    h = b - a
    if h <= tol:
        return a, b

    steps = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))

    c = a + INV_PHI_SQUARED * h
    d = a + INV_PHI * h
    yc = f(c)
    yd = f(d)

    for _ in range(steps - 1):
        h = INV_PHI * h
        if yc < yd:
            b, d, yd = d, c, yc
            c = a + INV_PHI_SQUARED * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            d = a + INV_PHI * h
            yd = f(d)

    return (a, d) if yc < yd else (c, b)


def _refine_minimum(f, a: float, b: float, tol: float) -> tuple[float, float]:
    lo, hi = golden_section(f, a, b, tol)
    best = min((lo, hi, 0.5 * (lo + hi)), key=f)
    return float(best), float(f(best))


def _maximal_runs(mask: np.ndarray) -> list[tuple[int, int]]:
    """Inclusive index ranges of the True runs of a boolean vector."""
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(start), int(stop) - 1) for start, stop in zip(edges[::2], edges[1::2])]


def _merge_close(components: list[tuple[float, float]], gap: float):
    merged: list[tuple[float, float]] = []
    for left, right in sorted(components):
        if merged and left - merged[-1][1] <= gap:
            merged[-1] = (merged[-1][0], max(merged[-1][1], right))
        else:
            merged.append((left, right))
    return merged


def compute_ground_state(
    spec: PotentialSpec,
    grid_n: int,
    refine_tol: float,
    membership_tol: float | None = None,
) -> GroundState:
    """
    Scan the diagonal profile on i / grid_n, refine every grid local minimum
    within 2 L / grid_n of the grid minimum by golden-section search, then
    collect the maximal runs of grid points inside the membership cut.

    Args:
        spec: Potential to analyze.
        grid_n: Number of diagonal intervals, at least 16.
        refine_tol: Golden-section and bisection width.
        membership_tol: Extra slack of the membership cut; defaults to
            1e-12 (1 + |alpha|). Pass ``spec.lipschitz_bound / grid_n`` for
            the pitch-coupled cut.
    """
    if grid_n < MIN_GRID_N:
        raise DomainError(f"grid_n must be >= {MIN_GRID_N}, got {grid_n}")
    if refine_tol <= 0:
        raise DomainError("refine_tol must be > 0")

    pitch = 1.0 / grid_n
    grid = np.arange(grid_n + 1) * pitch
    profile = diagonal_profile(spec, grid)
    grid_min = float(profile.min())

    def f(a: float) -> float:
        return float(diagonal_profile(spec, min(max(a, 0.0), 1.0)))

    left = np.concatenate(([np.inf], profile[:-1]))
    right = np.concatenate((profile[1:], [np.inf]))
    window = 2.0 * spec.lipschitz_bound * pitch
    candidates = np.flatnonzero(
        (profile <= left) & (profile <= right) & (profile <= grid_min + window)
    )

    refined = [
        _refine_minimum(f, grid[max(i - 1, 0)], grid[min(i + 1, grid_n)], refine_tol)
        for i in candidates
    ]
    alpha = min([grid_min] + [value for _, value in refined])

    if membership_tol is None:
        membership_tol = 1e-12 * (1.0 + abs(alpha))
    tolerance = max(refine_tol, membership_tol)
    cut = alpha + tolerance

    def excess(a: float) -> float:
        return f(a) - cut

    components = []
    for start, stop in _maximal_runs(profile <= cut):
        if start == stop:
            nearby = [
                (value, x)
                for x, value in refined
                if abs(x - grid[start]) <= pitch and value <= cut
            ]
            x = min(nearby)[1] if nearby else float(grid[start])
            components.append((float(x), float(x)))
            continue
        lo = (
            float(grid[0])
            if start == 0
            else bisect(excess, grid[start - 1], grid[start], xtol=refine_tol)
        )
        hi = (
            float(grid[-1])
            if stop == grid_n
            else bisect(excess, grid[stop], grid[stop + 1], xtol=refine_tol)
        )
        components.append((float(lo), float(hi)))

    # minimizers sitting strictly between grid nodes that all miss the cut
    for x, value in refined:
        if value <= cut and not any(
            lo - pitch <= x <= hi + pitch for lo, hi in components
        ):
            components.append((float(x), float(x)))

    components = _merge_close(components, pitch)
    logger.info(
        "Ground state of %s at N=%d: alpha=%.12g, %d component(s), tolerance=%.3g",
        spec.name,
        grid_n,
        alpha,
        len(components),
        tolerance,
    )
    return GroundState(
        alpha=float(alpha),
        components=tuple(components),
        tolerance=float(tolerance),
        grid_n=grid_n,
        refined_minimizers=tuple(float(x) for x, _ in refined),
    )


def aubry_fixed_points(gs: GroundState, spacing: float) -> list[float]:
    """
    Anchors a whose fixed points a^inf cover the Aubry set: every component
    endpoint plus interior points every ``spacing``.
    """
    if spacing <= 0:
        raise DomainError("spacing must be > 0")
    if not gs.components:
        raise EmptyGroundStateError("The ground state has no minimizer components")

    anchors = []
    for left, right in gs.components:
        anchors.append(left)
        k = 1
        while left + k * spacing < right - 1e-12:
            anchors.append(round(left + k * spacing, 12))
            k += 1
        if right > left:
            anchors.append(right)
    return anchors


def ground_state_rows(spec: PotentialSpec, gs: GroundState) -> list[tuple]:
    """Rows (a, h(a, a), in_m) over the diagonal grid."""
    grid = np.arange(gs.grid_n + 1) / gs.grid_n
    profile = diagonal_profile(spec, grid)
    return [
        (float(a), float(value), int(value <= gs.alpha + gs.tolerance))
        for a, value in zip(grid, profile)
    ]
