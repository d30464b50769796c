"""
Mane potential and Peierls barrier on the grid x_i = i / N.

The grid potential S[i, j] is the cheapest reduced cost of a grid path
x_i -> ... -> x_j of any length n >= 1, with one-step cost
c(x, y) = h(x, y) - alpha.
"""

import logging
import math

import numpy as np
from scipy.integrate import simpson

from .constants import (
    MIN_GRID_N,
    NEG_CYCLE_FACTOR,
    ORACLE_MAX_GRID_N,
    ORACLE_MAX_LEN,
    PERIODIC_MAX_GRID_N,
    PERIODIC_MAX_PERIOD,
)
from .exceptions import (
    DomainError,
    HypothesisError,
    InfiniteBarrierError,
    InstanceSizeError,
    NegativeCycleError,
    SourceNotInAubryError,
)
from .models import BarrierMatrix, GroundState, OrbitWord, PotentialSpec
from .potential import cost_matrix, d2, evaluate

logger = logging.getLogger(__name__)

# Rows per block of the min-plus product; bounds the broadcast temporary.
MIN_PLUS_BLOCK = 32


def min_plus(A: np.ndarray, B: np.ndarray, block: int = MIN_PLUS_BLOCK) -> np.ndarray:
    """(A ⊗ B)[i, j] = min_k A[i, k] + B[k, j], computed by row blocks."""
    out = np.empty((A.shape[0], B.shape[1]))
    for start in range(0, A.shape[0], block):
        stop = start + block
        out[start:stop] = np.min(A[start:stop, :, None] + B[None, :, :], axis=1)
    return out


def _grid(grid_n: int) -> np.ndarray:
    return np.arange(grid_n + 1) / grid_n


def _check_anchor(*anchors) -> None:
    for a in anchors:
        if not 0.0 <= a <= 1.0:
            raise DomainError(f"Anchor {a} is outside [0, 1]")


def _path_cost(spec: PotentialSpec, alpha: float, points) -> float:
    points = np.asarray(points, dtype=float)
    if len(points) < 2:
        return 0.0
    return float(np.sum(evaluate(spec, points[:-1], points[1:]) - alpha))


def build_barrier(
    spec: PotentialSpec,
    gs: GroundState,
    grid_n: int,
    max_len: int | None = None,
) -> BarrierMatrix:
    """
    All-pairs grid Mane potential.

    Without ``max_len`` the matrix is relaxed by path doubling S <- min(S, S ⊗ S)
    until it stops changing, which covers every path length. With ``max_len``
    it runs max_len - 1 Bellman-Ford rounds S <- min(S, S ⊗ c) so that S is
    the minimum over lengths 1..max_len.

    Raises:
        DomainError: grid_n below 16 for an unbounded run, or max_len < 1.
        NegativeCycleError: a grid cycle is cheaper than -eps_cyc.
    """
    if max_len is None and grid_n < MIN_GRID_N:
        raise DomainError(f"grid_n must be >= {MIN_GRID_N}, got {grid_n}")
    if grid_n < 1:
        raise DomainError("grid_n must be positive")
    if max_len is not None and max_len < 1:
        raise DomainError("max_len must be >= 1")

    grid = _grid(grid_n)
    cost = cost_matrix(spec, grid, gs.alpha)
    S = cost.copy()
    rounds = 0

    if max_len is None:
        limit = math.ceil(math.log2(grid_n + 1)) + 2
        while rounds < limit:
            relaxed = np.minimum(S, min_plus(S, S))
            rounds += 1
            if np.array_equal(relaxed, S):
                break
            S = relaxed
        improvement = float(np.min(min_plus(S, cost) - S))
    else:
        for _ in range(max_len - 1):
            S = np.minimum(S, min_plus(S, cost))
            rounds += 1
        improvement = 0.0

    eps_cyc = NEG_CYCLE_FACTOR * spec.lipschitz_bound / grid_n
    eps_num = 1e-9 * (1.0 + abs(gs.alpha))
    margin = min(float(np.min(np.diag(S))), improvement, 0.0)
    logger.debug(
        "Barrier at N=%d after %d round(s): neg_cycle_margin=%.3g, eps_cyc=%.3g",
        grid_n,
        rounds,
        margin,
        eps_cyc,
    )
    if margin < -eps_cyc:
        raise NegativeCycleError(
            f"Grid cycle of reduced cost {margin:.6g} is below -eps_cyc={-eps_cyc:.6g}; "
            "alpha is inconsistent with the potential"
        )

    return BarrierMatrix(
        grid=grid,
        alpha=gs.alpha,
        S=S,
        cost=cost,
        neg_cycle_margin=margin,
        eps_cyc=eps_cyc,
        eps_num=eps_num,
        lipschitz_bound=spec.lipschitz_bound,
        rounds=rounds,
        max_len=max_len,
    )


def peierls_fixed(bm: BarrierMatrix, gs: GroundState, a: float, b: float) -> float:
    """
    H(a^inf, b^inf) for a source a in the minimizer set. Padding with the
    zero-cost loop at a turns the liminf over path lengths into S[a][b].
    """
    _check_anchor(a, b)
    if not gs.contains(a):
        raise SourceNotInAubryError(
            f"Source {a} is not a diagonal minimizer; H({a}^inf, .) may be infinite"
        )
    return bm.value(a, b)


def mane_eventually_fixed(
    bm: BarrierMatrix,
    gs: GroundState,
    spec: PotentialSpec,
    w: OrbitWord,
    v: OrbitWord,
) -> float:
    """
    S(w, v) for eventually periodic words as the cheaper of two branches.

    Exact orbit: some shift sigma^s(w) equals v and the path follows w for
    s steps. Tail: w ends in c^inf with c a minimizer, the head of w is
    paid once and the path then goes from c to v_0 on the grid.

    Raises:
        InfiniteBarrierError: neither branch applies.
    """
    best = math.inf

    horizon = len(w.symbols) + len(v.symbols) + 2 * max(w.period, v.period)
    for s in range(1, horizon + 1):
        if w.shift(s).same_point(v):
            best = min(best, _path_cost(spec, bm.alpha, w.expand(s + 1)))

    c = w.tail_symbol
    if c is not None and gs.contains(c):
        head = w.canonical().symbols + (c,)
        best = min(best, _path_cost(spec, bm.alpha, head) + bm.value(c, v.symbol_at(0)))

    if math.isinf(best):
        raise InfiniteBarrierError(
            f"No orbit match from {w} to {v} and the tail of {w} leaves the minimizer set"
        )
    return best


def gap_constant(
    spec: PotentialSpec, gs: GroundState, bm: BarrierMatrix, a: float, b: float
) -> float:
    """h(a, b) - alpha - H(a^inf, b^inf); zero by convention when a == b."""
    _check_anchor(a, b)
    if not gs.contains(b):
        raise SourceNotInAubryError(f"Target {b} is not a diagonal minimizer")
    if a == b:
        return 0.0
    return float(evaluate(spec, a, b)) - gs.alpha - peierls_fixed(bm, gs, a, b)


def integral_barrier(
    spec: PotentialSpec, gs: GroundState, a: float, b: float, quad_n: int
) -> float:
    """
    Simpson quadrature of x -> D2 h(x, x) from a to b, valid when [a, b]
    stays inside one minimizer component of a C^1 potential.
    """
    _check_anchor(a, b)
    if spec.abs_weight > 0:
        raise HypothesisError("integral_barrier needs a potential without |x - y| term")
    lo, hi = min(a, b), max(a, b)
    component = gs.component_index(lo)
    if component is None or component != gs.component_index(hi):
        raise HypothesisError(f"[{lo}, {hi}] leaves the minimizer component")
    if a == b:
        return 0.0
    if quad_n < 2:
        raise DomainError("quad_n must be >= 2")

    x = np.linspace(a, b, quad_n + 1)
    return float(simpson(d2(spec, x, x), x=x))


def brute_mane_oracle(
    spec: PotentialSpec,
    gs: GroundState,
    grid_n: int,
    max_len: int,
    a: float,
    b: float,
) -> float:
    """
    Cheapest reduced cost over every grid path a -> b of length 1..max_len,
    by enumerating all of them. Test oracle for build_barrier(max_len=...).
    """
    if grid_n > ORACLE_MAX_GRID_N or max_len > ORACLE_MAX_LEN:
        raise InstanceSizeError(
            f"Oracle limited to grid_n <= {ORACLE_MAX_GRID_N} and "
            f"max_len <= {ORACLE_MAX_LEN}, got {grid_n} and {max_len}"
        )
    if grid_n < 1 or max_len < 1:
        raise DomainError("grid_n and max_len must be positive")
    _check_anchor(a, b)

    cost = cost_matrix(spec, _grid(grid_n), gs.alpha)
    source, target = round(a * grid_n), round(b * grid_n)

    best = cost[source, target]
    # walks[z_1, ..., z_k] = cost of x_source -> z_1 -> ... -> z_k
    walks = cost[source]
    for _ in range(max_len - 1):
        best = min(best, float(np.min(walks + cost[:, target])))
        walks = walks[..., None] + cost
    return float(best)


def min_periodic_action(
    spec: PotentialSpec,
    gs: GroundState,
    grid_n: int,
    period: int,
    delta: float,
) -> float:
    """
    Cheapest cycle sum over grid-periodic words of period 1..period that
    visit a point at distance >= delta from the minimizer set.

    Returns +inf when no word satisfies the distance constraint.
    """
    if grid_n > PERIODIC_MAX_GRID_N or period > PERIODIC_MAX_PERIOD:
        raise InstanceSizeError(
            f"Periodic enumeration limited to grid_n <= {PERIODIC_MAX_GRID_N} and "
            f"period <= {PERIODIC_MAX_PERIOD}, got {grid_n} and {period}"
        )
    if grid_n < 1 or period < 1:
        raise DomainError("grid_n and period must be positive")
    if delta < 0:
        raise DomainError("delta must be >= 0")

    grid = _grid(grid_n)
    cost = cost_matrix(spec, grid, gs.alpha)
    distance = gs.distance_to_minimizers(grid)

    best = math.inf
    for p in range(1, period + 1):
        word = np.indices((grid_n + 1,) * p)
        total = sum(cost[word[k], word[(k + 1) % p]] for k in range(p))
        farthest = np.max(distance[word], axis=0)
        admissible = farthest >= delta
        if np.any(admissible):
            best = min(best, float(np.min(total[admissible])))

    if math.isinf(best):
        logger.warning(
            "No periodic word of period <= %d reaches distance %g from the minimizers",
            period,
            delta,
        )
    return best


def fixed_length_gap(
    spec: PotentialSpec,
    gs: GroundState,
    bm: BarrierMatrix,
    a: float,
    b: float,
    n: int,
) -> float:
    """Cheapest n-step grid path a -> b minus H(a^inf, b^inf)."""
    if n < 1:
        raise DomainError("n must be >= 1")
    row = bm.cost[bm.index_of(a)]
    for _ in range(n - 1):
        row = np.min(row[:, None] + bm.cost, axis=0)
    return float(row[bm.index_of(b)]) - peierls_fixed(bm, gs, a, b)


def barrier_bound_defect(
    spec: PotentialSpec, gs: GroundState, bm: BarrierMatrix, anchors
) -> float:
    """Largest H(a, x_j) - L |a - x_j| over anchor sources and grid targets."""
    worst = -math.inf
    for a in anchors:
        if not gs.contains(a):
            raise SourceNotInAubryError(f"Anchor {a} is not a diagonal minimizer")
        row = bm.S[bm.index_of(a)]
        bound = spec.lipschitz_bound * np.abs(bm.grid - bm.node(a))
        worst = max(worst, float(np.max(row - bound)))
    return worst


def triangle_defect(
    bm: BarrierMatrix, samples: int | None = None, seed: int = 0
) -> float:
    """
    Largest violation of S[i, j] <= S[i, k] + S[k, j], over all triples
    when ``samples`` is None, else over that many random ones.
    """
    S = bm.S
    if samples is None:
        worst = max(
            float(np.max(S - (S[:, k, None] + S[None, k, :]))) for k in range(len(S))
        )
    else:
        rng = np.random.default_rng(seed)
        i, j, k = rng.integers(0, len(S), size=(3, samples))
        worst = float(np.max(S[i, j] - S[i, k] - S[k, j]))
    return max(worst, 0.0)


def barrier_rows(
    spec: PotentialSpec, gs: GroundState, bm: BarrierMatrix, anchors
) -> list[tuple]:
    """Rows (a, b, S, H, gap) over ordered anchor pairs."""
    return [
        (
            a,
            b,
            bm.value(a, b),
            peierls_fixed(bm, gs, a, b),
            gap_constant(spec, gs, bm, a, b),
        )
        for a in anchors
        for b in anchors
    ]
