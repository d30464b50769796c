import functools
import math

import numpy as np
import pytest

from xyopt.barrier import (
    barrier_bound_defect,
    barrier_rows,
    brute_mane_oracle,
    build_barrier,
    fixed_length_gap,
    gap_constant,
    integral_barrier,
    mane_eventually_fixed,
    min_periodic_action,
    min_plus,
    peierls_fixed,
    triangle_defect,
)
from xyopt.exceptions import (
    DomainError,
    HypothesisError,
    InfiniteBarrierError,
    InstanceSizeError,
    NegativeCycleError,
    SourceNotInAubryError,
)
from xyopt.groundstate import compute_ground_state
from xyopt.models import GroundState, OrbitWord
from xyopt.potential import builtin_potential

GRID_N = 32


def barrier_for(name: str, grid_n: int = GRID_N):
    spec = builtin_potential(name)
    gs = compute_ground_state(spec, max(grid_n, 16), 1e-8)
    return spec, gs, build_barrier(spec, gs, grid_n)


@pytest.fixture(scope="module")
def rho():
    return barrier_for("rho-quadratic")


@pytest.fixture(scope="module")
def g():
    return barrier_for("example-nonclosed")


def test_min_plus_matches_definition():
    rng = np.random.default_rng(3)
    A, B = rng.normal(size=(5, 7)), rng.normal(size=(7, 4))
    expected = np.array(
        [[min(A[i, k] + B[k, j] for k in range(7)) for j in range(4)] for i in range(5)]
    )
    assert np.array_equal(min_plus(A, B, block=2), expected)


def test_rho_quadratic_barrier_matches_closed_form(rho):
    spec, gs, bm = rho
    # one-pitch steps cost 1/N^2 + 1/(2N) each
    assert peierls_fixed(bm, gs, 0.0, 1.0) == pytest.approx(0.5 + 1.0 / GRID_N)
    assert peierls_fixed(bm, gs, 1.0, 0.0) == pytest.approx(0.5 + 1.0 / GRID_N)
    assert bm.value(0.5, 0.5) == pytest.approx(0.0, abs=1e-12)


def test_barrier_matrix_fields(rho):
    _, _, bm = rho
    assert bm.grid_n == GRID_N
    assert bm.S.shape == (GRID_N + 1, GRID_N + 1)
    assert bm.neg_cycle_margin >= -bm.eps_cyc
    assert bm.eps_cyc == pytest.approx(10 * bm.lipschitz_bound / GRID_N)
    assert bm.rounds >= 1
    assert bm.max_len is None
    assert bm.index_of(0.49) == round(0.49 * GRID_N)
    assert bm.node(1.2) == 1.0


def test_relaxed_matrix_satisfies_triangle_inequality(rho, g):
    for _, _, bm in (rho, g):
        assert triangle_defect(bm) <= 1e-9
        assert triangle_defect(bm, samples=1000, seed=7) <= 1e-9


def test_negative_cycle_is_rejected():
    spec = builtin_potential("rho-quadratic")
    wrong = GroundState(alpha=1.0, components=((0.0, 1.0),), tolerance=1e-8, grid_n=16)
    with pytest.raises(NegativeCycleError):
        build_barrier(spec, wrong, 16)


def test_build_barrier_arguments():
    spec = builtin_potential("rho-quadratic")
    gs = compute_ground_state(spec, 16, 1e-8)
    with pytest.raises(DomainError):
        build_barrier(spec, gs, 8)
    with pytest.raises(DomainError):
        build_barrier(spec, gs, 8, max_len=0)
    bounded = build_barrier(spec, gs, 8, max_len=3)
    assert bounded.rounds == 2
    assert bounded.max_len == 3


def test_peierls_requires_source_in_minimizer_set(g):
    _, gs, bm = g
    with pytest.raises(SourceNotInAubryError):
        peierls_fixed(bm, gs, 0.5, 0.0)
    with pytest.raises(DomainError):
        peierls_fixed(bm, gs, 0.0, 1.5)


def test_mane_exact_orbit_branch(g):
    spec, gs, bm = g
    word = OrbitWord((1.0,), (0.0,))
    # one step 1 -> 0 costs h(1, 0) - alpha = 2
    assert mane_eventually_fixed(bm, gs, spec, word, OrbitWord.constant(0.0)) == (
        pytest.approx(2.0, abs=1e-9)
    )


def test_mane_tail_branch(g):
    spec, gs, bm = g
    value = mane_eventually_fixed(
        bm, gs, spec, OrbitWord.constant(0.0), OrbitWord.constant(1.0)
    )
    assert value == pytest.approx(bm.value(0.0, 1.0))


def test_mane_without_finite_branch(g):
    spec, gs, bm = g
    with pytest.raises(InfiniteBarrierError):
        mane_eventually_fixed(
            bm, gs, spec, OrbitWord.constant(1.0), OrbitWord.constant(0.0)
        )


def test_gap_constant(rho, g):
    spec, gs, bm = rho
    assert gap_constant(spec, gs, bm, 0.3, 0.3) == 0.0
    # h(0, 1) = 1.5 against a barrier close to 1/2
    assert gap_constant(spec, gs, bm, 0.0, 1.0) == pytest.approx(
        1.0 - 1.0 / GRID_N, abs=1e-9
    )

    spec, gs, bm = g
    with pytest.raises(SourceNotInAubryError):
        gap_constant(spec, gs, bm, 0.0, 0.5)


def test_fixed_length_gap_is_positive(rho):
    spec, gs, bm = rho
    assert fixed_length_gap(spec, gs, bm, 0.0, 1.0, 1) > 0.9
    assert fixed_length_gap(spec, gs, bm, 0.0, 0.5, 4) > 0.0
    with pytest.raises(DomainError):
        fixed_length_gap(spec, gs, bm, 0.0, 0.5, 0)


def test_integral_barrier_vanishes_on_a_flat_well():
    spec = builtin_potential("flat-well")
    gs = compute_ground_state(spec, 64, 1e-8)
    assert integral_barrier(spec, gs, 0.3, 0.7, 512) == pytest.approx(0.0, abs=1e-12)
    left, right = gs.components[0]
    assert abs(integral_barrier(spec, gs, left, right, 512)) <= 1e-9


def test_integral_barrier_hypotheses():
    rho_spec = builtin_potential("rho-quadratic")
    rho_gs = compute_ground_state(rho_spec, 32, 1e-8)
    with pytest.raises(HypothesisError):
        integral_barrier(rho_spec, rho_gs, 0.0, 1.0, 64)

    spec = builtin_potential("two-well")
    gs = compute_ground_state(spec, 64, 1e-8)
    with pytest.raises(HypothesisError):
        integral_barrier(spec, gs, 0.2, 0.8, 64)
    assert integral_barrier(spec, gs, 0.2, 0.2, 64) == 0.0


@pytest.mark.parametrize("name", ["example-nonclosed", "rho-quadratic", "two-well"])
def test_dynamic_programming_agrees_with_enumeration(name):
    spec = builtin_potential(name)
    gs = compute_ground_state(spec, 64, 1e-8)
    bounded = build_barrier(spec, gs, 8, max_len=4)
    for a in bounded.grid:
        for b in bounded.grid:
            oracle = brute_mane_oracle(spec, gs, 8, 4, a, b)
            assert bounded.value(a, b) == pytest.approx(oracle, abs=1e-9)


def test_oracle_instance_limits(g):
    spec, gs, _ = g
    with pytest.raises(InstanceSizeError):
        brute_mane_oracle(spec, gs, 12, 3, 0.0, 1.0)
    with pytest.raises(InstanceSizeError):
        brute_mane_oracle(spec, gs, 8, 7, 0.0, 1.0)


def test_periodic_action_is_nonnegative(g):
    spec, gs, _ = g
    assert min_periodic_action(spec, gs, 8, 3, 0.0) == pytest.approx(0.0, abs=1e-12)
    assert min_periodic_action(spec, gs, 8, 3, 0.3) > 0.0


def test_periodic_action_without_admissible_word(rho):
    spec, gs, _ = rho
    assert math.isinf(min_periodic_action(spec, gs, 8, 2, 0.1))
    with pytest.raises(InstanceSizeError):
        min_periodic_action(spec, gs, 30, 2, 0.0)
    with pytest.raises(DomainError):
        min_periodic_action(spec, gs, 8, 2, -0.1)


def test_barrier_bound(rho, g):
    spec, gs, bm = rho
    anchors = [0.0, 0.25, 0.5, 0.75, 1.0]
    assert barrier_bound_defect(spec, gs, bm, anchors) <= bm.eps_cyc

    spec, gs, bm = g
    with pytest.raises(SourceNotInAubryError):
        barrier_bound_defect(spec, gs, bm, [0.5])


def test_barrier_rows(rho):
    spec, gs, bm = rho
    rows = barrier_rows(spec, gs, bm, [0.0, 1.0])
    assert [(a, b) for a, b, *_ in rows] == [
        (0.0, 0.0),
        (0.0, 1.0),
        (1.0, 0.0),
        (1.0, 1.0),
    ]
    a, b, S, H, gap = rows[1]
    assert S == H == pytest.approx(0.5 + 1.0 / GRID_N)
    assert gap > 0


@functools.cache
def barrier_on(name: str, grid_n: int):
    return barrier_for(name, grid_n)


@pytest.mark.parametrize(
    "name, source", [("example-nonclosed", None), ("rho-quadratic", 0.5)]
)
def test_barrier_differences_shrink_under_doubling(name, source):
    values = []
    for grid_n in (64, 128, 256):
        _, gs, bm = barrier_on(name, grid_n)
        a = gs.components[0][0] if source is None else source
        values.append(peierls_fixed(bm, gs, a, 1.0 / 3.0))
    assert abs(values[2] - values[1]) < abs(values[1] - values[0])


@pytest.mark.parametrize("grid_n", [64, 128])
def test_rho_quadratic_matrix_converges_on_shared_nodes(grid_n):
    _, _, coarse = barrier_on("rho-quadratic", grid_n)
    _, _, fine = barrier_on("rho-quadratic", 2 * grid_n)
    # S_N(a, b) = |b - a| / 2 + |b - a| / N between nodes
    difference = np.max(np.abs(coarse.S - fine.S[::2, ::2]))
    assert difference == pytest.approx(0.5 / grid_n, abs=1e-9)
