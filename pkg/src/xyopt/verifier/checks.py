"""
Acceptance checks run by ``xyopt verify``.

A check registered without potential names runs for every potential; the
others only run for the listed built-ins. Every check yields one or more
``CheckResult`` measurements.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from ..aubry import (
    aubry_diagonal_scan,
    isometry_to_interval_check,
    pseudo_metric_defects,
)
from ..barrier import (
    barrier_bound_defect,
    brute_mane_oracle,
    build_barrier,
    gap_constant,
    integral_barrier,
    min_periodic_action,
    peierls_fixed,
    triangle_defect,
)
from ..constants import (
    H3_STRICT_MARGIN,
    NEG_CYCLE_FACTOR,
    ORACLE_MAX_LEN,
    PERIODIC_MAX_GRID_N,
    PERIODIC_MAX_PERIOD,
)
from ..mane import cross_validate, semistatic_check
from ..models import CheckResult, OrbitWord
from ..potential import (
    h3_check,
    h4_certificate,
    interval_equivalence_defect,
    rho_closed_form_barrier,
)
from ..subaction import class_consistency_check, reconstruct
from .context import VerificationContext

logger = logging.getLogger(__name__)

TRIANGLE_SAMPLES = 100_000
H3_SAMPLES = 10_000
ORACLE_GRID_N = 8
CALIBRATION_THRESHOLD = 1e-7
ISOMETRY_THRESHOLD = 0.03
CLOSED_FORM_THRESHOLD = 0.02
WITHIN_WELL_THRESHOLD = 0.02
INTEGRAL_THRESHOLD = 1e-9
SEPARATION_FACTOR = 10.0
OFF_MINIMIZER_FLOOR = 0.04

# delta used for the periodic gap; two-well never gets 0.3 away from its wells
PERIODIC_GAP_DELTA = {"example-nonclosed": 0.3, "two-well": 0.15}

CURATED_WORDS = {
    "example-nonclosed": (
        OrbitWord.constant(0.0),
        OrbitWord.constant(1.0),
        OrbitWord.constant(0.7),
        OrbitWord((0.9, 0.5, 0.3), (0.0,)),
        OrbitWord((0.3, 0.7), (0.0,)),
        OrbitWord((0.6, 0.2), (0.0,)),
        OrbitWord((1.0,), (0.0,)),
        OrbitWord((), (0.0, 1.0)),
        OrbitWord((), (0.2, 0.8)),
        OrbitWord((0.4,), (0.5, 0.9)),
    ),
    "rho-quadratic": (
        *(OrbitWord.constant(c) for c in (0.0, 0.25, 0.5, 0.75, 1.0)),
        OrbitWord((0.9, 0.1), (0.4,)),
        OrbitWord((), (0.2, 0.8)),
        OrbitWord((), (0.5, 0.565)),
    ),
    "two-well": (
        OrbitWord.constant(0.2),
        OrbitWord.constant(0.8),
        OrbitWord((0.5,), (0.2,)),
        OrbitWord.constant(0.5),
        OrbitWord((), (0.2, 0.8)),
    ),
}


@dataclass(frozen=True)
class Check:
    name: str
    run: Callable[[VerificationContext], Iterable[CheckResult]]
    potentials: tuple[str, ...] | None = None

    def applies_to(self, potential_name: str) -> bool:
        return self.potentials is None or potential_name in self.potentials


CHECKS: list[Check] = []


def check(name: str, *potentials: str):
    """Register the decorated function as an acceptance check."""

    def decorator(func):
        CHECKS.append(Check(name, func, potentials or None))
        return func

    return decorator


def checks_for(potential_name: str) -> list[Check]:
    return [c for c in CHECKS if c.applies_to(potential_name)]


# checks for every potential


@check("quadrangle")
def _quadrangle(ctx: VerificationContext):
    if h4_certificate(ctx.spec) != "twist":
        return
    report = h3_check(ctx.spec, H3_SAMPLES, ctx.config.seed)
    yield CheckResult("quadrangle", report.worst_margin, H3_STRICT_MARGIN, ">")


@check("barrier-triangle")
def _barrier_triangle(ctx: VerificationContext):
    value = triangle_defect(ctx.bm, TRIANGLE_SAMPLES, ctx.config.seed)
    yield CheckResult("barrier-triangle", value, ctx.bm.eps_num)


@check("barrier-bound")
def _barrier_bound(ctx: VerificationContext):
    value = barrier_bound_defect(ctx.spec, ctx.gs, ctx.bm, ctx.anchors)
    yield CheckResult("barrier-bound", value, ctx.bm.eps_cyc)


@check("periodic-positivity")
def _periodic_positivity(ctx: VerificationContext):
    value = min_periodic_action(
        ctx.spec, ctx.gs, PERIODIC_MAX_GRID_N, PERIODIC_MAX_PERIOD, 0.0
    )
    eps_cyc = NEG_CYCLE_FACTOR * ctx.spec.lipschitz_bound / PERIODIC_MAX_GRID_N
    yield CheckResult("periodic-positivity", value, -eps_cyc, ">=")


@check("oracle-agreement")
def _oracle_agreement(ctx: VerificationContext):
    small = build_barrier(ctx.spec, ctx.gs, ORACLE_GRID_N, max_len=ORACLE_MAX_LEN)
    worst = max(
        abs(
            small.S[i, j]
            - brute_mane_oracle(
                ctx.spec, ctx.gs, ORACLE_GRID_N, ORACLE_MAX_LEN, a, b
            )
        )
        for i, a in enumerate(small.grid)
        for j, b in enumerate(small.grid)
    )
    yield CheckResult("oracle-agreement", worst, 1e-9)


@check("calibration")
def _calibration(ctx: VerificationContext):
    yield CheckResult(
        "calibration-residual", ctx.sub.calibration_residual, CALIBRATION_THRESHOLD
    )
    yield CheckResult(
        "subaction-defect", ctx.sub.subaction_defect, CALIBRATION_THRESHOLD
    )


@check("aubry-diagonal")
def _aubry_diagonal(ctx: VerificationContext):
    report = aubry_diagonal_scan(
        ctx.spec, ctx.gs, ctx.bm, ctx.config.spacing, seed=ctx.config.seed
    )
    yield CheckResult("aubry-anchor-loops", report.anchor_worst, ctx.bm.eps_cyc)
    yield CheckResult(
        "off-minimizer-loops", report.sample_minimum, OFF_MINIMIZER_FLOOR, ">="
    )


@check("anchors-semistatic")
def _anchors_semistatic(ctx: VerificationContext):
    failures = sum(
        not semistatic_check(
            ctx.spec, ctx.gs, ctx.bm, OrbitWord.constant(a), ctx.config.tol_subaction
        ).passes
        for a in ctx.anchors
    )
    yield CheckResult("anchors-semistatic", failures, 0)


@check("pseudo-metric")
def _pseudo_metric(ctx: VerificationContext):
    report = pseudo_metric_defects(ctx.quotient)
    worst = max(report.symmetry, report.negativity, report.triangle)
    yield CheckResult("pseudo-metric", worst, ctx.bm.eps_num)
    yield CheckResult(
        "pseudo-metric-diagonal", report.diagonal, 2.0 * ctx.bm.eps_cyc
    )


# built-in specific checks


@check("mane-cross-validation", *CURATED_WORDS)
def _mane_cross_validation(ctx: VerificationContext):
    table = cross_validate(
        ctx.spec,
        ctx.gs,
        ctx.bm,
        CURATED_WORDS[ctx.spec.name],
        ctx.config.tol_subaction,
    )
    yield CheckResult("mane-disagreements", table.disagreements, 0)


@check("isometry", "rho-quadratic", "rho-quartic", "remark-nonsmooth")
def _isometry(ctx: VerificationContext):
    value = isometry_to_interval_check(ctx.quotient, ctx.spec)
    yield CheckResult("isometry", value, ISOMETRY_THRESHOLD)


@check("barrier-closed-form", "rho-quadratic", "rho-quartic")
def _barrier_closed_form(ctx: VerificationContext):
    for a, b in ((0.0, 1.0), (1.0, 0.0)):
        value = abs(
            peierls_fixed(ctx.bm, ctx.gs, a, b)
            - rho_closed_form_barrier(ctx.spec, a, b)
        )
        yield CheckResult(f"barrier H({a:g}, {b:g})", value, CLOSED_FORM_THRESHOLD)
    gap = gap_constant(ctx.spec, ctx.gs, ctx.bm, 0.0, 1.0)
    yield CheckResult("gap-constant", gap, 0.0, ">")


@check("nonsmooth-ground-state", "remark-nonsmooth")
def _nonsmooth_ground_state(ctx: VerificationContext):
    yield CheckResult("optimal-average", abs(ctx.gs.alpha - 1.0), 1e-6)
    components = ctx.gs.components
    spread = (
        max(abs(components[0][0]), abs(components[0][1] - 1.0))
        if len(components) == 1
        else np.inf
    )
    yield CheckResult("minimizer-interval", spread, 1.0 / ctx.config.grid_n)
    interior = np.linspace(0.1, 0.9, 9)
    defect = interval_equivalence_defect(ctx.spec, interior)
    worst = float(np.max(np.abs(defect - 1.0)))
    yield CheckResult("equivalence-defect", worst, 1e-12)


@check("nonclosed-ground-state", "example-nonclosed")
def _nonclosed_ground_state(ctx: VerificationContext):
    yield CheckResult("optimal-average", abs(ctx.gs.alpha), 1e-6)
    components = ctx.gs.components
    offset = (
        abs(components[0][0])
        if len(components) == 1 and ctx.gs.is_point_component(0)
        else np.inf
    )
    yield CheckResult("point-minimizer", offset, 1.0 / ctx.config.grid_n)


@check("nonclosed-semistatic", "example-nonclosed")
def _nonclosed_semistatic(ctx: VerificationContext):
    tol = ctx.config.tol_subaction
    ones = semistatic_check(
        ctx.spec, ctx.gs, ctx.bm, OrbitWord((1.0, 1.0), (1.0,)), tol
    )
    yield CheckResult("semistatic 1^inf defect", ones.worst_defect, 0.9, ">=")
    zeros = semistatic_check(ctx.spec, ctx.gs, ctx.bm, OrbitWord.constant(0.0), tol)
    yield CheckResult("semistatic 0^inf defect", zeros.worst_defect, 0.01)


@check("reconstruction", "example-nonclosed")
def _reconstruction(ctx: VerificationContext):
    rebuilt = reconstruct(ctx.bm, ctx.gs, {ctx.anchors[0]: 0.0})
    difference = ctx.sub.v - rebuilt.v
    spread = float(np.max(difference) - np.min(difference))
    yield CheckResult(
        "reconstruction", spread, 2.0 * ctx.bm.eps_cyc + CALIBRATION_THRESHOLD
    )


@check("periodic-gap", *PERIODIC_GAP_DELTA)
def _periodic_gap(ctx: VerificationContext):
    delta = PERIODIC_GAP_DELTA[ctx.spec.name]
    value = min_periodic_action(
        ctx.spec, ctx.gs, PERIODIC_MAX_GRID_N, PERIODIC_MAX_PERIOD, delta
    )
    yield CheckResult(f"periodic-gap delta={delta:g}", value, 0.0, ">")


@check("well-collapse", "flat-well", "two-well")
def _well_collapse(ctx: VerificationContext):
    q = ctx.quotient
    within = max(
        (float(q.delta[i, j]) for i, j in q.pairs() if q.same_component(i, j)),
        default=0.0,
    )
    yield CheckResult("within-well delta", within, WITHIN_WELL_THRESHOLD)

    for left, right in ctx.gs.components:
        value = abs(
            integral_barrier(ctx.spec, ctx.gs, left, right, ctx.config.quad_n)
        )
        yield CheckResult(
            f"integral [{left:.4g}, {right:.4g}]", value, INTEGRAL_THRESHOLD
        )

    yield CheckResult(
        "class-count", abs(len(q.classes) - len(ctx.gs.components)), 0
    )

    pairs = [
        (q.anchors[i], q.anchors[j]) for i, j in q.pairs() if q.same_class(i, j)
    ]
    value = class_consistency_check(ctx.bm, ctx.gs, ctx.sub, pairs)
    yield CheckResult("class-consistency", value, 3.0 * ctx.bm.eps_cyc)


@check("well-separation", "two-well")
def _well_separation(ctx: VerificationContext):
    q = ctx.quotient
    within = max(
        (float(q.delta[i, j]) for i, j in q.pairs() if q.same_component(i, j)),
        default=0.0,
    )
    cross = min(
        (float(q.delta[i, j]) for i, j in q.pairs() if not q.same_component(i, j)),
        default=np.inf,
    )
    yield CheckResult("cross-well delta", cross, SEPARATION_FACTOR * within, ">=")
    a, b = (ctx.bm.node(sum(c) / 2.0) for c in ctx.gs.components[:2])
    gap = gap_constant(ctx.spec, ctx.gs, ctx.bm, a, b)
    yield CheckResult("cross-well gap", gap, 0.0, ">")
