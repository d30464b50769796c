"""
Aubry set on a finite anchor cover, the symmetrized barrier
delta(a, b) = H(a, b) + H(b, a) and the quotient it induces.
"""

import logging

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .constants import WORD_TRUNCATION
from .exceptions import DomainError, FamilyError
from .groundstate import aubry_fixed_points
from .mane import word_distance
from .models import (
    BarrierMatrix,
    ComponentVerdict,
    DiagonalScanReport,
    GroundState,
    OrbitWord,
    PotentialSpec,
    PseudoMetricReport,
    QuotientStructure,
)
from .potential import (
    diagonal_profile,
    interval_equivalence_defect,
    is_rho_family,
    rho_closed_form_barrier,
)

logger = logging.getLogger(__name__)

# Anchors are component endpoints found by bisection; allow for that rounding.
COMPONENT_SLACK = 1e-9


def _hausdorff(left: tuple[float, float], right: tuple[float, float]) -> float:
    return max(abs(left[0] - right[0]), abs(left[1] - right[1]))


def build_quotient(
    spec: PotentialSpec,
    gs: GroundState,
    bm: BarrierMatrix,
    spacing: float,
    eps_class: float | None = None,
) -> QuotientStructure:
    """
    Cover the minimizer set with anchors, symmetrize the barrier between
    them and cluster by the transitive closure of delta <= eps_class.

    ``eps_class`` defaults to max(4 eps_diag, 2 / N) where eps_diag is the
    largest |S[a][a]| over the anchors.
    """
    anchors = aubry_fixed_points(gs, spacing)
    index = [bm.index_of(a) for a in anchors]
    barrier = bm.S[np.ix_(index, index)]
    delta = barrier + barrier.T
    eps_diag = float(np.max(np.abs(np.diag(barrier))))

    if eps_class is None:
        eps_class = max(4.0 * eps_diag, 2.0 / bm.grid_n)
    elif eps_class < 4.0 * eps_diag:
        raise DomainError(
            f"eps_class={eps_class:.3g} is below 4 eps_diag={4.0 * eps_diag:.3g}"
        )

    _, labels = connected_components(
        csr_matrix(delta <= eps_class), directed=False, return_labels=True
    )
    order = {}
    for label in labels:
        order.setdefault(int(label), len(order))
    class_of = tuple(order[int(label)] for label in labels)
    classes = tuple(
        tuple(i for i, c in enumerate(class_of) if c == k) for k in range(len(order))
    )

    component_of = tuple(gs.component_index(a, COMPONENT_SLACK) for a in anchors)
    hausdorff = np.array(
        [
            [_hausdorff(gs.components[i], gs.components[j]) for j in component_of]
            for i in component_of
        ]
    )

    logger.info(
        "Quotient over %d anchor(s): %d class(es), %d component(s), eps_class=%.3g",
        len(anchors),
        len(classes),
        len(gs.components),
        eps_class,
    )
    return QuotientStructure(
        anchors=tuple(anchors),
        nodes=tuple(bm.node(a) for a in anchors),
        delta=delta,
        classes=classes,
        class_of=class_of,
        component_of=component_of,
        hausdorff=hausdorff,
        components=gs.components,
        eps_class=float(eps_class),
        eps_diag=eps_diag,
    )


def aubry_isometry_check(
    gs: GroundState,
    bm: BarrierMatrix,
    spacing: float = 0.05,
    truncation: int = WORD_TRUNCATION,
) -> float:
    """
    Largest |d_X(a^inf, b^inf) - |a - b|| over anchor pairs, measured on the
    truncated series and net of its 2^-truncation tail bound.
    """
    nodes = [bm.node(a) for a in aubry_fixed_points(gs, spacing)]
    worst = 0.0
    for i, a in enumerate(nodes):
        for b in nodes[i + 1 :]:
            value, bound = word_distance(
                OrbitWord.constant(a), OrbitWord.constant(b), truncation
            )
            worst = max(worst, abs(value - abs(a - b)) - bound)
    return max(worst, 0.0)


def quotient_vs_components(
    q: QuotientStructure,
    spec: PotentialSpec,
    samples: int = 5,
    defect_tol: float = 1e-6,
) -> list[ComponentVerdict]:
    """
    Verdict per anchor pair. Distinct components must be inequivalent. A
    shared component must collapse when the interval-equivalence defect
    vanishes at interior points between the anchors; otherwise the pair is
    exempt and carries the closed-form delta when one is known.
    """
    closed_form = is_rho_family(spec)
    verdicts = []
    for i, j in q.pairs():
        a, b = q.anchors[i], q.anchors[j]
        delta = float(q.delta[i, j])

        if not q.same_component(i, j):
            margin = delta - q.eps_class
            verdicts.append(
                ComponentVerdict(a, b, False, "inequivalent", delta, margin, margin > 0)
            )
            continue

        interior = np.linspace(min(a, b), max(a, b), samples + 2)[1:-1]
        defect = np.max(np.abs(interval_equivalence_defect(spec, interior)))
        if defect <= defect_tol:
            margin = q.eps_class - delta
            verdicts.append(
                ComponentVerdict(a, b, True, "equivalent", delta, margin, margin >= 0)
            )
        else:
            expected = (
                rho_closed_form_barrier(spec, a, b)
                + rho_closed_form_barrier(spec, b, a)
                if closed_form
                else None
            )
            verdicts.append(
                ComponentVerdict(a, b, True, "exempt", delta, 0.0, True, expected)
            )
    return verdicts


def isometry_to_interval_check(q: QuotientStructure, spec: PotentialSpec) -> float:
    """Largest |delta(a, b) - |a - b|| over anchor pairs of a rho-family potential."""
    if not is_rho_family(spec):
        raise FamilyError(f"{spec.name} is not of the form rho(x - y) + |x - y| / 2")
    anchors = np.asarray(q.anchors)
    return float(np.max(np.abs(q.delta - np.abs(anchors[:, None] - anchors[None, :]))))


def pseudo_metric_defects(q: QuotientStructure) -> PseudoMetricReport:
    delta = q.delta
    triangle = max(
        (
            float(np.max(delta - (delta[:, k, None] + delta[None, k, :])))
            for k in range(len(delta))
        ),
        default=0.0,
    )
    return PseudoMetricReport(
        symmetry=float(np.max(np.abs(delta - delta.T))),
        negativity=max(-float(np.min(delta)), 0.0),
        diagonal=float(np.max(np.abs(np.diag(delta)))),
        triangle=max(triangle, 0.0),
    )


def quotient_lipschitz_defect(q: QuotientStructure, spec: PotentialSpec) -> float:
    """Largest delta(a, b) - 2 L |a - b| over the snapped anchor nodes, floored at 0."""
    nodes = np.asarray(q.nodes)
    bound = 2.0 * spec.lipschitz_bound * np.abs(nodes[:, None] - nodes[None, :])
    return max(float(np.max(q.delta - bound)), 0.0)


def aubry_diagonal_scan(
    spec: PotentialSpec,
    gs: GroundState,
    bm: BarrierMatrix,
    spacing: float = 0.05,
    samples: int = 50,
    seed: int = 0,
    level: float = 0.05,
    floor: float = 0.04,
) -> DiagonalScanReport:
    """
    Anchors must satisfy |S[a][a]| <= eps_cyc; grid nodes whose diagonal value
    exceeds alpha + level must keep S[x][x] >= floor.
    """
    anchors = aubry_fixed_points(gs, spacing)
    anchor_worst = max(abs(float(bm.S[i, i])) for i in map(bm.index_of, anchors))

    profile = diagonal_profile(spec, bm.grid)
    candidates = np.flatnonzero(profile >= gs.alpha + level)
    if len(candidates):
        rng = np.random.default_rng(seed)
        size = min(samples, len(candidates))
        chosen = rng.choice(candidates, size=size, replace=False)
        sample_minimum = float(np.min(bm.S[chosen, chosen]))
    else:
        chosen, sample_minimum = candidates, float("inf")

    return DiagonalScanReport(
        anchor_worst=anchor_worst,
        anchors_pass=anchor_worst <= bm.eps_cyc,
        sample_count=len(chosen),
        sample_minimum=sample_minimum,
        samples_pass=sample_minimum >= floor,
    )


def quotient_rows(q: QuotientStructure) -> list[tuple]:
    """Rows (a, b, delta, same_component, same_class) over anchor pairs i < j."""
    return [
        (
            q.anchors[i],
            q.anchors[j],
            float(q.delta[i, j]),
            int(q.same_component(i, j)),
            int(q.same_class(i, j)),
        )
        for i, j in q.pairs()
    ]


def classes_summary(q: QuotientStructure) -> dict:
    return {
        "eps_class": q.eps_class,
        "eps_diag": q.eps_diag,
        "components": [list(c) for c in q.components],
        "classes": [
            {
                "anchors": [q.anchors[i] for i in members],
                "components": sorted({q.component_of[i] for i in members}),
            }
            for members in q.classes
        ],
    }
