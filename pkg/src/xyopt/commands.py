"""
Command runners behind the xyopt subcommands.

Each runner takes a validated RunConfig, drives the computational modules,
writes its CSV/JSON files into ``config.output_dir`` and returns a
CommandOutcome. Errors surface as ConfigError or ComputationError; mapping
them to exit codes is left to ``main``.
"""

import logging
from dataclasses import dataclass, field
from pathlib import Path

from .aubry import (
    build_quotient,
    classes_summary,
    quotient_rows,
    quotient_vs_components,
)
from .barrier import barrier_rows, build_barrier
from .exceptions import ConfigError
from .groundstate import aubry_fixed_points, compute_ground_state, ground_state_rows
from .helpers import ensure_output_dir, format_cell, write_csv, write_json
from .mane import cross_validate, load_words
from .models import CheckResult, GroundState, PotentialSpec, RunConfig
from .potential import h4_certificate, load_potential, twist_check
from .setup_logging import set_run_context
from .subaction import solve_calibrated, subaction_rows
from .verifier import acceptance_report, run_acceptance

logger = logging.getLogger(__name__)

GROUNDSTATE_HEADER = ["a", "h(a,a)", "in_m"]
BARRIER_HEADER = ["a", "b", "S", "H", "gap"]
SUBACTION_HEADER = ["x", "v", "calibration_gap"]
QUOTIENT_HEADER = ["a", "b", "delta", "same_component", "same_class"]
VERDICTS_HEADER = [
    "word",
    "predicted",
    "observed",
    "agrees",
    "worst_defect",
    "worst_i",
    "worst_j",
]


@dataclass
class CommandOutcome:
    files: list[Path]
    summary: str
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def failed_checks(self) -> list[str]:
        return [c.name for c in self.checks if not c.passed]


def _load(config: RunConfig) -> PotentialSpec:
    spec = load_potential(config.potential)
    set_run_context(potential=spec.name, grid_n=config.grid_n)
    return spec


def _prepare(config: RunConfig) -> tuple[PotentialSpec, GroundState, Path]:
    spec = _load(config)
    out = ensure_output_dir(config.output_dir)
    gs = compute_ground_state(spec, config.grid_n, config.refine_tol)
    return spec, gs, out


def cmd_analyze(config: RunConfig) -> CommandOutcome:
    spec, gs, out = _prepare(config)
    anchors = aubry_fixed_points(gs, config.spacing)
    summary = {
        "potential": spec,
        "alpha": gs.alpha,
        "components": [[left, right] for left, right in gs.components],
        "tolerance": gs.tolerance,
        "anchors": anchors,
        "lipschitz_bound": spec.lipschitz_bound,
        "h4_certificate": h4_certificate(spec),
        "twist": twist_check(spec, 64),
        "config": config,
    }
    files = [
        write_csv(
            out / "groundstate.csv", GROUNDSTATE_HEADER, ground_state_rows(spec, gs)
        ),
        write_json(out / "summary.json", summary),
    ]
    return CommandOutcome(
        files,
        f"alpha = {format_cell(gs.alpha)}, {len(gs.components)} component(s), "
        f"{len(anchors)} anchor(s)",
    )


def cmd_barrier(config: RunConfig) -> CommandOutcome:
    spec, gs, out = _prepare(config)
    bm = build_barrier(spec, gs, config.grid_n)
    anchors = aubry_fixed_points(gs, config.spacing)

    matrix_rows = ((x, *bm.S[i]) for i, x in enumerate(bm.grid))
    files = [
        write_csv(
            out / "barrier.csv", BARRIER_HEADER, barrier_rows(spec, gs, bm, anchors)
        ),
        write_csv(
            out / "barrier_matrix.csv",
            ["x", *(format_cell(x) for x in bm.grid)],
            matrix_rows,
        ),
    ]
    return CommandOutcome(
        files,
        f"{len(anchors)} anchor(s), {bm.rounds} relaxation round(s), "
        f"negative-cycle margin {format_cell(bm.neg_cycle_margin)}",
    )


def cmd_subaction(config: RunConfig) -> CommandOutcome:
    spec, gs, out = _prepare(config)
    sub = solve_calibrated(
        spec, gs, config.grid_n, config.max_iters, config.tol_subaction
    )
    files = [write_csv(out / "subaction.csv", SUBACTION_HEADER, subaction_rows(sub))]
    state = "converged" if sub.converged else "did not converge"
    return CommandOutcome(
        files,
        f"value iteration {state} after {sub.iterations} sweep(s), "
        f"residual {format_cell(sub.calibration_residual)}",
    )


def cmd_quotient(config: RunConfig) -> CommandOutcome:
    spec, gs, out = _prepare(config)
    bm = build_barrier(spec, gs, config.grid_n)
    q = build_quotient(spec, gs, bm, config.spacing, config.eps_class)

    classes = classes_summary(q)
    classes["verdicts"] = quotient_vs_components(q, spec)
    files = [
        write_csv(out / "quotient.csv", QUOTIENT_HEADER, quotient_rows(q)),
        write_json(out / "classes.json", classes),
    ]
    return CommandOutcome(
        files,
        f"{len(q.anchors)} anchor(s) in {len(q.classes)} class(es) "
        f"over {len(q.components)} component(s)",
    )


def cmd_semistatic(config: RunConfig) -> CommandOutcome:
    if config.words is None:
        raise ConfigError("semistatic needs a words file; use --words")
    words = load_words(config.words)
    spec = _load(config)
    out = ensure_output_dir(config.output_dir)

    rows = []
    if words:
        gs = compute_ground_state(spec, config.grid_n, config.refine_tol)
        bm = build_barrier(spec, gs, config.grid_n)
        table = cross_validate(spec, gs, bm, words, config.tol_subaction)
        rows = [
            (
                v.word,
                v.predicted,
                v.observed,
                v.agrees,
                v.worst_defect,
                *(v.worst_pair if v.worst_pair else ("", "")),
            )
            for v in table.verdicts
        ]
    else:
        logger.info("Words file %s is empty", config.words)

    files = [write_csv(out / "verdicts.csv", VERDICTS_HEADER, rows)]
    disagreements = sum(1 for row in rows if not row[3])
    return CommandOutcome(
        files, f"{len(rows)} word(s), {disagreements} disagreement(s)"
    )


def cmd_verify(config: RunConfig) -> CommandOutcome:
    spec = _load(config)
    out = ensure_output_dir(config.output_dir)
    results = run_acceptance(spec, config)
    report = acceptance_report(spec, results)
    report["config"] = config
    files = [write_json(out / "report.json", report)]

    failed = report["failed"]
    return CommandOutcome(
        files,
        f"{len(results) - len(failed)} of {len(results)} check(s) passed",
        checks=results,
    )


COMMANDS = {
    "analyze": cmd_analyze,
    "barrier": cmd_barrier,
    "subaction": cmd_subaction,
    "quotient": cmd_quotient,
    "semistatic": cmd_semistatic,
    "verify": cmd_verify,
}
