"""
Runs the acceptance checks that apply to a potential and renders the results.
"""

import logging
from time import time

from tabulate import tabulate
from termcolor import colored

from ..models import CheckResult, PotentialSpec, RunConfig
from .checks import checks_for
from .context import VerificationContext

logger = logging.getLogger(__name__)


def run_acceptance(spec: PotentialSpec, config: RunConfig) -> list[CheckResult]:
    """Run every check registered for ``spec.name`` against one shared context."""
    context = VerificationContext(spec, config)
    results: list[CheckResult] = []
    for check in checks_for(spec.name):
        started = time()
        measured = list(check.run(context))
        logger.info(
            "Check %s: %d measurement(s) in %.2fs",
            check.name,
            len(measured),
            time() - started,
        )
        for result in measured:
            if not result.passed:
                logger.warning(
                    "%s failed: %.6g %s %.6g",
                    result.name,
                    result.value,
                    result.relation,
                    result.threshold,
                )
        results.extend(measured)
    return results


def acceptance_report(spec: PotentialSpec, results: list[CheckResult]) -> dict:
    failed = [r.name for r in results if not r.passed]
    return {
        "potential": spec,
        "passed": not failed,
        "failed": failed,
        "checks": results,
    }


def _status(result: CheckResult) -> str:
    if result.passed:
        return colored("PASS", "light_green")
    return colored("FAIL", "light_red")


def format_check_table(results: list[CheckResult]) -> str:
    headers = [
        colored(h, "blue", attrs=["bold"])
        for h in ["Check", "Value", "Threshold", "Margin", "Result"]
    ]
    table_data = [
        [
            colored(r.name, None, attrs=["bold"]),
            f"{r.value:.6g}",
            f"{r.relation} {r.threshold:.6g}",
            f"{r.margin:.3g}",
            _status(r),
        ]
        for r in results
    ]
    return tabulate(table_data, headers=headers, tablefmt="fancy_grid") + "\n"
