import csv
import json
import logging
import shutil
import subprocess
import sys
import tempfile
import unittest
from logging import Logger
from pathlib import Path
from unittest import mock

from xyopt import __version__
from xyopt.constants import PATH_PROJECT_ROOT
from xyopt.exceptions import NegativeCycleError

logger: Logger = logging.getLogger(__name__)

CLI_SCRIPT = PATH_PROJECT_ROOT / "src/xyopt_cli.py"
WORDS_FILE = PATH_PROJECT_ROOT / "tests/utils/words_example_nonclosed.json"
EMPTY_WORDS_FILE = PATH_PROJECT_ROOT / "tests/utils/words_empty.yaml"


def run_cli(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, str(CLI_SCRIPT), *args],
        capture_output=True,
        text=True,
        cwd=PATH_PROJECT_ROOT,
    )


def read_rows(path: Path) -> list[list[str]]:
    with open(path, encoding="UTF-8", newline="") as f:
        return list(csv.reader(f))


class TestCLI(unittest.TestCase):
    test_dir = None

    @classmethod
    def setUpClass(cls):
        cls.test_dir = Path(tempfile.mkdtemp(prefix="xyopt_cli_tests_"))
        logger.debug("CLI outputs go to %s", cls.test_dir)

    @classmethod
    def tearDownClass(cls):
        shutil.rmtree(cls.test_dir, ignore_errors=True)

    def out_dir(self, name: str) -> str:
        return str(self.test_dir / name)

    def test_version(self):
        result = run_cli("version")
        self.assertEqual(result.returncode, 0)
        self.assertEqual(result.stdout.strip(), __version__)

    def test_no_subcommand(self):
        result = run_cli()
        self.assertEqual(result.returncode, 2)
        self.assertIn("No subcommand given", result.stdout)

    def test_autocomplete_show(self):
        result = run_cli("autocomplete", "show")
        self.assertEqual(result.returncode, 0)
        self.assertIn("_python_argcomplete", result.stdout)
        self.assertNotIn("#compdef x y o p t", result.stdout)

    def test_autocomplete_without_action(self):
        result = run_cli("autocomplete")
        self.assertEqual(result.returncode, 2)
        self.assertIn("requires an action", result.stdout)

    def test_analyze_example_nonclosed(self):
        out = self.out_dir("analyze_nonclosed")
        result = run_cli(
            "analyze", "-p", "example-nonclosed", "--grid-n", "32", "--out", out, "--ci"
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertIn("groundstate.csv", result.stdout)

        rows = read_rows(Path(out) / "groundstate.csv")
        self.assertEqual(rows[0], ["a", "h(a,a)", "in_m"])
        self.assertEqual(len(rows), 34)
        self.assertEqual(rows[1][2], "1")
        self.assertEqual(rows[-1][2], "0")

        summary = json.loads((Path(out) / "summary.json").read_text())
        self.assertAlmostEqual(summary["alpha"], 0.0, places=6)
        self.assertEqual(len(summary["components"]), 1)
        self.assertEqual(summary["h4_certificate"], "twist")
        self.assertTrue(summary["twist"]["holds"])
        self.assertEqual(summary["config"]["grid_n"], 32)

    def test_analyze_rho_quadratic_quiet(self):
        out = self.out_dir("analyze_rho")
        result = run_cli(
            "analyze", "-p", "rho-quadratic", "--grid-n", "32", "--out", out, "-q"
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        self.assertEqual(result.stdout, "")

        summary = json.loads((Path(out) / "summary.json").read_text())
        self.assertEqual(summary["components"], [[0.0, 1.0]])
        self.assertEqual(len(summary["anchors"]), 21)
        self.assertEqual(summary["h4_certificate"], "rho-convexity")
        # the |x - y| kink adds nothing off the diagonal; rho'' = 2 remains
        self.assertTrue(summary["twist"]["holds"])
        self.assertAlmostEqual(summary["twist"]["worst_value"], -2.0)

    def test_malformed_potential(self):
        result = run_cli(
            "analyze", "-p", '{"poly": [[2, 0', "--out", self.out_dir("bad"), "--ci"
        )
        self.assertEqual(result.returncode, 2)
        self.assertIn("Configuration error", result.stderr)

    def test_missing_potential(self):
        result = run_cli("analyze", "--out", self.out_dir("missing"), "--ci")
        self.assertEqual(result.returncode, 2)
        self.assertIn("No potential given", result.stderr)

    def test_grid_below_minimum(self):
        result = run_cli(
            "analyze", "-p", "two-well", "--grid-n", "8", "--out", self.out_dir("n8")
        )
        self.assertEqual(result.returncode, 2)
        self.assertIn("grid_n", result.stderr)

    def test_negative_spacing_is_rejected_by_the_parser(self):
        result = run_cli("analyze", "-p", "two-well", "--spacing", "-0.1")
        self.assertEqual(result.returncode, 2)
        self.assertIn("must be > 0", result.stderr)

    def test_missing_config_file(self):
        result = run_cli("analyze", "--config", "no/such/config.yaml")
        self.assertEqual(result.returncode, 2)
        self.assertIn("does not exist", result.stderr)

    def test_config_file_with_override(self):
        out = self.out_dir("config_override")
        config = self.test_dir / "run.yaml"
        config.write_text(
            f"potential: two-well\ngrid_n: 64\nspacing: 0.1\nout: {out}\n"
        )
        result = run_cli("analyze", "--config", str(config), "--grid-n", "32", "--ci")
        self.assertEqual(result.returncode, 0, result.stderr)
        summary = json.loads((Path(out) / "summary.json").read_text())
        self.assertEqual(summary["config"]["grid_n"], 32)
        self.assertEqual(summary["config"]["spacing"], 0.1)
        self.assertEqual(len(summary["components"]), 2)

    def test_barrier_outputs(self):
        out = self.out_dir("barrier_rho")
        result = run_cli(
            "barrier",
            "-p",
            "rho-quadratic",
            "--grid-n",
            "32",
            "--spacing",
            "0.5",
            "--out",
            out,
            "--ci",
        )
        self.assertEqual(result.returncode, 0, result.stderr)

        rows = read_rows(Path(out) / "barrier.csv")
        self.assertEqual(rows[0], ["a", "b", "S", "H", "gap"])
        # three anchors, every ordered pair
        self.assertEqual(len(rows), 1 + 9)
        by_pair = {(r[0], r[1]): float(r[3]) for r in rows[1:]}
        self.assertAlmostEqual(by_pair[("0", "1")], 0.5 + 1 / 32, places=9)

        matrix = read_rows(Path(out) / "barrier_matrix.csv")
        self.assertEqual(len(matrix), 34)
        self.assertEqual(len(matrix[0]), 34)
        self.assertEqual(matrix[0][0], "x")

    def test_subaction_output(self):
        out = self.out_dir("subaction")
        result = run_cli(
            "subaction", "-p", "example-nonclosed", "--grid-n", "32", "--out", out, "-q"
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        rows = read_rows(Path(out) / "subaction.csv")
        self.assertEqual(rows[0], ["x", "v", "calibration_gap"])
        self.assertEqual(len(rows), 34)
        self.assertEqual(float(rows[1][1]), 0.0)

    def test_quotient_outputs(self):
        out = self.out_dir("quotient")
        result = run_cli(
            "quotient",
            "-p",
            "two-well",
            "--grid-n",
            "64",
            "--spacing",
            "0.25",
            "--out",
            out,
            "--ci",
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        classes = json.loads((Path(out) / "classes.json").read_text())
        self.assertEqual(len(classes["classes"]), 2)
        self.assertTrue(all(v["holds"] for v in classes["verdicts"]))

    def test_semistatic_requires_words(self):
        result = run_cli(
            "semistatic", "-p", "example-nonclosed", "--out", self.out_dir("no_words")
        )
        self.assertEqual(result.returncode, 2)
        self.assertIn("--words", result.stderr)

    def test_semistatic_with_empty_words_file(self):
        out = self.out_dir("semistatic_empty")
        result = run_cli(
            "semistatic",
            "-p",
            "example-nonclosed",
            "--words",
            str(EMPTY_WORDS_FILE),
            "--out",
            out,
            "--ci",
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        rows = read_rows(Path(out) / "verdicts.csv")
        self.assertEqual(
            rows,
            [
                [
                    "word",
                    "predicted",
                    "observed",
                    "agrees",
                    "worst_defect",
                    "worst_i",
                    "worst_j",
                ]
            ],
        )

    def test_semistatic_verdicts(self):
        out = self.out_dir("semistatic")
        result = run_cli(
            "semistatic",
            "-p",
            "example-nonclosed",
            "--words",
            str(WORDS_FILE),
            "--grid-n",
            "128",
            "--out",
            out,
            "--ci",
        )
        self.assertEqual(result.returncode, 0, result.stderr)
        rows = read_rows(Path(out) / "verdicts.csv")
        self.assertEqual(len(rows), 11)
        self.assertTrue(all(row[3] == "1" for row in rows[1:]))

    def test_verify_reports_failed_checks(self):
        # N = 32 is too coarse for the 0.03 isometry threshold
        out = self.out_dir("verify_coarse")
        result = run_cli(
            "verify", "-p", "rho-quadratic", "--grid-n", "32", "--out", out, "--ci"
        )
        self.assertEqual(result.returncode, 1, result.stderr)
        self.assertIn("Verification failed", result.stderr)
        self.assertIn("isometry", result.stderr)
        self.assertIn("FAIL", result.stdout)

        report = json.loads((Path(out) / "report.json").read_text())
        self.assertFalse(report["passed"])
        self.assertIn("isometry", report["failed"])

    def test_computation_errors_exit_with_three(self):
        from xyopt import main as main_module

        def failing(config):
            raise NegativeCycleError("cycle of reduced cost -1")

        argv = [
            "xyopt",
            "analyze",
            "-p",
            "two-well",
            "--out",
            self.out_dir("exit3"),
            "--quiet",
        ]
        with mock.patch.object(sys, "argv", argv), mock.patch.dict(
            main_module.COMMANDS, {"analyze": failing}
        ):
            with self.assertRaises(SystemExit) as raised:
                main_module.main()
        self.assertEqual(raised.exception.code, 3)


if __name__ == "__main__":
    unittest.main()
