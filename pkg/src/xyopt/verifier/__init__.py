from .context import VerificationContext
from .checks import CHECKS, checks_for
from .runner import acceptance_report, format_check_table, run_acceptance
