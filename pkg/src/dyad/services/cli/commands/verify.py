"""``dyad verify``: run the acceptance suite and report each check."""

import logging

from dyad.services.cli.utils import show_report
from dyad.verification.state import report_passed
from dyad.verification.suite import Level, run_suite

logger = logging.getLogger(__name__)

EXIT_FAILED_CHECK = 2


def verify_command(level: Level = "quick") -> int:
    """Exit code 0 when every check passes, 2 otherwise."""
    report = run_suite(level)
    show_report(report)
    if report_passed(report):
        return 0
    failing = [
        name
        for name, record in report["checks"].items()
        if record["status"] != "passed"
    ]
    logger.warning("checks not passing: %s", ", ".join(failing))
    return EXIT_FAILED_CHECK
