import dotenv

dotenv.load_dotenv()

import argparse  # noqa: E402
import logging  # noqa: E402
import sys  # noqa: E402
from collections.abc import Sequence  # noqa: E402
from pathlib import Path  # noqa: E402

from pydantic import ValidationError  # noqa: E402

from dyad.errors import DomainError, OracleError, QuadratureError  # noqa: E402
from dyad.services.cli.commands import (  # noqa: E402
    execute_sweep,
    load_config,
    verify_command,
    write_table,
)
from dyad.services.cli.commands.utils import (  # noqa: E402
    emit_numerical_error,
    emit_validation_error,
)
from dyad.services.cli.dependencies import get_settings  # noqa: E402
from dyad.services.cli.utils import (  # noqa: E402
    configure_logging,
    show_run_summary,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_NUMERICAL = 2


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dyad",
        description=(
            "Populations, forces, emission and centre-of-mass motion of two "
            "identical two-level atoms sharing one excitation."
        ),
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="Logging level (default: DYAD_LOG_LEVEL or WARNING)",
    )
    subcommands = parser.add_subparsers(dest="command", required=True)

    run = subcommands.add_parser("run", help="Sweep a configured pair")
    run.add_argument("config", type=Path, help="JSON run configuration")
    run.add_argument("--output", type=Path, help="Table destination file")
    run.add_argument(
        "--format", choices=["csv", "json"], help="Table format (default: csv)"
    )
    run.add_argument(
        "--threads", type=int, help="Worker threads for the sweep (default: 1)"
    )

    verify = subcommands.add_parser("verify", help="Run the acceptance suite")
    verify.add_argument("--level", choices=["quick", "full"], default="quick")
    return parser


def _run(args: argparse.Namespace) -> int:
    settings = get_settings()
    config = load_config(args.config)
    threads = args.threads if args.threads is not None else settings.threads
    if threads < 1:
        raise DomainError(f"--threads must be at least 1, got {threads}")
    fmt = args.format or config.output.format or settings.output_format
    destination = args.output or config.output.path

    result = execute_sweep(config, threads)
    write_table(result, fmt, destination)
    show_run_summary(
        rows=len(result.rows),
        columns=len(result.columns),
        elapsed=result.elapsed,
        wavelength=result.pair.wavelength,
        gamma0=result.pair.gamma0,
        destination=destination,
    )
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    """Parse arguments, dispatch, and map errors to exit codes.

    Returns:
        0 on success, 1 for invalid input, 2 for numerical failures and
        failed acceptance checks.
    """
    args = build_parser().parse_args(argv)
    try:
        level = args.log_level or get_settings().log_level
    except ValidationError as err:
        print(emit_validation_error(err), file=sys.stderr)
        return EXIT_VALIDATION
    configure_logging(level)

    try:
        if args.command == "verify":
            return verify_command(args.level)
        return _run(args)
    except (ValidationError, DomainError, OSError) as err:
        print(emit_validation_error(err), file=sys.stderr)
        return EXIT_VALIDATION
    except (QuadratureError, OracleError) as err:
        logger.error("numerical failure: %s", err)
        print(emit_numerical_error(err), file=sys.stderr)
        return EXIT_NUMERICAL


def app() -> None:
    sys.exit(main())


if __name__ == "__main__":
    app()
