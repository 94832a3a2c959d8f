import logging
from pathlib import Path

from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table
from rich.text import Text

from dyad.verification.state import VerificationReport, report_passed

console = Console()
error_console = Console(stderr=True)

STATUS_EMOJI = {"passed": "✅", "failed": "❌", "error": "⚠️"}


def configure_logging(level: str = "WARNING") -> None:
    """Route every library logger through rich on standard error."""
    logging.basicConfig(
        level=level.upper(),
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=error_console, show_path=False)],
        force=True,
    )


def show_run_summary(
    rows: int,
    columns: int,
    elapsed: float,
    wavelength: float,
    gamma0: float,
    destination: Path | None,
) -> None:
    """Summary panel after ``dyad run`` has written its table."""
    lines = Text()
    lines.append(f"rows: {rows}    columns: {columns}\n")
    lines.append(f"λ₀ = {wavelength:.6g} m    Γ₀ = {gamma0:.6g} 1/s\n")
    lines.append(f"elapsed: {elapsed:.2f} s\n")
    lines.append(f"output: {destination or 'standard output'}")
    # keep the table on stdout clean when it is printed there
    target = console if destination is not None else error_console
    target.print(
        Panel(
            lines,
            title="[bold green]📈 dyad run[/bold green]",
            border_style="green",
            padding=(1, 2),
        )
    )


def show_report(report: VerificationReport) -> None:
    """Table of every check with measured value against tolerance."""
    table = Table(title=f"dyad verify ({report['level']})")
    table.add_column("", justify="center")
    table.add_column("check", style="bold")
    table.add_column("measured", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("description")
    for name, record in report["checks"].items():
        summary = record["description"]
        if "detail" in record:
            summary = f"{summary}\n[dim]{record['detail']}[/dim]"
        table.add_row(
            STATUS_EMOJI.get(record["status"], "❓"),
            name,
            f"{record['measured']:.3e}",
            f"{record['tolerance']:.1e}",
            summary,
        )
    console.print(table)

    passed = report_passed(report)
    count = len(report["checks"])
    failing = sum(
        record["status"] != "passed" for record in report["checks"].values()
    )
    verdict = (
        f"all {count} checks passed"
        if passed
        else f"{failing} of {count} checks did not pass"
    )
    console.print(
        Panel(
            f"{verdict} in {report.get('elapsed', 0.0):.1f} s",
            border_style="green" if passed else "red",
        )
    )
