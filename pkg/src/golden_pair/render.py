"""Terminal rendering for constants and verification reports."""

from collections.abc import Iterable

from rich.table import Table

from .identities import VerificationReport

PASS_MARK = "[green]✓[/green]"
FAIL_MARK = "[red]✗[/red]"


def status_mark(passed: bool) -> str:
    return PASS_MARK if passed else FAIL_MARK


def constants_table(values: dict[str, str], digits: int) -> Table:
    table = Table(title=f"Constants ({digits} digits)")
    table.add_column("Name", style="cyan")
    table.add_column("Value", style="green", overflow="fold")
    for name, value in values.items():
        table.add_row(name, value)
    return table


def report_lines(report: VerificationReport) -> list[str]:
    """Console markup for a single report."""
    lines = [
        f"{status_mark(report.passed)} {report.identity}",
        f"[bold]LHS:[/bold] {report.lhs}",
        f"[bold]RHS:[/bold] {report.rhs}",
        f"[bold]Matched digits:[/bold] {report.matched} / {report.digits_requested}",
        f"[bold]Terms:[/bold] {report.terms_used}",
        f"[bold]Elapsed:[/bold] {report.elapsed:.3f}s",
    ]
    if report.reason:
        lines.append(f"[yellow]Reason:[/yellow] {report.reason}")
    return lines


def reports_table(reports: Iterable[VerificationReport], digits: int) -> Table:
    table = Table(title=f"Identity verification ({digits} digits)")
    table.add_column("", width=1)
    table.add_column("Identity", style="cyan")
    table.add_column("Matched", justify="right", style="green")
    table.add_column("Terms", justify="right", style="yellow")
    table.add_column("Elapsed", justify="right")
    table.add_column("Reason", style="red", overflow="fold")
    for report in reports:
        table.add_row(
            status_mark(report.passed),
            str(report.identity),
            str(report.matched),
            str(report.terms_used),
            f"{report.elapsed:.3f}s",
            report.reason or "",
        )
    return table
