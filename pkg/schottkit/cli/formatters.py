from typing import Any

from rich.console import Console
from rich.table import Table

from schottkit.batch import RunReport


def _short(value: Any, width: int = 48) -> str:
    if isinstance(value, float):
        text = f"{value:.6g}"
    else:
        text = str(value)
    return text if len(text) <= width else text[: width - 3] + "..."


def print_run_report(console: Console, report: RunReport) -> None:
    console.print(f"\n[bold cyan]{report.command}[/bold cyan] ({report.wall_time:.2f}s)\n")

    if report.checks:
        table = Table(title="Checks")
        table.add_column("Check", style="cyan")
        table.add_column("Result", justify="center")
        table.add_column("Measured", justify="right")
        table.add_column("Criterion", style="magenta")
        for check in report.checks:
            result = "[green]PASS[/green]" if check.passed else "[red]FAIL[/red]"
            table.add_row(check.name, result, _short(check.measured), check.criterion)
        console.print(table)

    if report.artifacts:
        console.print("\n[bold]Artifacts:[/bold]")
        for fmt, path in sorted(report.artifacts.items()):
            console.print(f"  • {fmt}: {path}")

    if report.passed:
        console.print("\n[bold green]✓ All checks passed[/bold green]")
    else:
        names = ", ".join(c.name for c in report.failed_checks)
        console.print(f"\n[bold red]✗ Failed checks: {names}[/bold red]")


def print_command_table(console: Console, info: dict[str, dict[str, object]]) -> None:
    table = Table(title="Commands")
    table.add_column("Command", style="cyan")
    table.add_column("Formats", style="magenta")
    table.add_column("Description")
    for name, entry in info.items():
        formats = entry["formats"]
        assert isinstance(formats, list)
        table.add_row(name, ", ".join(formats), str(entry["description"]))
    console.print(table)
