"""Scene-driven batch commands."""

import json
from collections.abc import Callable
from pathlib import Path
from typing import Any

import typer
from pydantic import ValidationError
from rich.console import Console
from rich.markup import escape

from schottkit.batch import get_command, get_command_info, run
from schottkit.config.schema import ConfigError, load_scene, scene_json_schema
from schottkit.config.settings import get_settings
from schottkit.errors import ToolkitError
from schottkit.cli.formatters import print_command_table, print_run_report
from schottkit.utils.io import atomic_write_text, dumps_json

console = Console()

EXIT_CONFIG = 2
EXIT_MODULE = 3
EXIT_CHECK = 4


def execute(
    scene_path: Path | None,
    overrides: list[str],
    command: str | None = None,
    output_dir: Path | None = None,
    formats: list[str] | None = None,
    as_json: bool = False,
) -> None:
    """Load, run and report; maps failures onto exit codes."""
    updates: dict[str, Any] = {}
    if output_dir is not None:
        updates["output_dir"] = str(output_dir)
    if formats:
        updates["formats"] = formats

    try:
        scene = load_scene(scene_path, overrides, command=command, updates=updates)
        report = run(scene, get_settings())
    except (ConfigError, ValidationError) as e:
        console.print(f"[red]Configuration error: {escape(str(e))}[/red]")
        raise typer.Exit(EXIT_CONFIG)
    except ToolkitError as e:
        console.print(f"[red]{type(e).__name__}: {escape(str(e))}[/red]")
        raise typer.Exit(EXIT_MODULE)

    if as_json:
        console.print_json(dumps_json(report.result))
    print_run_report(console, report)
    if not report.passed:
        raise typer.Exit(EXIT_CHECK)


def run_scene(
    scene: Path = typer.Argument(..., help="Scene file (.json or .toml)"),
    overrides: list[str] = typer.Option([], "--set", help="Override a scene field: key=value"),
    output_dir: Path = typer.Option(None, "--output-dir", "-o", help="Directory for artifacts"),
    formats: list[str] = typer.Option([], "--format", "-f", help="Artifact format (repeatable)"),
    as_json: bool = typer.Option(False, "--json", help="Print the result payload as JSON"),
) -> None:
    """Run the command named in a scene file."""
    execute(scene, overrides, None, output_dir, formats, as_json)


def make_command(name: str) -> Callable[..., None]:
    """Typer command running ``name`` from flags and an optional scene file."""

    def command(
        scene: Path = typer.Option(None, "--scene", "-s", help="Scene file (.json or .toml)"),
        overrides: list[str] = typer.Option([], "--set", help="Override a scene field: key=value"),
        output_dir: Path = typer.Option(None, "--output-dir", "-o", help="Directory for artifacts"),
        formats: list[str] = typer.Option([], "--format", "-f", help="Artifact format (repeatable)"),
        as_json: bool = typer.Option(False, "--json", help="Print the result payload as JSON"),
    ) -> None:
        execute(scene, overrides, name, output_dir, formats, as_json)

    command.__doc__ = get_command(name).description
    command.__name__ = name.replace("-", "_")
    return command


def list_commands() -> None:
    """List batch commands and the formats they write."""
    print_command_table(console, get_command_info())


def schema(
    output: Path = typer.Option(None, "--output", "-o", help="Write the JSON schema here"),
) -> None:
    """Print or write the JSON schema of scene files."""
    text = json.dumps(scene_json_schema(), sort_keys=True, indent=2) + "\n"
    if output is None:
        console.print_json(text)
        return
    atomic_write_text(output, text)
    console.print(f"Wrote scene schema to {output}")
