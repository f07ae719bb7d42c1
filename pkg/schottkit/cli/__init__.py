import logging
from pathlib import Path

import typer
from rich.console import Console
from rich.logging import RichHandler

from schottkit.batch import list_commands as batch_commands
from schottkit.cli.commands.run import list_commands as commands_command
from schottkit.cli.commands.run import make_command, run_scene
from schottkit.cli.commands.run import schema as schema_command
from schottkit.cli.commands.system import init as init_command
from schottkit.cli.commands.system import status as status_command
from schottkit.cli.commands.system import version as version_command
from schottkit.config.settings import get_settings, reload_settings

console = Console()

app = typer.Typer(
    name="schottkit",
    help="schottkit – Schottky groups, Cantor pants and quasiconformal extensions",
    no_args_is_help=True,
)


def setup_logging(verbose: bool = False) -> None:
    """Configure logging for the CLI."""
    level = logging.DEBUG if verbose else getattr(logging, get_settings().runtime.log_level)

    logging.basicConfig(
        level=level,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[
            RichHandler(
                console=console,
                rich_tracebacks=True,
                show_time=True,
                show_path=False,
            ),
        ],
    )


@app.callback()
def main(
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Enable verbose logging output.",
    ),
    config: Path = typer.Option(
        None,
        "--config",
        "-c",
        help="Settings file (defaults to ~/.schottkit/config.toml).",
    ),
) -> None:
    """
    Global CLI options.

    This runs before any subcommand and sets up settings and logging.
    """
    if config is not None:
        reload_settings(config)
    setup_logging(verbose)


app.command(name="version")(version_command)
app.command(name="init")(init_command)
app.command(name="status")(status_command)
app.command(name="commands")(commands_command)
app.command(name="schema")(schema_command)
app.command(name="run")(run_scene)
for _name in batch_commands():
    app.command(name=_name)(make_command(_name))

__all__ = ["app"]
