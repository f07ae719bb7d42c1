from __future__ import annotations

from rich.console import Console

from schottkit import __version__
from schottkit.config.settings import DEFAULT_CONFIG_DIR, DEFAULT_CONFIG_PATH, get_settings

console = Console()


def version() -> None:
    """Show version information."""
    console.print(f"[bold cyan]schottkit[/bold cyan] v{__version__}")
    console.print("Schottky groups, Cantor pants and equivariant quasiconformal extensions")


def init() -> None:
    """Initialize schottkit (config dir and config.toml)."""
    settings = get_settings()

    console.print("[bold cyan]Initializing schottkit...[/bold cyan]")

    DEFAULT_CONFIG_DIR.mkdir(parents=True, exist_ok=True)
    console.print(f"Created config directory: {DEFAULT_CONFIG_DIR}")

    if not DEFAULT_CONFIG_PATH.exists():
        settings.save_to_toml(DEFAULT_CONFIG_PATH)
        console.print(f"Created config file: {DEFAULT_CONFIG_PATH}")
    else:
        console.print(f"Config file already exists: {DEFAULT_CONFIG_PATH}")
    console.print("\n[bold green]✓ Initialization complete![/bold green]")
    console.print("\nNext steps:")
    console.print("1. Edit config file: [cyan]~/.schottkit/config.toml[/cyan]")
    console.print("2. List commands: [cyan]schottkit commands[/cyan]")
    console.print("3. Run one: [cyan]schottkit schottky-exhaust --set genus=2 --set n=2[/cyan]")


def status() -> None:
    """Show configuration."""
    settings = get_settings()

    console.print("[bold cyan]schottkit Status[/bold cyan]\n")
    if DEFAULT_CONFIG_PATH.exists():
        console.print(f"Config file: [green]✓ {DEFAULT_CONFIG_PATH}[/green]")
    else:
        console.print("Config file: [yellow]⚠ Not initialized[/yellow] (defaults in use)")
        console.print("  Run: [cyan]schottkit init[/cyan]")

    console.print("\nConfiguration:")
    console.print(f"  Workers: {settings.runtime.workers}")
    console.print(f"  Log level: {settings.runtime.log_level}")
    console.print(f"  Node budget: {settings.schottky.node_budget}")
    console.print(f"  Barycenter tolerance: {settings.qc.tol:g} ({settings.qc.de_nodes} nodes)")
    console.print(f"  SVG node threshold: {settings.render.svg_node_threshold}")
