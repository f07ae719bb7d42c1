"""Subcommand registry for discovering and dispatching batch commands."""

from collections.abc import Mapping

from schottkit.batch import commands
from schottkit.batch.models import CommandSpec

# Registry of available commands
_COMMAND_REGISTRY: Mapping[str, CommandSpec] = {
    spec.name: spec
    for spec in (
        CommandSpec(
            "schottky-validate",
            commands.run_schottky_validate,
            ("json",),
            "Classify disk/generator data and report the minimal gap",
        ),
        CommandSpec(
            "schottky-limitset",
            commands.run_schottky_limitset,
            ("json", "csv", "svg", "ppm"),
            "Nested-disk approximation of the limit set",
        ),
        CommandSpec(
            "schottky-exhaust",
            commands.run_schottky_exhaust,
            ("json", "csv"),
            "Boundary-curve and copy counts of the exhaustion W_0..W_n",
        ),
        CommandSpec(
            "cantor-circles",
            commands.run_cantor_circles,
            ("json", "csv", "svg"),
            "Exact disjointness certificate for the Cantor circles",
        ),
        CommandSpec(
            "cantor-graph",
            commands.run_cantor_graph,
            ("json", "dot", "svg"),
            "Pants graph of the circle family and its isomorphism with X_inf",
        ),
        CommandSpec(
            "pants-distance",
            commands.run_pants_distance,
            ("json",),
            "Distance between two boundary geodesics of a pair of pants",
        ),
        CommandSpec(
            "spectrum-obstruct",
            commands.run_spectrum_obstruct,
            ("json",),
            "Length-spectrum obstruction between the factorial surfaces",
        ),
        CommandSpec(
            "xinfty-build",
            commands.run_xinfty_build,
            ("json", "dot", "svg"),
            "Glue X_inf from copies of one pair of pants",
        ),
        CommandSpec(
            "qs-scan",
            commands.run_qs_scan,
            ("json", "csv"),
            "Quasi-symmetry constants of an equivariant boundary map",
        ),
        CommandSpec(
            "de-extend",
            commands.run_de_extend,
            ("json", "csv", "svg"),
            "Douady-Earle extension on a fundamental grid with its dilatation",
        ),
        CommandSpec(
            "annulus-glue",
            commands.run_annulus_glue,
            ("json", "csv", "svg"),
            "Project the extension to a map between round annuli",
        ),
    )
}


def get_command(name: str) -> CommandSpec:
    """Get a command by name.

    Raises:
        ValueError: If the command is not registered
    """
    key = name.lower().strip()
    spec = _COMMAND_REGISTRY.get(key)
    if spec is None:
        available = ", ".join(sorted(_COMMAND_REGISTRY))
        raise ValueError(f"Unknown command '{name}'. Available commands: {available}")
    return spec


def list_commands() -> list[str]:
    return sorted(_COMMAND_REGISTRY)


def get_command_info() -> dict[str, dict[str, object]]:
    """{name: {description, formats}} for every command."""
    return {
        name: {"description": spec.description, "formats": list(spec.formats)}
        for name, spec in sorted(_COMMAND_REGISTRY.items())
    }
