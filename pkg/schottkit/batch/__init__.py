"""Batch runs: scene in, checked report and artifacts out."""

from schottkit.batch.models import CheckResult, CommandOutput, CommandSpec, RunReport
from schottkit.batch.registry import get_command, get_command_info, list_commands
from schottkit.batch.runner import CommandError, report_path, run

__all__ = [
    "CheckResult",
    "CommandError",
    "CommandOutput",
    "CommandSpec",
    "RunReport",
    "get_command",
    "get_command_info",
    "list_commands",
    "report_path",
    "run",
]
