"""Run a validated scene: dispatch, collect checks, write artifacts."""

import logging
import time
from pathlib import Path
from typing import Any

from schottkit import __version__
from schottkit.batch.models import RunReport
from schottkit.batch.registry import get_command
from schottkit.config.schema import ConfigError
from schottkit.config.settings import Settings, get_settings
from schottkit.errors import ToolkitError
from schottkit.reporting import encode_artifact, write_artifacts

logger = logging.getLogger(__name__)

_EXTENSIONS = {"json": "json", "csv": "csv", "svg": "svg", "ppm": "ppm", "dot": "dot"}


class CommandError(ToolkitError):
    """A module rejected its arguments during a run."""

    def __init__(self, command: str, cause: Exception) -> None:
        self.command = command
        self.cause = cause
        super().__init__(f"{command}: {cause}")


def report_path(scene: Any) -> Path:
    return Path(scene.output_dir) / f"{scene.stem}.report.json"


def run(scene: Any, settings: Settings | None = None, write_report: bool = True) -> RunReport:
    """Dispatch ``scene`` to its command and write the requested artifacts.

    All artifacts and the report are rendered after the command has finished
    and only then written, each through a temporary file and rename. A failed
    write removes the files this run already wrote.

    Args:
        scene: A validated scene model
        settings: Settings to use (defaults to the global settings)
        write_report: Also write ``<stem>.report.json``

    Returns:
        RunReport with every executed check and the written paths

    Raises:
        ConfigError: If the scene asks for a format the command cannot produce
        CommandError: If a module rejects an argument
        ToolkitError: Module failures, propagated unchanged
    """
    settings = settings or get_settings()
    spec = get_command(scene.command)
    unsupported = sorted(set(scene.formats) - set(spec.formats))
    if unsupported:
        raise ConfigError(
            f"{spec.name} cannot write {', '.join(unsupported)}; supported: {', '.join(spec.formats)}"
        )

    logger.info(f"Running {spec.name}")
    started = time.perf_counter()
    try:
        output = spec.handler(scene, settings)
    except ToolkitError:
        logger.debug(f"{spec.name} failed", exc_info=True)
        raise
    except ValueError as e:
        raise CommandError(spec.name, e) from e
    wall_time = time.perf_counter() - started

    out_dir = Path(scene.output_dir)
    csv_precision = max(settings.render.precision, 12)
    files: dict[Path, bytes] = {}
    artifacts: dict[str, str] = {}
    for fmt in dict.fromkeys([*scene.formats, *(["ppm"] if output.ppm is not None else [])]):
        content = output.artifact(fmt)
        if content is None:
            logger.info(f"{spec.name} produced no {fmt} output")
            continue
        path = out_dir / f"{scene.stem}.{_EXTENSIONS[fmt]}"
        files[path] = encode_artifact(fmt, content, csv_precision)
        artifacts[fmt] = str(path)

    report = RunReport(
        command=spec.name,
        config=scene.model_dump(mode="json"),
        wall_time=wall_time,
        checks=output.checks,
        artifacts=artifacts,
        version=__version__,
        result=output.payload,
    )
    for check in report.failed_checks:
        logger.warning(f"Check {check.name} failed: measured {check.measured}, expected {check.criterion}")
    if write_report:
        files[report_path(scene)] = encode_artifact("json", report.to_json())
    # Everything is rendered before the first file is touched.
    write_artifacts(files)
    logger.info(
        f"{spec.name} finished in {wall_time:.2f}s: "
        f"{len(report.checks) - len(report.failed_checks)}/{len(report.checks)} checks passed"
    )
    return report
