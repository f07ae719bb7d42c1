"""Check results, command outputs and the run report."""

import math
from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

from schottkit.config.schema import Format


@dataclass(frozen=True)
class CheckResult:
    """One executed invariant check with the value it measured."""

    name: str
    passed: bool
    measured: Any
    criterion: str

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "passed": self.passed,
            "measured": self.measured,
            "criterion": self.criterion,
        }


def check_below(name: str, measured: float, limit: float) -> CheckResult:
    """Pass when ``measured < limit`` (NaN fails)."""
    return CheckResult(name, bool(measured < limit), measured, f"< {limit:g}")


def check_at_most(name: str, measured: float, limit: float) -> CheckResult:
    return CheckResult(name, bool(measured <= limit), measured, f"<= {limit:g}")


def check_equal(name: str, measured: Any, expected: Any) -> CheckResult:
    return CheckResult(name, measured == expected, measured, f"== {expected}")


def check_finite(name: str, measured: float) -> CheckResult:
    return CheckResult(name, math.isfinite(measured), measured, "finite")


@dataclass
class CommandOutput:
    """What a command computed, before anything is written."""

    payload: dict[str, Any]
    checks: list[CheckResult] = field(default_factory=list)
    csv: Mapping[str, Sequence[Any]] | None = None
    svg: str | None = None
    ppm: bytes | None = None
    dot: str | None = None

    def artifact(self, fmt: Format) -> str | bytes | Mapping[str, Sequence[Any]] | None:
        if fmt == "json":
            return self.payload
        return getattr(self, fmt)


@dataclass(frozen=True)
class CommandSpec:
    """A registered subcommand."""

    name: str
    handler: Callable[[Any, Any], CommandOutput]
    formats: tuple[Format, ...]
    description: str


@dataclass
class RunReport:
    """Outcome of one run: config echo, timings, checks and written files.

    ``wall_time`` and ``version`` are the only fields that vary between
    identical runs.
    """

    command: str
    config: dict[str, Any]
    wall_time: float
    checks: list[CheckResult]
    artifacts: dict[str, str]
    version: str
    result: dict[str, Any] = field(default_factory=dict, repr=False)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failed_checks(self) -> list[CheckResult]:
        return [c for c in self.checks if not c.passed]

    def to_json(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "wall_time": self.wall_time,
            "checks": [c.to_json() for c in self.checks],
            "passed": self.passed,
            "artifacts": dict(sorted(self.artifacts.items())),
            "version": self.version,
        }
