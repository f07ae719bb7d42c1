"""Scene files: one strict model per subcommand, discriminated on ``command``.

A scene is a JSON or TOML document. ``--set key=value`` flags are applied
on top of the file before validation; dotted keys reach nested blocks
(``map.alpha=2``). Values are parsed as JSON when possible, so ``3``,
``true`` and ``[1, 2]`` keep their types and ``1/3`` stays a string.
"""

import json
from collections.abc import Mapping, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, Literal, Union

import toml
from pydantic import BaseModel, ConfigDict, Field, TypeAdapter, ValidationError, model_validator

from schottkit.errors import ToolkitError
from schottkit.utils.rational import RationalError, to_fraction

Format = Literal["json", "csv", "svg", "ppm", "dot"]

COMMANDS = (
    "schottky-validate",
    "schottky-limitset",
    "schottky-exhaust",
    "cantor-circles",
    "cantor-graph",
    "pants-distance",
    "spectrum-obstruct",
    "xinfty-build",
    "qs-scan",
    "de-extend",
    "annulus-glue",
)


class ConfigError(ToolkitError):
    """Scene file or override failed validation."""

    def __init__(self, message: str, errors: Sequence[str] = ()) -> None:
        self.errors = list(errors)
        detail = "".join(f"\n  - {e}" for e in self.errors)
        super().__init__(f"{message}{detail}")


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


def _exact(value: str | int) -> Fraction:
    try:
        return to_fraction(value)
    except RationalError as e:
        raise ValueError(str(e)) from e


class SceneBase(StrictModel):
    """Fields shared by every scene."""

    output_dir: Path = Path("out")
    name: str | None = Field(default=None, description="Artifact file stem; defaults to the command")
    formats: list[Format] = Field(default_factory=lambda: ["json"])

    @property
    def stem(self) -> str:
        return self.name or str(getattr(self, "command"))


class DiskSpec(StrictModel):
    center: tuple[float, float]
    radius: float = Field(gt=0)


class GroupScene(SceneBase):
    """Schottky data from a standard configuration or explicit disks.

    Custom disks are listed as D_1, ..., D_{2g}; γ_i pairs D_{2i-1} with D_{2i}.
    """

    genus: int = Field(default=2, ge=2)
    configuration: Literal["classical", "tangent", "custom"] = "classical"
    spacing: float = Field(default=3.0, gt=0)
    radius: float = Field(default=1.0, gt=0)
    disks: list[DiskSpec] | None = None

    @model_validator(mode="after")
    def check_disks(self) -> "GroupScene":
        if self.configuration == "custom":
            if self.disks is None or len(self.disks) != 2 * self.genus:
                got = 0 if self.disks is None else len(self.disks)
                raise ValueError(f"custom configuration needs {2 * self.genus} disks, got {got}")
        elif self.disks is not None:
            raise ValueError("disks are only accepted with configuration = 'custom'")
        if self.configuration == "classical" and self.spacing <= 2 * self.radius:
            raise ValueError(f"spacing {self.spacing} must exceed the diameter {2 * self.radius}")
        return self


class SchottkyValidateScene(GroupScene):
    command: Literal["schottky-validate"]
    strict: bool = False
    tol: float | None = Field(default=None, gt=0)


class SchottkyLimitsetScene(GroupScene):
    command: Literal["schottky-limitset"]
    depth: int = Field(default=6, ge=0)
    max_radius: float | None = Field(default=None, gt=0)
    leaves_only: bool = False
    formats: list[Format] = Field(default_factory=lambda: ["json", "svg"])


class SchottkyExhaustScene(GroupScene):
    command: Literal["schottky-exhaust"]
    n: int = Field(default=2, ge=0)
    with_radii: bool = True


class CantorCirclesScene(SceneBase):
    command: Literal["cantor-circles"]
    k: int = Field(default=3, ge=1, le=40)
    cross_check: bool = True
    formats: list[Format] = Field(default_factory=lambda: ["json", "svg"])


class CantorGraphScene(SceneBase):
    command: Literal["cantor-graph"]
    k: int = Field(default=4, ge=1, le=40)
    formats: list[Format] = Field(default_factory=lambda: ["json", "dot"])


class PantsDistanceScene(SceneBase):
    command: Literal["pants-distance"]
    lengths: tuple[str | int, str | int, str | int] = ("1", "1", "1")
    i: int = Field(default=1, ge=1, le=3)
    j: int = Field(default=2, ge=1, le=3)
    bound: str | int | None = Field(default=None, description="M for the [1/M, M] bounded-pants flag")

    @model_validator(mode="after")
    def check_slots(self) -> "PantsDistanceScene":
        if self.i == self.j:
            raise ValueError(f"slots i and j must differ, got {self.i} twice")
        for value in self.lengths:
            if _exact(value) <= 0:
                raise ValueError(f"lengths must be positive, got {value}")
        if self.bound is not None and _exact(self.bound) < 1:
            raise ValueError(f"bound must be >= 1, got {self.bound}")
        return self

    def exact_lengths(self) -> tuple[Fraction, Fraction, Fraction]:
        a, b, c = (_exact(v) for v in self.lengths)
        return a, b, c

    def exact_bound(self) -> Fraction | None:
        return None if self.bound is None else _exact(self.bound)


class SpectrumObstructScene(SceneBase):
    command: Literal["spectrum-obstruct"]
    n_max: int = Field(default=20, ge=2)
    K: int = Field(default=2, ge=1)
    exact: bool = True


class XinftyBuildScene(SceneBase):
    command: Literal["xinfty-build"]
    generations: int = Field(default=3, ge=1, le=20)
    length: str | int = "1"
    subsurface_genus: int | None = Field(default=None, ge=2)
    formats: list[Format] = Field(default_factory=lambda: ["json", "dot"])

    @model_validator(mode="after")
    def check_length(self) -> "XinftyBuildScene":
        if _exact(self.length) <= 0:
            raise ValueError(f"length must be positive, got {self.length}")
        return self

    def exact_length(self) -> Fraction:
        return _exact(self.length)


class BoundarySpec(StrictModel):
    """Equivariant boundary map: a power map or monotone samples on [1, k]."""

    kind: Literal["power", "samples"] = "power"
    k: float = Field(default=2.0, gt=1)
    alpha: float = Field(default=1.0, gt=0)
    kappa: float | None = Field(default=None, gt=1)
    positive: list[tuple[float, float]] | None = None
    negative: list[tuple[float, float]] | None = None

    @model_validator(mode="after")
    def check_samples(self) -> "BoundarySpec":
        if self.kind == "samples":
            if self.kappa is None or not self.positive:
                raise ValueError("sampled boundary maps need kappa and positive samples")
        elif self.positive is not None or self.negative is not None or self.kappa is not None:
            raise ValueError(
                "kappa and samples are only accepted with kind = 'samples'; "
                "power maps use kappa = k**alpha"
            )
        return self


class QCScene(SceneBase):
    map: BoundarySpec = Field(default_factory=BoundarySpec)


class QsScanScene(QCScene):
    command: Literal["qs-scan"]
    x_nodes: int | None = Field(default=None, ge=64)
    t_nodes: int | None = Field(default=None, ge=64)
    t_exponent: int | None = Field(default=None, ge=1)
    residual_pairs: int = Field(default=1000, ge=1)


class SolverScene(QCScene):
    grid: int = Field(default=32, ge=4)
    nodes: int | None = Field(default=None, ge=256)
    tol: float | None = Field(default=None, gt=0)
    max_iter: int | None = Field(default=None, ge=1)


class DeExtendScene(SolverScene):
    command: Literal["de-extend"]
    strict: bool = False
    formats: list[Format] = Field(default_factory=lambda: ["json", "csv"])


class AnnulusGlueScene(SolverScene):
    command: Literal["annulus-glue"]
    side_dilatations: tuple[float, float] = (1.0, 1.0)
    formats: list[Format] = Field(default_factory=lambda: ["json", "csv"])

    @model_validator(mode="after")
    def check_dilatations(self) -> "AnnulusGlueScene":
        if min(self.side_dilatations) < 1:
            raise ValueError(f"side dilatations must be >= 1, got {self.side_dilatations}")
        return self


SceneConfig = Annotated[
    Union[
        SchottkyValidateScene,
        SchottkyLimitsetScene,
        SchottkyExhaustScene,
        CantorCirclesScene,
        CantorGraphScene,
        PantsDistanceScene,
        SpectrumObstructScene,
        XinftyBuildScene,
        QsScanScene,
        DeExtendScene,
        AnnulusGlueScene,
    ],
    Field(discriminator="command"),
]

_ADAPTER: TypeAdapter[Any] = TypeAdapter(SceneConfig)


def scene_json_schema() -> dict[str, Any]:
    """JSON schema of every scene variant."""
    schema: dict[str, Any] = _ADAPTER.json_schema()
    return schema


def parse_override(item: str) -> tuple[list[str], Any]:
    """Split ``a.b=value`` into its key path and a parsed value.

    Raises:
        ConfigError: If there is no ``=`` or the key is empty
    """
    key, sep, raw = item.partition("=")
    key = key.strip()
    if not sep or not key:
        raise ConfigError(f"Override must look like key=value, got '{item}'")
    try:
        value: Any = json.loads(raw)
    except json.JSONDecodeError:
        value = raw
    return key.split("."), value


def apply_overrides(data: dict[str, Any], overrides: Sequence[str]) -> dict[str, Any]:
    """Return a copy of ``data`` with every override applied in order."""
    out = json.loads(json.dumps(data, default=str))
    for item in overrides:
        path, value = parse_override(item)
        node = out
        for part in path[:-1]:
            child = node.setdefault(part, {})
            if not isinstance(child, dict):
                raise ConfigError(f"Cannot set '{item}': '{part}' is not a table")
            node = child
        node[path[-1]] = value
    return out


def read_scene_file(path: Path) -> dict[str, Any]:
    """Raw scene mapping from a .json or .toml file.

    Raises:
        ConfigError: If the file is missing, unreadable or of another type
    """
    if not path.exists():
        raise ConfigError(f"Scene file not found: {path}")
    suffix = path.suffix.lower()
    try:
        if suffix == ".json":
            data = json.loads(path.read_text(encoding="utf-8"))
        elif suffix == ".toml":
            data = toml.loads(path.read_text(encoding="utf-8"))
        else:
            raise ConfigError(f"Scene files must be .json or .toml, got '{path.name}'")
    except (json.JSONDecodeError, toml.TomlDecodeError) as e:
        raise ConfigError(f"Cannot parse {path}: {e}") from e
    if not isinstance(data, dict):
        raise ConfigError(f"Scene file {path} must hold a table at the top level")
    return data


def validate_scene(data: dict[str, Any]) -> Any:
    """Validate a raw mapping into its scene model.

    Raises:
        ConfigError: Listing every failed field
    """
    try:
        return _ADAPTER.validate_python(data)
    except ValidationError as e:
        errors = [
            f"{'.'.join(str(p) for p in err['loc']) or '<scene>'}: {err['msg']}" for err in e.errors()
        ]
        raise ConfigError("Invalid scene", errors) from e


def load_scene(
    path: Path | None = None,
    overrides: Sequence[str] = (),
    command: str | None = None,
    updates: Mapping[str, Any] | None = None,
) -> Any:
    """Scene from an optional file, a forced command and ``--set`` overrides.

    ``updates`` are typed top-level values (from dedicated CLI flags) applied
    after the overrides.

    Raises:
        ConfigError: If the file cannot be read, the command disagrees with
            the file, or validation fails
    """
    data: dict[str, Any] = read_scene_file(path) if path is not None else {}
    if command is not None:
        if "command" in data and data["command"] != command:
            raise ConfigError(f"Scene is for '{data['command']}', not '{command}'")
        data["command"] = command
    data = apply_overrides(data, overrides)
    data.update(updates or {})
    if "command" not in data:
        raise ConfigError(f"Scene needs a command, one of: {', '.join(COMMANDS)}")
    return validate_scene(data)


__all__ = [
    "COMMANDS",
    "AnnulusGlueScene",
    "BoundarySpec",
    "CantorCirclesScene",
    "CantorGraphScene",
    "ConfigError",
    "DeExtendScene",
    "DiskSpec",
    "PantsDistanceScene",
    "QsScanScene",
    "SceneConfig",
    "SchottkyExhaustScene",
    "SchottkyLimitsetScene",
    "SchottkyValidateScene",
    "SpectrumObstructScene",
    "XinftyBuildScene",
    "apply_overrides",
    "load_scene",
    "parse_override",
    "read_scene_file",
    "scene_json_schema",
    "validate_scene",
]
