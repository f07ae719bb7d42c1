"""Configuration management with hierarchy: CLI overrides > ENV vars > TOML > Defaults."""

from contextvars import ContextVar
from pathlib import Path
from typing import Any

import toml
from pydantic import BaseModel, Field, field_validator
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
    TomlConfigSettingsSource,
)

DEFAULT_CONFIG_DIR = Path.home() / ".schottkit"
DEFAULT_CONFIG_PATH = DEFAULT_CONFIG_DIR / "config.toml"

# File read by the TOML source; unset means plain Settings() ignores any config file.
_toml_path: ContextVar[Path | None] = ContextVar("schottkit_toml_path", default=None)


class SchottkyConfig(BaseModel):
    """Disk-tree expansion limits."""

    node_budget: int = Field(default=5_000_000, gt=0)
    overlap_tol: float = Field(default=1e-9, gt=0)
    parallel_threshold: int = Field(default=4096, gt=0)


class CantorConfig(BaseModel):
    """Exact Cantor-circle limits."""

    max_level: int = Field(default=40, ge=1, le=40)
    materialize_budget: int = Field(default=2_000_000, gt=0)
    brute_force_max_level: int = Field(default=8, ge=1)


class PantsConfig(BaseModel):
    """Length-spectrum options."""

    float_factorial_limit: int = Field(default=170, ge=1, le=170)


class QCConfig(BaseModel):
    """Barycenter solver and scan resolutions."""

    tol: float = Field(default=1e-10, gt=0)
    max_iter: int = Field(default=200, gt=0)
    de_nodes: int = Field(default=1024, ge=256)
    min_nodes: int = Field(default=256, ge=16)
    x_nodes: int = Field(default=512, ge=64)
    t_nodes: int = Field(default=2048, ge=64)
    t_exponent: int = Field(default=6, ge=1)
    breach_margin: float = Field(default=1e-6, gt=0, lt=1)
    seam_tol: float = Field(default=1e-12, gt=0)


class RenderConfig(BaseModel):
    """SVG/PPM output options."""

    svg_node_threshold: int = Field(default=200_000, gt=0)
    ppm_size: int = Field(default=1024, ge=16)
    precision: int = Field(default=6, ge=1, le=17)


class RuntimeConfig(BaseModel):
    """Process-level options."""

    workers: int = Field(default=1, ge=1)
    log_level: str = "INFO"

    @field_validator("log_level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        allowed = ["DEBUG", "INFO", "WARNING", "ERROR"]
        if v.upper() not in allowed:
            raise ValueError(f"log_level must be one of {allowed}")
        return v.upper()


class Settings(BaseSettings):
    """Main application settings."""

    model_config = SettingsConfigDict(
        env_prefix="SCHOTTKIT_",
        env_nested_delimiter="__",
        case_sensitive=False,
    )

    schottky: SchottkyConfig = Field(default_factory=SchottkyConfig)
    cantor: CantorConfig = Field(default_factory=CantorConfig)
    pants: PantsConfig = Field(default_factory=PantsConfig)
    qc: QCConfig = Field(default_factory=QCConfig)
    render: RenderConfig = Field(default_factory=RenderConfig)
    runtime: RuntimeConfig = Field(default_factory=RuntimeConfig)

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        # Earlier sources win: SCHOTTKIT_* variables outrank the TOML file.
        return (
            init_settings,
            env_settings,
            TomlConfigSettingsSource(settings_cls, toml_file=_toml_path.get()),
        )

    @classmethod
    def load_from_toml(cls, path: Path | None = None) -> "Settings":
        """Load settings from TOML file with environment variable override.

        Priority: ENV vars > TOML file > Defaults
        """
        token = _toml_path.set(path or DEFAULT_CONFIG_PATH)
        try:
            return cls()
        finally:
            _toml_path.reset(token)

    def save_to_toml(self, path: Path | None = None) -> None:
        """Save current settings to TOML file."""
        if path is None:
            path = DEFAULT_CONFIG_PATH

        path.parent.mkdir(parents=True, exist_ok=True)

        with open(path, "w") as f:
            toml.dump(self.model_dump(), f)

    def update_from_dict(self, updates: dict[str, Any]) -> None:
        """Apply dotted ``section.key`` overrides (for CLI flags).

        Raises:
            KeyError: If a section or key does not exist
        """
        for key, value in updates.items():
            section, _, setting = key.partition(".")
            if not setting:
                raise KeyError(f"Settings overrides take the form section.key, got '{key}'")
            section_obj = getattr(self, section, None)
            if not isinstance(section_obj, BaseModel) or setting not in type(section_obj).model_fields:
                raise KeyError(f"Unknown setting '{key}'")
            validated = type(section_obj).model_validate(
                {**section_obj.model_dump(), setting: value}
            )
            setattr(self, section, validated)


_settings: Settings | None = None


def get_settings() -> Settings:
    """Get global settings instance (singleton pattern)."""
    global _settings
    if _settings is None:
        _settings = Settings.load_from_toml()
    return _settings


def reload_settings(path: Path | None = None) -> Settings:
    """Reload settings from file."""
    global _settings
    _settings = Settings.load_from_toml(path)
    return _settings
