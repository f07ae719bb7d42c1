"""Tests for settings and scene files."""

import json
from pathlib import Path

import pytest
from pydantic import ValidationError

from schottkit.config.schema import (
    COMMANDS,
    ConfigError,
    SchottkyExhaustScene,
    apply_overrides,
    load_scene,
    parse_override,
    scene_json_schema,
)
from schottkit.config.settings import Settings


def test_settings_defaults():
    """Test default settings match the documented values."""
    settings = Settings()
    assert settings.runtime.workers == 1
    assert settings.schottky.node_budget == 5_000_000
    assert settings.qc.tol == 1e-10
    assert settings.render.svg_node_threshold == 200_000


def test_settings_env_override(monkeypatch):
    """Test SCHOTTKIT_RUNTIME__WORKERS overrides the thread count."""
    monkeypatch.setenv("SCHOTTKIT_RUNTIME__WORKERS", "8")
    assert Settings().runtime.workers == 8


def test_settings_env_outranks_toml_file(tmp_path, monkeypatch):
    """Test SCHOTTKIT_* variables win over values written in the TOML file."""
    path = tmp_path / "config.toml"
    settings = Settings()
    settings.update_from_dict({"qc.de_nodes": 2048})
    settings.save_to_toml(path)

    monkeypatch.setenv("SCHOTTKIT_RUNTIME__WORKERS", "8")
    loaded = Settings.load_from_toml(path)
    assert loaded.runtime.workers == 8
    assert loaded.runtime.log_level == "INFO"
    assert loaded.qc.de_nodes == 2048


def test_plain_settings_ignore_config_file(tmp_path, monkeypatch):
    """Test Settings() built directly reads no TOML file."""
    from schottkit.config import settings as settings_module

    path = tmp_path / "config.toml"
    path.write_text("[runtime]\nworkers = 3\n")
    monkeypatch.setattr(settings_module, "DEFAULT_CONFIG_PATH", path)
    assert Settings.load_from_toml().runtime.workers == 3
    assert Settings().runtime.workers == 1


def test_settings_toml_roundtrip(tmp_path):
    """Test settings survive save_to_toml and load_from_toml."""
    path = tmp_path / "config.toml"
    settings = Settings()
    settings.update_from_dict({"qc.de_nodes": 2048, "runtime.log_level": "debug"})
    settings.save_to_toml(path)

    loaded = Settings.load_from_toml(path)
    assert loaded.qc.de_nodes == 2048
    assert loaded.runtime.log_level == "DEBUG"
    assert loaded.model_dump() == settings.model_dump()


def test_settings_missing_file_gives_defaults(tmp_path):
    """Test a missing settings file falls back to defaults."""
    assert Settings.load_from_toml(tmp_path / "absent.toml").qc.max_iter == 200


def test_settings_update_rejects_unknown_and_invalid():
    """Test dotted updates validate keys and values."""
    settings = Settings()
    with pytest.raises(KeyError):
        settings.update_from_dict({"qc.nope": 1})
    with pytest.raises(KeyError):
        settings.update_from_dict({"workers": 2})
    with pytest.raises(ValidationError):
        settings.update_from_dict({"runtime.workers": 0})
    with pytest.raises(ValidationError):
        Settings(runtime={"log_level": "loud"})


def test_scene_from_overrides():
    """Test a scene can be built from --set flags alone."""
    scene = load_scene(command="schottky-exhaust", overrides=["genus=3", "n=4"])
    assert isinstance(scene, SchottkyExhaustScene)
    assert (scene.genus, scene.n) == (3, 4)
    assert scene.stem == "schottky-exhaust"
    assert scene.formats == ["json"]


def test_scene_negative_depth_is_config_error():
    """Test a negative depth is rejected before dispatch."""
    with pytest.raises(ConfigError) as exc_info:
        load_scene(command="schottky-limitset", overrides=["depth=-1"])
    assert any(e.startswith("schottky-limitset.depth") for e in exc_info.value.errors)


@pytest.mark.parametrize(
    "command, overrides",
    [
        ("schottky-exhaust", ["genus=1"]),
        ("schottky-exhaust", ["colour=blue"]),
        ("schottky-validate", ["configuration=custom"]),
        ("schottky-validate", ["spacing=1.5"]),
        ("cantor-circles", ["k=41"]),
        ("pants-distance", ["i=2", "j=2"]),
        ("pants-distance", ["lengths=[1.5, 1, 1]"]),
        ("pants-distance", ['lengths=["0", "1", "1"]']),
        ("qs-scan", ["x_nodes=32"]),
        ("qs-scan", ["map.k=1"]),
        ("qs-scan", ["map.kappa=3"]),
        ("de-extend", ["map.kind=samples"]),
        ("de-extend", ["nodes=64"]),
        ("annulus-glue", ["side_dilatations=[0.5, 1]"]),
        ("xinfty-build", ["generations=0"]),
        ("spectrum-obstruct", ["formats=[\"pdf\"]"]),
    ],
)
def test_scene_preconditions(command, overrides):
    """Test module preconditions are enforced by the schema."""
    with pytest.raises(ConfigError):
        load_scene(command=command, overrides=overrides)


def test_scene_needs_known_command():
    """Test missing and unknown commands are config errors."""
    with pytest.raises(ConfigError):
        load_scene()
    with pytest.raises(ConfigError):
        load_scene(overrides=["command=teleport"])


def test_scene_files(tmp_path):
    """Test JSON and TOML scene files load, with overrides on top."""
    toml_path = tmp_path / "scene.toml"
    toml_path.write_text(
        'command = "qs-scan"\nformats = ["json", "csv"]\n\n[map]\nkind = "power"\nk = 3.0\nalpha = 2.0\n'
    )
    scene = load_scene(toml_path, ["map.alpha=0.5"])
    assert scene.map.k == 3.0
    assert scene.map.alpha == 0.5
    assert scene.formats == ["json", "csv"]

    json_path = tmp_path / "scene.json"
    json_path.write_text(json.dumps({"command": "cantor-circles", "k": 5}))
    assert load_scene(json_path).k == 5


def test_scene_file_errors(tmp_path):
    """Test missing, malformed and mismatched scene files."""
    with pytest.raises(ConfigError):
        load_scene(tmp_path / "missing.json")

    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ConfigError):
        load_scene(bad)

    yaml = tmp_path / "scene.yaml"
    yaml.write_text("command: cantor-circles\n")
    with pytest.raises(ConfigError):
        load_scene(yaml)

    other = tmp_path / "other.json"
    other.write_text(json.dumps({"command": "cantor-graph"}))
    with pytest.raises(ConfigError):
        load_scene(other, command="cantor-circles")


def test_custom_disks_scene():
    """Test explicit disks are accepted with the custom configuration."""
    disks = '[{"center": [-3, 0], "radius": 1}, {"center": [3, 0], "radius": 1}, '
    disks += '{"center": [-6, 0], "radius": 1}, {"center": [6, 0], "radius": 1}]'
    scene = load_scene(command="schottky-validate", overrides=["configuration=custom", f"disks={disks}"])
    assert len(scene.disks) == 4
    assert scene.disks[1].center == (3.0, 0.0)


def test_parse_override_values():
    """Test override values keep JSON types and fall back to strings."""
    assert parse_override("n=3") == (["n"], 3)
    assert parse_override("strict=true") == (["strict"], True)
    assert parse_override("length=1/3") == (["length"], "1/3")
    assert parse_override("map.alpha=0.5") == (["map", "alpha"], 0.5)
    with pytest.raises(ConfigError):
        parse_override("novalue")
    with pytest.raises(ConfigError):
        parse_override("=3")


def test_apply_overrides_does_not_mutate():
    """Test overrides work on a copy and refuse to descend into scalars."""
    data = {"command": "qs-scan", "map": {"alpha": 2.0}}
    out = apply_overrides(data, ["map.k=3"])
    assert out["map"] == {"alpha": 2.0, "k": 3}
    assert "k" not in data["map"]
    with pytest.raises(ConfigError):
        apply_overrides(data, ["map.alpha.x=1"])


def test_scene_json_schema_covers_commands():
    """Test the published schema is discriminated on every command."""
    schema = scene_json_schema()
    assert set(schema["discriminator"]["mapping"]) == set(COMMANDS)
    assert len(schema["oneOf"]) == len(COMMANDS)


SCENES = sorted((Path(__file__).resolve().parent.parent / "scenes").glob("*.*"))


@pytest.mark.parametrize("path", SCENES, ids=[p.name for p in SCENES])
def test_shipped_scenes_validate(path):
    """Test every scene file in scenes/ validates against its command."""
    scene = load_scene(path)
    assert scene.command in COMMANDS
