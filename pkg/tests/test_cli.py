"""Tests for the command line: exit codes, flags and scene files."""

import json

import pytest
from typer.testing import CliRunner

from schottkit import __version__
from schottkit.cli import app


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """Keep the user's ~/.schottkit/config.toml out of CLI runs."""
    from schottkit.config import settings as settings_module

    monkeypatch.setattr(settings_module, "DEFAULT_CONFIG_PATH", tmp_path / "no-config.toml")
    monkeypatch.setattr(settings_module, "_settings", None)


def test_version(runner):
    """Test the version command prints the package version."""
    result = runner.invoke(app, ["version"])
    assert result.exit_code == 0
    assert __version__ in result.output


def test_exhaust_writes_artifacts(runner, tmp_path):
    """Test a passing run exits 0 and writes JSON plus the report."""
    out = tmp_path / "out"
    result = runner.invoke(app, ["schottky-exhaust", "--set", "genus=2", "--set", "n=2", "-o", str(out)])
    assert result.exit_code == 0, result.output
    data = json.loads((out / "schottky-exhaust.json").read_text())
    assert data["copies"] == [1, 5, 17]
    assert json.loads((out / "schottky-exhaust.report.json").read_text())["passed"] is True


def test_format_flag(runner, tmp_path):
    """Test repeated --format flags replace the default formats."""
    result = runner.invoke(app, ["cantor-circles", "--set", "k=2", "-o", str(tmp_path), "-f", "json", "-f", "csv"])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "cantor-circles.csv").exists()
    assert not (tmp_path / "cantor-circles.svg").exists()


def test_config_error_exit_code(runner, tmp_path):
    """Test an invalid scene exits 2 and writes nothing."""
    result = runner.invoke(app, ["schottky-limitset", "--set", "depth=-1", "-o", str(tmp_path)])
    assert result.exit_code == 2
    assert list(tmp_path.iterdir()) == []


def test_unsupported_format_exit_code(runner, tmp_path):
    """Test a format the command cannot write is a configuration error."""
    result = runner.invoke(app, ["spectrum-obstruct", "-f", "svg", "-o", str(tmp_path)])
    assert result.exit_code == 2


def test_module_error_exit_code(runner, tmp_path):
    """Test a degenerate group exits 3."""
    result = runner.invoke(app, ["schottky-limitset", "--set", "configuration=tangent", "-o", str(tmp_path)])
    assert result.exit_code == 3
    assert "DegenerateGroupError" in result.output


def test_failed_check_exit_code(runner, tmp_path):
    """Test an invalid verdict under lenient validation exits 4."""
    disks = json.dumps([{"center": [x, 0], "radius": 1} for x in (-0.5, 0.5, -6, 6)])
    result = runner.invoke(
        app,
        [
            "schottky-validate",
            "--set",
            "configuration=custom",
            "--set",
            f"disks={disks}",
            "-o",
            str(tmp_path),
        ],
    )
    assert result.exit_code == 4
    assert "FAIL" in result.output
    assert (tmp_path / "schottky-validate.json").exists()


def test_run_scene_file(runner, tmp_path):
    """Test `run` dispatches on the command named in a TOML scene."""
    scene = tmp_path / "graph.toml"
    scene.write_text(f'command = "cantor-graph"\nk = 2\nname = "g2"\noutput_dir = "{tmp_path.as_posix()}"\n')
    result = runner.invoke(app, ["run", str(scene), "--json"])
    assert result.exit_code == 0, result.output
    assert (tmp_path / "g2.dot").exists()
    assert (tmp_path / "g2.report.json").exists()


def test_scene_option_must_match_command(runner, tmp_path):
    """Test a scene file for another command is refused."""
    scene = tmp_path / "scene.json"
    scene.write_text(json.dumps({"command": "cantor-graph"}))
    result = runner.invoke(app, ["cantor-circles", "--scene", str(scene), "-o", str(tmp_path)])
    assert result.exit_code == 2


def test_commands_listing(runner):
    """Test every batch command is listed."""
    result = runner.invoke(app, ["commands"])
    assert result.exit_code == 0
    for name in ("schottky-validate", "pants-distance", "annulus-glue"):
        assert name in result.output


def test_schema_output(runner, tmp_path):
    """Test the scene schema can be written to a file."""
    path = tmp_path / "scene.schema.json"
    result = runner.invoke(app, ["schema", "-o", str(path)])
    assert result.exit_code == 0
    schema = json.loads(path.read_text())
    assert "xinfty-build" in schema["discriminator"]["mapping"]
