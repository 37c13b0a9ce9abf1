"""
Tests of the command line verbs.
"""
from pathlib import Path
import pytest
from click.testing import CliRunner
from db.artifacts import read_csv
from main import cli
from services.experiments import PRESETS


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def test_presets_lists_every_preset(runner: CliRunner) -> None:
    result = runner.invoke(cli, ["presets"])
    assert result.exit_code == 0, result.output
    for name in PRESETS:
        assert f"{name}:" in result.output


def test_baselines_write_curves(runner: CliRunner, tmp_path: Path) -> None:
    result = runner.invoke(cli, ["baselines", "--preset", "micro",
                                 "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    directory = tmp_path / "micro" / "baselines"
    for name in ("top", "periodic_k30"):
        _, header, rows = read_csv(directory / f"{name}.csv")
        assert header[:2] == ["time", "qfi"]
        assert len(rows) == 4


def test_train_then_replay(runner: CliRunner, tmp_path: Path) -> None:
    result = runner.invoke(cli, [
        "train", "--preset", "micro", "--iterations", "1", "--episodes",
        "10", "--jobs", "1", "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    bundle_dir = tmp_path / "micro" / "train"
    assert (bundle_dir / "policy.txt").exists()
    replayed = runner.invoke(cli, ["replay", str(bundle_dir)])
    assert replayed.exit_code == 0, replayed.output
    assert "reproduced" in replayed.output


def test_replay_of_empty_directory_fails(runner: CliRunner,
                                         tmp_path: Path) -> None:
    result = runner.invoke(cli, ["replay", str(tmp_path)])
    assert result.exit_code == 1
    assert "ArtifactError" in result.output


def test_export_final_grid(runner: CliRunner, tmp_path: Path) -> None:
    result = runner.invoke(cli, [
        "export", "--preset", "micro", "--kind", "husimi", "--n-theta", "4",
        "--n-phi", "8", "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    _, header, rows = read_csv(tmp_path / "micro" / "export"
                               / "husimi_final.csv")
    assert header == ["theta", "phi", "value"]
    assert len(rows) == 32


def test_export_classical_frames(runner: CliRunner, tmp_path: Path) -> None:
    result = runner.invoke(cli, [
        "export", "--preset", "micro", "--kind", "classical", "--frames",
        "--size", "50", "--out-dir", str(tmp_path)])
    assert result.exit_code == 0, result.output
    files = sorted((tmp_path / "micro" / "export").glob("classical_frame*"))
    assert len(files) == 4


def test_bad_gamma_list(runner: CliRunner) -> None:
    result = runner.invoke(cli, ["sweep", "--gammas", "a,b"])
    assert result.exit_code == 2
    assert "not a list of numbers" in result.output


def test_unknown_preset_choice(runner: CliRunner) -> None:
    result = runner.invoke(cli, ["baselines", "--preset", "nope"])
    assert result.exit_code == 2


def test_study_needs_a_grid(runner: CliRunner) -> None:
    result = runner.invoke(cli, ["study", "--iteration-grid", ""])
    assert result.exit_code == 2
    assert "--episode-grid" in result.output
