import csv

import pytest
from click.testing import CliRunner

from qotp.cli import cli
from qotp.config import CONFIG_ENV_VAR


@pytest.fixture(autouse=True)
def no_config_env(monkeypatch):
    monkeypatch.delenv(CONFIG_ENV_VAR, raising=False)


@pytest.fixture
def runner():
    return CliRunner()


def read_csv_rows(path):
    lines = path.read_text(encoding="utf-8").splitlines()
    return lines[:2], list(csv.DictReader(lines[2:]))


def test_demo_is_deterministic(runner):
    """Test that the demo trace depends only on the seed"""
    first = runner.invoke(cli, ["demo", "--seed", "7"])
    second = runner.invoke(cli, ["demo", "--seed", "7"])
    assert first.exit_code == 0, first.output
    assert first.stdout == second.stdout
    lines = first.stdout.splitlines()
    assert lines[1].startswith("keygen: lambda=4")
    assert lines[2].startswith("token tk-")
    assert "second evaluation refused" in lines[-1]
    assert "evaluation queries = 1" in lines
    assert runner.invoke(cli, ["demo", "--seed", "8"]).stdout != first.stdout


def test_demo_statevector_checks_dual_identity(runner):
    """Test the Hadamard identity line of the exact simulator"""
    result = runner.invoke(cli, ["demo", "--mode", "statevector", "--lambda", "4", "--program", "identity-r"])
    assert result.exit_code == 0, result.output
    assert "A⊥ verified for 1 subspaces" in result.stdout


def test_config_errors_exit_1(runner, tmp_path):
    """Test odd lambda, unknown adversaries and missing config files"""
    assert runner.invoke(cli, ["demo", "--lambda", "5"]).exit_code == 1
    assert runner.invoke(cli, ["game", "--adversary", "nobody", "--out", str(tmp_path)]).exit_code == 1
    assert runner.invoke(cli, ["demo", "--config", str(tmp_path / "none.yaml")]).exit_code == 1


def test_unknown_programs_exit_1(runner, tmp_path):
    """Test that program ids are checked with the rest of the config"""
    for program in ("no-such-program", "table:missing", str(tmp_path / "absent.tt")):
        result = runner.invoke(cli, ["entropy", "--program", program, "--out", str(tmp_path)])
        assert result.exit_code == 1, program


def test_runtime_errors_exit_2(runner, tmp_path):
    """Test that failures after validation exit with 2"""
    table = tmp_path / "broken.tt"
    table.write_text("1 1 1\n0 1 0\n", encoding="utf-8")
    result = runner.invoke(cli, ["entropy", "--program", str(table), "--out", str(tmp_path)])
    assert result.exit_code == 2


def test_game_writes_reproducible_artifacts(runner, tmp_path):
    """Test the CSV artifact: provenance header, one row per lambda, byte-identical reruns"""
    args = ["game", "--game", "forgery", "--lambda", "4", "--lambda", "6", "--trials", "200", "--out", str(tmp_path)]
    result = runner.invoke(cli, args)
    assert result.exit_code == 0, result.output
    path = tmp_path / "forgery.csv"
    first = path.read_bytes()
    header, rows = read_csv_rows(path)
    assert header[0].startswith("# config ")
    assert header[1].startswith("# md5 ")
    assert [row["game"] for row in rows] == ["forgery", "forgery"]
    assert all(float(row["ci_lo"]) <= float(row["estimate"]) <= float(row["ci_hi"]) for row in rows)
    assert (tmp_path / "forgery_transcripts.json").exists()

    assert runner.invoke(cli, args).exit_code == 0
    assert path.read_bytes() == first


def test_game_from_config_file(runner, tmp_path):
    """Test a sweep configured by YAML with a flag override"""
    config = tmp_path / "rewind.yaml"
    config.write_text(f"game: rewind\nprogram: identity-x\ntrials: 8\nout: {tmp_path / 'out'}\n", encoding="utf-8")
    result = runner.invoke(cli, ["game", "--config", str(config), "--accept-zero-tag"])
    assert result.exit_code == 0, result.output
    _, rows = read_csv_rows(tmp_path / "out" / "rewind.csv")
    assert rows[0]["wins"] == "8"


def test_entropy_command(runner, tmp_path):
    """Test the min-entropy report and the zero-entropy warning"""
    result = runner.invoke(cli, ["entropy", "--program", "identity-r", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "tau = 4 (r_bits = 4)" in result.stdout
    assert (tmp_path / "entropy_identity-r.csv").exists()

    result = runner.invoke(cli, ["entropy", "--program", "table:ai_stub", "--out", str(tmp_path)])
    assert "tau = 1 (r_bits = 6)" in result.stdout

    result = runner.invoke(cli, ["entropy", "--program", "constant", "--out", str(tmp_path)])
    assert result.exit_code == 0
    assert "tau = 0" in result.stdout
    assert "tau = 0: the one-time security guarantee does not apply" in result.output


def test_report_checks_fingerprints(runner, tmp_path):
    """Test report rendering and detection of edited provenance"""
    assert runner.invoke(cli, ["entropy", "--program", "r-mod-4", "--out", str(tmp_path)]).exit_code == 0
    result = runner.invoke(cli, ["report", "--out", str(tmp_path)])
    assert result.exit_code == 0, result.output
    assert "fingerprint ok" in result.stdout

    path = tmp_path / "entropy_r-mod-4.csv"
    path.write_text(path.read_text(encoding="utf-8").replace('"seed":0', '"seed":1', 1), encoding="utf-8")
    assert runner.invoke(cli, ["report", "--out", str(tmp_path)]).exit_code == 2


def test_report_needs_an_existing_directory(runner, tmp_path):
    """Test report on a missing directory"""
    assert runner.invoke(cli, ["report", "--out", str(tmp_path / "absent")]).exit_code == 1
