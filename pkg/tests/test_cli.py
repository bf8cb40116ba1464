"""Command-line interface contracts: verbs, exit codes, byte-stable output."""

import pytest
from click.testing import CliRunner

from cnoma_oam.cli import cli
from cnoma_oam.experiments import figure_preset, serialize_config

FAST = ["--trials", "400"]


@pytest.fixture()
def runner():
    return CliRunner()


def test_figure_emits_expected_csv(runner):
    result = runner.invoke(cli, ["figure", "fig5", *FAST, "--seed", "42"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "axis,axis_value,scheme,metric,mean,std_error,n_trials"
    assert len(lines) == 1 + 7 * 4  # 7 SNR points x 4 schemes x 1 metric


def test_identical_command_lines_are_byte_identical(runner):
    args = ["figure", "fig7", *FAST, "--seed", "7"]
    first = runner.invoke(cli, args)
    second = runner.invoke(cli, args)
    assert first.exit_code == second.exit_code == 0
    assert first.output == second.output


def test_figure_rejects_unknown_id(runner):
    result = runner.invoke(cli, ["figure", "fig42"])
    assert result.exit_code == 2


def test_figure_with_override(runner):
    base = runner.invoke(cli, ["figure", "fig5", *FAST])
    overridden = runner.invoke(cli, ["figure", "fig5", *FAST,
                                     "--overrides", "eta=0.1"])
    assert overridden.exit_code == 0
    assert overridden.output != base.output


def test_figure_rejects_malformed_override(runner):
    result = runner.invoke(cli, ["figure", "fig5", *FAST, "--overrides", "eta:0.1"])
    assert result.exit_code == 2
    assert "key=value" in result.output


def test_figure_rejects_unknown_override_key(runner):
    result = runner.invoke(cli, ["figure", "fig5", *FAST,
                                 "--overrides", "bandwidth=1"])
    assert result.exit_code == 2


def test_figure_writes_file(runner, tmp_path):
    out = tmp_path / "fig5.csv"
    result = runner.invoke(cli, ["figure", "fig5", *FAST, "--out", str(out)])
    assert result.exit_code == 0
    assert out.read_text(encoding="utf-8").startswith("axis,")


def test_out_resolves_under_env_dir(runner, tmp_path, monkeypatch):
    monkeypatch.setenv("CNOMA_OAM_OUTDIR", str(tmp_path))
    result = runner.invoke(cli, ["figure", "fig5", *FAST, "--out", "nested.csv"])
    assert result.exit_code == 0
    assert (tmp_path / "nested.csv").exists()


def test_unwritable_output_is_a_runtime_error(runner, tmp_path, monkeypatch):
    monkeypatch.delenv("CNOMA_OAM_OUTDIR", raising=False)
    result = runner.invoke(cli, ["figure", "fig5", *FAST, "--out",
                                 str(tmp_path / "no-such-dir" / "x.csv")])
    assert result.exit_code == 1


def test_seed_defaults_to_42(runner):
    implicit = runner.invoke(cli, ["figure", "fig5", *FAST])
    explicit = runner.invoke(cli, ["figure", "fig5", *FAST, "--seed", "42"])
    assert implicit.output == explicit.output


def test_point_prints_one_row_per_scheme(runner):
    result = runner.invoke(cli, ["point", *FAST, "--overrides", "rho_db=15"])
    assert result.exit_code == 0
    lines = result.output.splitlines()
    assert lines[0] == "scheme,c_ue1,c_ue2,c_sum,ee,n_trials"
    assert len(lines) == 5
    assert lines[1].startswith("cnoma-ps-oam,")


def test_sweep_runs_config_file(runner, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(serialize_config(figure_preset("fig5", n_trials=400)),
                   encoding="utf-8")
    result = runner.invoke(cli, ["sweep", str(cfg)])
    assert result.exit_code == 0
    assert len(result.output.splitlines()) == 1 + 7 * 4


def test_sweep_flag_overrides_config(runner, tmp_path):
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(serialize_config(figure_preset("fig5", n_trials=400)),
                   encoding="utf-8")
    result = runner.invoke(cli, ["sweep", str(cfg), "--trials", "200"])
    assert result.exit_code == 0
    assert result.output.splitlines()[1].endswith(",200")


def test_sweep_missing_config_is_validation_error(runner, tmp_path):
    result = runner.invoke(cli, ["sweep", str(tmp_path / "absent.cfg")])
    assert result.exit_code == 2


def test_sweep_out_flag_beats_config_output_path(runner, tmp_path):
    spec = figure_preset("fig5", n_trials=400,
                         output_path=str(tmp_path / "from_config.csv"))
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(serialize_config(spec), encoding="utf-8")
    out = tmp_path / "from_flag.csv"
    result = runner.invoke(cli, ["sweep", str(cfg), "--out", str(out)])
    assert result.exit_code == 0
    assert out.exists()
    assert not (tmp_path / "from_config.csv").exists()


def test_sweep_config_output_path_used_without_flag(runner, tmp_path):
    target = tmp_path / "from_config.csv"
    spec = figure_preset("fig5", n_trials=400, output_path=str(target))
    cfg = tmp_path / "sweep.cfg"
    cfg.write_text(serialize_config(spec), encoding="utf-8")
    result = runner.invoke(cli, ["sweep", str(cfg)])
    assert result.exit_code == 0
    assert result.output == ""
    assert target.read_text(encoding="utf-8").startswith("axis,")


def test_validate_accepts_every_shipped_preset(runner, tmp_path):
    for figure_id in ("fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10"):
        cfg = tmp_path / f"{figure_id}.cfg"
        cfg.write_text(serialize_config(figure_preset(figure_id)), encoding="utf-8")
        result = runner.invoke(cli, ["validate", str(cfg)])
        assert result.exit_code == 0, result.output
        assert result.output.startswith("OK")


def test_validate_rejects_swapped_power_coefficients(runner, tmp_path):
    spec = figure_preset("fig5")
    text = serialize_config(spec).replace("p_n = 0.4", "p_n = 0.6")
    text = text.replace("p_f = 0.6", "p_f = 0.4")
    cfg = tmp_path / "bad.cfg"
    cfg.write_text(text, encoding="utf-8")
    result = runner.invoke(cli, ["validate", str(cfg)])
    assert result.exit_code == 2
    assert "p_n < p_f" in result.output


def test_validate_rejects_unknown_key(runner, tmp_path):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("axis = delta\naxis_values = 0.1, 0.2\nwarp = 9\n",
                   encoding="utf-8")
    result = runner.invoke(cli, ["validate", str(cfg)])
    assert result.exit_code == 2
    assert "unknown" in result.output
