import json
import math
from pathlib import Path

import pandas as pd
import pytest
from click.testing import CliRunner

from dsc.cli import cli, get_all_experiment_info, get_experiment
from dsc.core.errors import ConfigError

AFFINE = {"kind": "periodic", "map": {"type": "affine", "c": 1.5, "d": 0.5}}
POWER_OF_TWO = {"kind": "periodic", "map": {"type": "affine", "c": 0.0, "d": 1.0}}
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def runner():
    return CliRunner()


def write_config(path, **config):
    path.write_text(json.dumps(config), encoding="utf-8")
    return path


def read_table(path):
    with path.open(encoding="utf-8") as handle:
        header = handle.readline()
        return header, pd.read_csv(handle)


def test_list_experiments(runner):
    result = runner.invoke(cli, ["list"])
    assert result.exit_code == 0
    assert "count: " in result.output
    assert "transfer: " in result.output
    assert len(get_all_experiment_info()) == 12


def test_unknown_experiment_key():
    assert get_experiment("count").description
    with pytest.raises(ConfigError):
        get_experiment("nope")


def test_count_writes_table_and_manifest(runner, tmp_path):
    config = write_config(tmp_path / "count.json", symbol=AFFINE, targets=[1.75], weights=[1.0])
    out = tmp_path / "out"
    result = runner.invoke(cli, ["--config", str(config), "--out", str(out), "count"])
    assert result.exit_code == 0, result.output
    header, table = read_table(out / "count.csv")
    assert header.startswith("# weighted mean counting function: M_(phi,a)(w) = lim_(sigma->0+)")
    assert "[units: " in header
    assert table["a"].tolist() == [0.0, 1.0]
    assert table["value"].tolist() == pytest.approx([math.log(2), math.log(2)])
    manifest = json.loads((out / "count.manifest.json").read_text(encoding="utf-8"))
    assert manifest["experiment"] == "count"
    assert manifest["config"]["symbol"]["map"]["type"] == "affine"
    assert manifest["outputs"] == [str(out / "count.csv")]
    assert set(manifest["timings"]) == {"load", "run", "write"}


def test_seed_precedence_and_determinism(runner, tmp_path):
    config = write_config(
        tmp_path / "polytorus.json",
        symbol=POWER_OF_TWO,
        targets=[0.25],
        n_samples=500,
        seed=3,
    )
    tables = []
    for name in ("first", "second"):
        out = tmp_path / name
        args = ["--config", str(config), "--seed", "9", "--out", str(out), "polytorus"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        tables.append((out / "polytorus.csv").read_bytes())
        manifest = json.loads((out / "polytorus.manifest.json").read_text(encoding="utf-8"))
        assert manifest["seed"] == 9
    assert tables[0] == tables[1]


def test_excluded_target_exits_with_config_status(runner, tmp_path):
    config = write_config(tmp_path / "littlewood.json", symbol=AFFINE, targets=[1.5])
    result = runner.invoke(cli, ["--config", str(config), "--out", str(tmp_path), "littlewood"])
    assert result.exit_code == 2
    assert "phi(+inf)" in result.output


def test_config_errors_exit_with_status_two(runner, tmp_path):
    missing = runner.invoke(cli, ["--config", str(tmp_path / "absent.json"), "count"])
    assert missing.exit_code == 2
    wrong_kind = write_config(tmp_path / "kernel.json", experiment="kernel", targets=[1.0])
    result = runner.invoke(cli, ["--config", str(wrong_kind), "--out", str(tmp_path), "count"])
    assert result.exit_code == 2
    unknown_field = write_config(tmp_path / "extra.json", symbol=AFFINE, iterations=4)
    result = runner.invoke(cli, ["--config", str(unknown_field), "count"])
    assert result.exit_code == 2


def test_symbol_fixture_file(runner, tmp_path):
    (tmp_path / "symbols").mkdir()
    (tmp_path / "symbols" / "affine.json").write_text(json.dumps(AFFINE), encoding="utf-8")
    config = write_config(
        tmp_path / "littlewood.json", symbol="symbols/affine.json", targets=[1.625], a=0.5
    )
    out = tmp_path / "out"
    result = runner.invoke(cli, ["--config", str(config), "--out", str(out), "littlewood"])
    assert result.exit_code == 0, result.output
    _, table = read_table(out / "littlewood.csv")
    assert table["bound"].tolist() == ["littlewood"]
    assert table["lhs"][0] == pytest.approx(2 * math.log(2))
    assert table["rhs"][0] == pytest.approx(math.log(17))

    broken = write_config(tmp_path / "broken.json", symbol="symbols/none.json", targets=[2])
    result = runner.invoke(cli, ["--config", str(broken), "--out", str(out), "littlewood"])
    assert result.exit_code == 2


def test_stanton_writes_extras(runner, tmp_path):
    config = write_config(
        tmp_path / "stanton.json",
        symbol=AFFINE,
        function={"coeffs": [[2, 1.0, 0.0]]},
        a=0.0,
        output_path=str(tmp_path / "results" / "affine.csv"),
    )
    result = runner.invoke(cli, ["--config", str(config), "stanton"])
    assert result.exit_code == 0, result.output
    header, table = read_table(tmp_path / "results" / "affine.csv")
    assert header.startswith("# Stanton formula: ||f o phi||_a^2 = |f(phi(+inf))|^2")
    assert table["lhs"][0] == pytest.approx(0.140472, abs=1e-6)
    extras = json.loads((tmp_path / "results" / "affine.json").read_text(encoding="utf-8"))
    assert set(extras) >= {"lhs", "rhs", "grid_spec"}


def test_identity_follows_config(runner, tmp_path):
    config = write_config(
        tmp_path / "identity.json",
        experiment="identity24",
        symbol=POWER_OF_TWO,
        targets=[0.25],
        a=1.0,
        sigmas=[0.5],
    )
    out = tmp_path / "out"
    result = runner.invoke(cli, ["--config", str(config), "--out", str(out), "identity"])
    assert result.exit_code == 0, result.output
    header, table = read_table(out / "identity24.csv")
    assert header.startswith("# Jessen identity: ")
    assert table["identity"].tolist() == ["identity24"]
    assert table["residual"][0] == pytest.approx(0.0, abs=1e-6)


def test_kernel_runs_without_symbol(runner, tmp_path):
    config = write_config(
        tmp_path / "kernel.json", targets=[1.0, 2.0], weights=[1.0], truncation=1000
    )
    out = tmp_path / "out"
    result = runner.invoke(cli, ["--config", str(config), "--out", str(out), "kernel"])
    assert result.exit_code == 0, result.output
    header, table = read_table(out / "kernel.csv")
    assert header.startswith("# reproducing kernel: ")
    assert len(table) == 4
    assert table["kernel_norm_sq"][0] == pytest.approx(math.pi**2 / 6, rel=1e-9)
    assert math.isnan(table["Ja_re"][0])
    assert table["Ja_re"][3] == pytest.approx(math.pi**2 / 6, rel=1e-9)


def test_transfer_command(runner, tmp_path):
    config = write_config(
        tmp_path / "transfer.json", symbol=POWER_OF_TWO, targets=[0.25], a=1.0, sigma=0.5, T=50
    )
    out = tmp_path / "out"
    result = runner.invoke(cli, ["--config", str(config), "--out", str(out), "transfer"])
    assert result.exit_code == 0, result.output
    header, table = read_table(out / "transfer.csv")
    assert header.startswith("# half-strip transference: ")
    assert header.rstrip().endswith("]")
    assert table["lower"][0] == pytest.approx(1.382, abs=1e-3)
    assert bool(table["comparable"][0])


@pytest.mark.parametrize("name", ["count_power_of_two", "count_affine"])
def test_count_matches_golden_table(runner, tmp_path, name):
    config = GOLDEN / f"{name}.json"
    tables = []
    for run in ("first", "second"):
        out = tmp_path / run
        result = runner.invoke(cli, ["--config", str(config), "--out", str(out), "count"])
        assert result.exit_code == 0, result.output
        tables.append((out / "count.csv").read_bytes())
    assert tables[0] == tables[1]
    assert tables[0] == (GOLDEN / f"{name}.csv").read_bytes()
