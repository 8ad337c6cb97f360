import csv
import io
import json
import subprocess
import sys

import pytest

from nvmio_lab.cli import main
from nvmio_lab.reporting import dumps_canonical

CONFIG = """\
[workload]
nodes = 4
procs_per_node = 4
aggregators_per_node = 1
segment_count = 2
block_size_mb = 512
transfer_size_mb = 16
reorder_random = true
direction = write

[comm]
t_s_s = 5.39e-3
t_w_s_per_mb = 3.35e-2
"""


@pytest.fixture()
def config_path(tmp_path):
    path = tmp_path / "validation_4node.ini"
    path.write_text(CONFIG, encoding="utf-8")
    return str(path)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_predict_reproduces_published_total(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "predict", "--config", config_path, "--device", "NVM", "--tau", "1.0",
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    rows = {r["strategy"]: r for r in doc["predictions"]}
    assert rows["collective"]["total_s"] == pytest.approx(284.48, abs=0.01)
    assert rows["collective"]["t_comm_s"] == pytest.approx(138.596, abs=1e-3)
    assert rows["individual"]["t_comm_s"] == 0.0
    assert doc["schedule"]["iterations"] == 256


def test_predict_unknown_device_exits_1(capsys, config_path):
    code, _, err = run_cli(capsys, "predict", "--config", config_path, "--device", "FOO")
    assert code == 1
    assert "FOO" in err


def test_predict_requires_workload(capsys, tmp_path):
    empty = tmp_path / "empty.ini"
    empty.write_text("[comm]\nt_s_s = 0.001\nt_w_s_per_mb = 0.01\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "predict", "--config", str(empty), "--device", "NVM")
    assert code == 1
    assert "workload" in err


def test_decide_ssd_prefers_individual(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "decide", "--config", config_path, "--device", "SSD", "--tau", "1.0",
        "--format", "json",
    )
    assert code == 0
    row = json.loads(out)[0]
    assert row["strategy"] == "individual"
    assert row["benefit_s"] < 0


def test_decide_hdd_prefers_collective(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "decide", "--config", config_path, "--device", "HDD", "--tau", "1.0",
        "--format", "json",
    )
    row = json.loads(out)[0]
    assert code == 0
    assert row["strategy"] == "collective"
    assert row["benefit_s"] > 0


def test_predict_csv_columns(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "predict", "--config", config_path, "--device", "HDD", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["device", "strategy", "t_comm_s", "t_io_s", "t_other_s", "total_s"]
    assert [r[1] for r in rows[1:]] == ["collective", "individual"]


def test_profiles_table(capsys):
    code, out, _ = run_cli(capsys, "profiles")
    assert code == 0
    for name in ("HDD", "SSD", "NVM", "DRAM"):
        assert name in out


def test_sweep_csv_columns(capsys):
    code, out, _ = run_cli(
        capsys, "sweep", "--msg-sizes-mb", "0.03125,2,16", "--format", "csv"
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["device", "msg_size_mb", "shuffle_cost_s", "benefit_s"]
    assert len(rows) == 1 + 9
    assert "\r" not in out


def test_sweep_rejects_bad_sizes(capsys):
    code, _, err = run_cli(capsys, "sweep", "--msg-sizes-mb", "1,two")
    assert code == 1
    assert "msg-sizes" in err


def test_simulate_collective_summary(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "simulate", "--config", config_path, "--strategy", "collective",
        "--device", "NVM", "--tau", "1.0", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["makespan_s"] == pytest.approx(284.48, abs=0.01)
    assert doc["aggregators"] == 4


def test_simulate_per_iteration_csv(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "simulate", "--config", config_path, "--strategy", "collective",
        "--device", "NVM", "--tau", "1.0", "--format", "csv", "--per-iteration",
    )
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["aggregator", "iteration", "shuffle_s", "io_s"]
    assert len(rows) == 1 + 4 * 256


def test_simulate_individual(capsys, config_path):
    code, out, _ = run_cli(
        capsys, "simulate", "--config", config_path, "--strategy", "individual",
        "--device", "HDD", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["makespan_s"] == pytest.approx(613.17, abs=0.01)


def test_cache_sim(capsys):
    code, out, _ = run_cli(
        capsys, "cache-sim", "--device", "NVM", "--pattern", "read-write-mix",
        "--working-set-mb", "4", "--passes", "2", "--capacity-mb", "8",
        "--page-size-kb", "4", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["misses"] == 1024  # cold write sweep
    assert doc["hits"] == 1024


def test_cache_sim_needs_cache_parameters(capsys):
    code, _, err = run_cli(
        capsys, "cache-sim", "--device", "NVM", "--pattern", "streaming-read",
        "--working-set-mb", "4",
    )
    assert code == 1
    assert "capacity" in err


def test_calibrate(capsys, tmp_path):
    samples = tmp_path / "samples.csv"
    samples.write_text("msg_size_mb,elapsed_s\n1.0,0.03889\n2.0,0.07239\n", encoding="utf-8")
    code, out, _ = run_cli(capsys, "calibrate", "--samples", str(samples), "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["t_s_s"] == pytest.approx(5.39e-3, rel=1e-9)
    assert doc["t_w_s_per_mb"] == pytest.approx(3.35e-2, rel=1e-9)


def test_calibrate_insufficient_samples(capsys, tmp_path):
    samples = tmp_path / "one.csv"
    samples.write_text("msg_size_mb,elapsed_s\n4.0,0.14\n", encoding="utf-8")
    code, _, err = run_cli(capsys, "calibrate", "--samples", str(samples))
    assert code == 1
    assert "2 samples" in err


def test_validate_passes_and_reports_every_cell(capsys):
    code, out, _ = run_cli(capsys, "validate", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["ok"] is True
    names = [c["name"] for c in doc["cells"]]
    assert len(names) == len(set(names))
    assert all(c["provenance"] for c in doc["cells"])


def test_validate_tightened_tolerances_exit_2(capsys):
    code, out, _ = run_cli(capsys, "validate", "--tolerance-scale", "0", "--format", "json")
    assert code == 2
    doc = json.loads(out)
    assert doc["ok"] is False


def test_json_output_round_trips(capsys, config_path):
    for argv in (
        ["predict", "--config", config_path, "--device", "SSD", "--format", "json"],
        ["validate", "--format", "json"],
        ["sweep", "--msg-sizes-mb", "1,2", "--format", "json"],
    ):
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        assert dumps_canonical(json.loads(out)) == out


def test_format_env_var_default(capsys, monkeypatch):
    monkeypatch.setenv("NVMIO_LAB_FORMAT", "json")
    code, out, _ = run_cli(capsys, "profiles")
    assert code == 0
    json.loads(out)


def test_usage_error_exits_1(capsys):
    code, _, _ = run_cli(capsys, "predict")  # missing --device
    assert code == 1
    code, _, _ = run_cli(capsys, "no-such-command")
    assert code == 1


def test_console_entry_point(config_path):
    result = subprocess.run(
        [sys.executable, "-m", "nvmio_lab.cli", "decide", "--config", config_path,
         "--device", "NVM", "--tau", "1.0"],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    assert "individual" in result.stdout
