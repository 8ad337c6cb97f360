import pytest

from nvmio_lab.config import AppConfig, ConfigError, load_config, resolve_device
from nvmio_lab.workload import Direction

GOOD = """\
[workload]
nodes = 4
procs_per_node = 4
aggregators_per_node = 1
segment_count = 2
block_size_mb = 512
transfer_size_mb = 16
reorder_random = true
direction = write
tau = 1.0

[comm]
t_s_s = 5.39e-3
t_w_s_per_mb = 3.35e-2

[device]
name = ARRAY
bdw_seq_mbps = 300
bdw_ran_mbps = 250

[cache]
capacity_mb = 64
page_size_kb = 4
flush_at_end = true
"""


def write(tmp_path, text, name="cfg.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_full_config(tmp_path):
    cfg = load_config(write(tmp_path, GOOD))
    assert cfg.workload.nodes == 4
    assert cfg.workload.block_size == 512.0
    assert cfg.workload.direction is Direction.WRITE
    assert cfg.tau == 1.0
    assert cfg.comm.t_s == 5.39e-3
    assert cfg.device.name == "ARRAY"
    assert cfg.cache.capacity_mb == 64.0
    assert cfg.cache.flush_at_end is True


def test_missing_file():
    with pytest.raises(ConfigError, match="not found"):
        load_config("/nonexistent/path.ini")


def test_unknown_section_is_named(tmp_path):
    with pytest.raises(ConfigError, match=r"\[typo\]"):
        load_config(write(tmp_path, "[typo]\nx = 1\n"))


def test_unknown_key_is_named(tmp_path):
    bad = GOOD.replace("tau = 1.0", "tua = 1.0")
    with pytest.raises(ConfigError, match="tua"):
        load_config(write(tmp_path, bad))


def test_bad_value_names_key(tmp_path):
    bad = GOOD.replace("nodes = 4", "nodes = four")
    with pytest.raises(ConfigError, match="nodes"):
        load_config(write(tmp_path, bad))


def test_missing_required_key(tmp_path):
    bad = GOOD.replace("transfer_size_mb = 16\n", "")
    with pytest.raises(ConfigError, match="transfer_size_mb"):
        load_config(write(tmp_path, bad))


def test_invalid_tau_rejected(tmp_path):
    bad = GOOD.replace("tau = 1.0", "tau = 1.5")
    with pytest.raises(ConfigError, match="tau"):
        load_config(write(tmp_path, bad))


def test_builtin_device_names_reserved(tmp_path):
    bad = GOOD.replace("name = ARRAY", "name = NVM")
    with pytest.raises(ConfigError, match="reserved"):
        load_config(write(tmp_path, bad))


def test_invalid_device_bandwidths(tmp_path):
    bad = GOOD.replace("bdw_ran_mbps = 250", "bdw_ran_mbps = 400")
    with pytest.raises(ConfigError, match="bdw_ran"):
        load_config(write(tmp_path, bad))


def test_resolve_device_builtin_and_custom(tmp_path):
    cfg = load_config(write(tmp_path, GOOD))
    assert resolve_device("HDD").bdw_seq == 58.11
    assert resolve_device("ARRAY", cfg).bdw_seq == 300.0
    with pytest.raises(ConfigError, match="FOO"):
        resolve_device("FOO", cfg)


def test_require_helpers():
    empty = AppConfig()
    with pytest.raises(ConfigError):
        empty.require_workload()
    with pytest.raises(ConfigError):
        empty.require_comm()


def test_direction_read(tmp_path):
    cfg = load_config(write(tmp_path, GOOD.replace("direction = write", "direction = read")))
    assert cfg.workload.direction is Direction.READ
    with pytest.raises(ConfigError, match="direction"):
        load_config(write(tmp_path, GOOD.replace("direction = write", "direction = sideways")))
