"""INI-style configuration ingestion.

Sections and keys:

    [workload]  nodes, procs_per_node, aggregators_per_node,
                segment_count, block_size_mb, transfer_size_mb,
                reorder_random, direction, tau (optional override)
    [device]    name, bdw_seq_mbps, bdw_ran_mbps   (one custom profile)
    [comm]      t_s_s, t_w_s_per_mb
    [cache]     capacity_mb, page_size_kb, flush_at_end

Unknown sections or keys are rejected with the offending name, as are
values that fail domain validation. Builtin device names are reserved.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass
from pathlib import Path

from .commnet import CommParams
from .devices import BUILTIN_NAMES, DeviceProfile, builtin_profiles
from .simulator import PageCacheConfig
from .workload import Direction, WorkloadSpec


class ConfigError(ValueError):
    """Malformed or invalid configuration file."""


_WORKLOAD_KEYS = {
    "nodes",
    "procs_per_node",
    "aggregators_per_node",
    "segment_count",
    "block_size_mb",
    "transfer_size_mb",
    "reorder_random",
    "direction",
    "tau",
}
_DEVICE_KEYS = {"name", "bdw_seq_mbps", "bdw_ran_mbps"}
_COMM_KEYS = {"t_s_s", "t_w_s_per_mb"}
_CACHE_KEYS = {"capacity_mb", "page_size_kb", "flush_at_end"}
_SECTIONS = {
    "workload": _WORKLOAD_KEYS,
    "device": _DEVICE_KEYS,
    "comm": _COMM_KEYS,
    "cache": _CACHE_KEYS,
}


@dataclass(frozen=True)
class AppConfig:
    """Parsed configuration; absent sections are None."""

    workload: WorkloadSpec | None = None
    tau: float | None = None
    device: DeviceProfile | None = None
    comm: CommParams | None = None
    cache: PageCacheConfig | None = None

    def require_workload(self) -> WorkloadSpec:
        if self.workload is None:
            raise ConfigError("a [workload] section is required for this command")
        return self.workload

    def require_comm(self) -> CommParams:
        if self.comm is None:
            raise ConfigError("a [comm] section is required for this command")
        return self.comm


def _get(section: configparser.SectionProxy, key: str, convert, section_name: str):
    raw = section.get(key)
    if raw is None:
        raise ConfigError(f"[{section_name}] is missing required key {key!r}")
    try:
        return convert(raw)
    except ValueError:
        raise ConfigError(f"[{section_name}] {key} = {raw!r}: not a valid value") from None


def _to_bool(raw: str) -> bool:
    lowered = raw.strip().lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ValueError(raw)


def load_config(path: str | Path) -> AppConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError(f"config file not found: {path}")
    parser = configparser.ConfigParser(interpolation=None)
    try:
        with path.open(encoding="utf-8") as fh:
            parser.read_file(fh)
    except configparser.Error as exc:
        raise ConfigError(f"{path}: {exc}") from None

    for section in parser.sections():
        if section not in _SECTIONS:
            raise ConfigError(f"{path}: unknown section [{section}]")
        for key in parser[section]:
            if key not in _SECTIONS[section]:
                raise ConfigError(f"{path}: unknown key {key!r} in [{section}]")

    workload = None
    tau = None
    if parser.has_section("workload"):
        sec = parser["workload"]
        try:
            direction = Direction(sec.get("direction", "write").strip().lower())
        except ValueError:
            raise ConfigError(
                f"[workload] direction = {sec.get('direction')!r}: expected read or write"
            ) from None
        try:
            workload = WorkloadSpec(
                nodes=_get(sec, "nodes", int, "workload"),
                procs_per_node=_get(sec, "procs_per_node", int, "workload"),
                aggregators_per_node=_get(sec, "aggregators_per_node", int, "workload"),
                segment_count=_get(sec, "segment_count", int, "workload"),
                block_size=_get(sec, "block_size_mb", float, "workload"),
                transfer_size=_get(sec, "transfer_size_mb", float, "workload"),
                reorder_random=_to_bool(sec.get("reorder_random", "true")),
                direction=direction,
            )
        except ValueError as exc:
            raise ConfigError(f"[workload]: {exc}") from None
        if "tau" in sec:
            tau = _get(sec, "tau", float, "workload")
            if not 0.0 <= tau <= 1.0:
                raise ConfigError(f"[workload] tau = {tau}: must be in [0, 1]")

    device = None
    if parser.has_section("device"):
        sec = parser["device"]
        name = _get(sec, "name", str, "device").strip()
        if name in BUILTIN_NAMES:
            raise ConfigError(
                f"[device] name = {name!r}: builtin profile names are reserved"
            )
        try:
            device = DeviceProfile(
                name=name,
                bdw_seq=_get(sec, "bdw_seq_mbps", float, "device"),
                bdw_ran=_get(sec, "bdw_ran_mbps", float, "device"),
            )
        except ValueError as exc:
            raise ConfigError(f"[device]: {exc}") from None

    comm = None
    if parser.has_section("comm"):
        sec = parser["comm"]
        try:
            comm = CommParams(
                t_s=_get(sec, "t_s_s", float, "comm"),
                t_w=_get(sec, "t_w_s_per_mb", float, "comm"),
            )
        except ValueError as exc:
            raise ConfigError(f"[comm]: {exc}") from None

    cache = None
    if parser.has_section("cache"):
        sec = parser["cache"]
        try:
            cache = PageCacheConfig(
                capacity_mb=_get(sec, "capacity_mb", float, "cache"),
                page_size_kb=_get(sec, "page_size_kb", float, "cache"),
                flush_at_end=_to_bool(sec.get("flush_at_end", "true")),
            )
        except ValueError as exc:
            raise ConfigError(f"[cache]: {exc}") from None

    return AppConfig(workload=workload, tau=tau, device=device, comm=comm, cache=cache)


def resolve_device(name: str, config: AppConfig | None = None) -> DeviceProfile:
    """Look up a device by name among builtins and the config's custom profile."""
    known = builtin_profiles()
    if config is not None and config.device is not None:
        known[config.device.name] = config.device
    if name not in known:
        raise ConfigError(
            f"unknown device {name!r}; known devices: {', '.join(sorted(known))}"
        )
    return known[name]
