"""Storage device parameterization and raw service times.

A device is described by two end-to-end bandwidths (compute node to
storage node, in MB/s): one for sequential access and one for random
access. The model is purely bandwidth-based; per-request latency is
absorbed into the end-to-end figures. The builtin profiles are the
measured values from our reference test platform, and the DRAM profile
is used as the page-cache hit speed.

Units are MB and seconds everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


class AccessPattern(Enum):
    """Closed two-value access pattern selector."""

    SEQUENTIAL = "sequential"
    RANDOM = "random"


@dataclass(frozen=True)
class DeviceProfile:
    """A block device's sequential/random end-to-end bandwidths (MB/s)."""

    name: str
    bdw_seq: float
    bdw_ran: float

    def __post_init__(self) -> None:
        if self.bdw_seq <= 0 or self.bdw_ran <= 0:
            raise ValueError(
                f"device {self.name!r}: bandwidths must be positive, "
                f"got bdw_seq={self.bdw_seq}, bdw_ran={self.bdw_ran}"
            )
        if self.bdw_ran > self.bdw_seq:
            raise ValueError(
                f"device {self.name!r}: bdw_ran ({self.bdw_ran}) exceeds "
                f"bdw_seq ({self.bdw_seq})"
            )

    def bandwidth(self, pattern: AccessPattern) -> float:
        return self.bdw_seq if pattern is AccessPattern.SEQUENTIAL else self.bdw_ran


# Measured end-to-end bandwidths of the reference platform (MB/s).
HDD = DeviceProfile("HDD", bdw_seq=58.11, bdw_ran=26.72)
SSD = DeviceProfile("SSD", bdw_seq=110.98, bdw_ran=101.86)
NVM = DeviceProfile("NVM", bdw_seq=112.31, bdw_ran=110.51)

_BUILTINS = (HDD, SSD, NVM)
_MAX_BUILTIN_BW = max(max(d.bdw_seq, d.bdw_ran) for d in _BUILTINS)

#: Builtin device names are reserved; custom profiles may not reuse them.
BUILTIN_NAMES = frozenset(d.name for d in _BUILTINS)


@dataclass(frozen=True)
class MemoryProfile:
    """DRAM bandwidths (MB/s); must dominate every builtin device."""

    read_bw: float
    write_bw: float

    def __post_init__(self) -> None:
        if self.read_bw <= 0 or self.write_bw <= 0:
            raise ValueError("memory bandwidths must be positive")
        if min(self.read_bw, self.write_bw) < _MAX_BUILTIN_BW:
            raise ValueError(
                f"memory bandwidths must be at least {_MAX_BUILTIN_BW} MB/s "
                "(no slower than any builtin device)"
            )


DRAM = MemoryProfile(read_bw=1000.0, write_bw=900.0)


def builtin_profiles() -> dict[str, DeviceProfile]:
    """The builtin device profiles, keyed by name."""
    return {d.name: d for d in _BUILTINS}


def service_time(device: DeviceProfile, size_mb: float, pattern: AccessPattern) -> float:
    """Raw device time to move `size_mb` under the given access pattern.

    Linear in size: size over the pattern's end-to-end bandwidth.
    """
    if size_mb < 0:
        raise ValueError(f"size must be >= 0, got {size_mb}")
    return size_mb / device.bandwidth(pattern)
