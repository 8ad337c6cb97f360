"""IOR-style workload description and derived transfer schedules.

A workload is segments x blocks per process across a node/process
layout; collective I/O moves it through designated aggregators in
fixed-size iterations (the collective buffer, `transfer_size`). The
schedule derived here carries everything the cost model and simulator
need: the per-aggregator iteration count, the per-iteration message
size (with a ragged final iteration when the data does not divide
evenly), the shuffle fraction tau, and the data volumes.

Synthetic page-level traces for the cache simulator are generated here
as well, standing in for the access patterns of common I/O-intensive
applications (sequential checkpoint writes, mixed write/read passes,
streaming single-pass reads).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

_PAGES_PER_MB = 1024  # trace bookkeeping uses KB pages, sizes in MB


class Direction(Enum):
    READ = "read"
    WRITE = "write"


class TracePattern(Enum):
    SEQUENTIAL_WRITE = "sequential-write"
    READ_WRITE_MIX = "read-write-mix"
    STREAMING_READ = "streaming-read"


@dataclass(frozen=True)
class WorkloadSpec:
    """IOR-style workload description.

    Counts are per their names; block_size and transfer_size are MB.
    `transfer_size` is the collective buffer: the data an aggregator
    handles per iteration.
    """

    nodes: int
    procs_per_node: int
    aggregators_per_node: int
    segment_count: int
    block_size: float
    transfer_size: float
    reorder_random: bool = True
    direction: Direction = Direction.WRITE

    def __post_init__(self) -> None:
        for field in ("nodes", "procs_per_node", "aggregators_per_node", "segment_count"):
            value = getattr(self, field)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{field} must be an integer >= 1, got {value!r}")
        if self.block_size <= 0:
            raise ValueError(f"block_size must be > 0, got {self.block_size}")
        if self.transfer_size <= 0:
            raise ValueError(f"transfer_size must be > 0, got {self.transfer_size}")
        if self.aggregators_per_node > self.procs_per_node:
            raise ValueError(
                f"aggregators_per_node ({self.aggregators_per_node}) exceeds "
                f"procs_per_node ({self.procs_per_node})"
            )

    @property
    def total_processes(self) -> int:
        return self.nodes * self.procs_per_node

    @property
    def total_aggregators(self) -> int:
        return self.nodes * self.aggregators_per_node


def total_data(spec: WorkloadSpec) -> float:
    """Total data volume moved by the whole job, in MB."""
    return spec.nodes * spec.procs_per_node * spec.segment_count * spec.block_size


def estimate_tau(spec: WorkloadSpec) -> float:
    """Shuffle fraction estimate: non-aggregator processes over all processes."""
    p = spec.total_processes
    return (p - spec.total_aggregators) / p


@dataclass(frozen=True)
class TransferSchedule:
    """Per-aggregator iteration plan for collective I/O.

    `msg_size` is the nominal per-iteration size (the collective
    buffer); the final iteration may carry a smaller remainder, exposed
    through msg_size_at().
    """

    iterations: int
    msg_size: float
    tau: float
    total_data: float
    per_aggregator_data: float

    def __post_init__(self) -> None:
        if self.iterations < 0:
            raise ValueError(f"iterations must be >= 0, got {self.iterations}")
        if not 0.0 <= self.tau <= 1.0:
            raise ValueError(f"tau must be in [0, 1], got {self.tau}")
        if self.iterations == 0:
            if self.per_aggregator_data != 0 or self.total_data != 0:
                raise ValueError("an empty schedule must carry no data")
            return
        if self.msg_size <= 0:
            raise ValueError(f"msg_size must be > 0, got {self.msg_size}")
        if not (self.iterations - 1) * self.msg_size < self.per_aggregator_data <= self.iterations * self.msg_size:
            raise ValueError(
                f"per_aggregator_data ({self.per_aggregator_data}) inconsistent with "
                f"{self.iterations} iterations of {self.msg_size} MB"
            )
        if self.total_data < self.per_aggregator_data:
            raise ValueError("total_data cannot be smaller than per_aggregator_data")

    @classmethod
    def empty(cls, tau: float = 0.0) -> TransferSchedule:
        return cls(iterations=0, msg_size=0.0, tau=tau, total_data=0.0, per_aggregator_data=0.0)

    def msg_size_at(self, i: int) -> float:
        """Actual message size of iteration `i` (ragged final iteration)."""
        if not 0 <= i < self.iterations:
            raise IndexError(f"iteration {i} out of range [0, {self.iterations})")
        if i < self.iterations - 1:
            return self.msg_size
        return self.per_aggregator_data - (self.iterations - 1) * self.msg_size

    def msg_sizes(self) -> tuple[float, ...]:
        return tuple(self.msg_size_at(i) for i in range(self.iterations))


def derive_schedule(spec: WorkloadSpec, tau_override: float | None = None) -> TransferSchedule:
    """Derive the iteration plan: per-aggregator share in transfer_size chunks.

    The iteration count is the per-aggregator data volume divided by the
    collective buffer size, rounded up; tau defaults to estimate_tau().
    """
    if tau_override is not None and not 0.0 <= tau_override <= 1.0:
        raise ValueError(f"tau_override must be in [0, 1], got {tau_override}")
    total = total_data(spec)
    per_aggregator = total / spec.total_aggregators
    msg = spec.transfer_size

    iterations = int(np.ceil(per_aggregator / msg))
    # guard against float wobble around exact multiples
    while iterations > 1 and (iterations - 1) * msg >= per_aggregator:
        iterations -= 1
    while iterations * msg < per_aggregator:
        iterations += 1

    tau = estimate_tau(spec) if tau_override is None else tau_override
    return TransferSchedule(
        iterations=iterations,
        msg_size=msg,
        tau=tau,
        total_data=total,
        per_aggregator_data=per_aggregator,
    )


@dataclass(frozen=True)
class IoTrace:
    """Page-level access trace: parallel arrays of page index and write flag."""

    page_indices: np.ndarray
    is_write: np.ndarray
    page_size_kb: float
    working_set_mb: float

    def __post_init__(self) -> None:
        if self.page_indices.shape != self.is_write.shape:
            raise ValueError("page_indices and is_write must have matching shapes")

    @property
    def n_pages(self) -> int:
        """Distinct pages in the working set."""
        return int(self.working_set_mb * _PAGES_PER_MB // self.page_size_kb)

    def __len__(self) -> int:
        return len(self.page_indices)


def generate_trace(
    pattern: TracePattern,
    working_set_mb: float,
    page_size_kb: float,
    passes: int = 1,
    seed: int = 0,
) -> IoTrace:
    """Deterministic synthetic trace over working_set_mb of page_size_kb pages.

    SEQUENTIAL_WRITE sweeps every page once per pass, writes only.
    READ_WRITE_MIX alternates full write and read sweeps (write first),
    `passes` sweeps in total. STREAMING_READ reads every page exactly
    once with no reuse anywhere in the trace, so it admits only one
    pass. The same (pattern, seed) always yields the same trace.
    """
    if page_size_kb <= 0:
        raise ValueError(f"page_size_kb must be > 0, got {page_size_kb}")
    if working_set_mb < page_size_kb / _PAGES_PER_MB:
        raise ValueError(
            f"working set ({working_set_mb} MB) smaller than one page ({page_size_kb} KB)"
        )
    if passes < 1:
        raise ValueError(f"passes must be >= 1, got {passes}")

    n_pages = int(working_set_mb * _PAGES_PER_MB // page_size_kb)
    sweep = np.arange(n_pages, dtype=np.int64)

    if pattern is TracePattern.SEQUENTIAL_WRITE:
        indices = np.tile(sweep, passes)
        writes = np.ones(len(indices), dtype=np.uint8)
    elif pattern is TracePattern.READ_WRITE_MIX:
        indices = np.tile(sweep, passes)
        # sweep k is a write pass for even k, a read pass for odd k
        writes = np.repeat((np.arange(passes) % 2 == 0).astype(np.uint8), n_pages)
    elif pattern is TracePattern.STREAMING_READ:
        if passes != 1:
            raise ValueError("streaming-read has no reuse; passes must be 1")
        indices = sweep
        writes = np.zeros(n_pages, dtype=np.uint8)
    else:
        raise ValueError(f"unknown trace pattern: {pattern!r}")

    return IoTrace(
        page_indices=indices,
        is_write=writes,
        page_size_kb=page_size_kb,
        working_set_mb=working_set_mb,
    )


def write_trace_text(trace: IoTrace, path) -> None:
    """Write a trace as one `page_index,op` line per access (op is r or w)."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for idx, w in zip(trace.page_indices.tolist(), trace.is_write.tolist()):
            fh.write(f"{idx},{'w' if w else 'r'}\n")


def read_trace_text(path, page_size_kb: float, working_set_mb: float) -> IoTrace:
    """Parse the text trace format written by write_trace_text()."""
    indices: list[int] = []
    writes: list[int] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                idx_s, op = line.split(",")
                idx = int(idx_s)
                if op not in ("r", "w"):
                    raise ValueError(f"op must be r or w, got {op!r}")
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: malformed trace line ({exc})") from None
            indices.append(idx)
            writes.append(1 if op == "w" else 0)
    return IoTrace(
        page_indices=np.asarray(indices, dtype=np.int64),
        is_write=np.asarray(writes, dtype=np.uint8),
        page_size_kb=page_size_kb,
        working_set_mb=working_set_mb,
    )
