"""Discrete-event simulation of two-phase collective I/O, individual I/O,
and an LRU write-back page cache.

The collective simulator executes the protocol directly: per aggregator,
per iteration, a shuffle phase (gather from peer senders; concurrent
sends overlap, so the phase lasts as long as the slowest link) followed
by a contiguous I/O phase (all aggregators write concurrently and share
the device's sequential end-to-end bandwidth). Iterations are blocking
and strictly sequential per aggregator; aggregators run independently
with no barrier between iterations, and the makespan is the slowest
aggregator's finish time.

Under a homogeneous configuration this reproduces the analytic model
exactly, which is the simulator's central property: it serves as the
independent oracle for the closed-form predictions. Heterogeneity
(per-link communication parameters, per-iteration message sizes) is an
extension beyond the analytic model.

All event times are plain float sums accumulated in a fixed order, so
a given configuration always produces a byte-identical report.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from ..commnet import CommParams
from ..devices import AccessPattern, DeviceProfile, MemoryProfile
from ..workload import IoTrace, TransferSchedule
from . import _backend


@dataclass(frozen=True)
class Layout:
    """Process placement: nodes, processes per node, aggregators per node."""

    nodes: int
    procs_per_node: int
    aggregators_per_node: int

    def __post_init__(self) -> None:
        for name in ("nodes", "procs_per_node", "aggregators_per_node"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"{name} must be an integer >= 1, got {value!r}")
        if self.aggregators_per_node > self.procs_per_node:
            raise ValueError("aggregators_per_node exceeds procs_per_node")

    @property
    def total_processes(self) -> int:
        return self.nodes * self.procs_per_node

    @property
    def total_aggregators(self) -> int:
        return self.nodes * self.aggregators_per_node


@dataclass(frozen=True)
class SimConfig:
    """Collective-simulation configuration.

    `link_overrides` maps (sender_rank, aggregator_index) to per-link
    communication parameters; `msg_size_overrides` maps an iteration
    index to a replacement message size. Without overrides the
    configuration is homogeneous and reproduces the analytic model.
    """

    schedule: TransferSchedule
    comm: CommParams
    device: DeviceProfile
    layout: Layout
    link_overrides: Mapping[tuple[int, int], CommParams] = field(default_factory=dict)
    msg_size_overrides: Mapping[int, float] = field(default_factory=dict)
    seed: int = 0

    def __post_init__(self) -> None:
        p = self.layout.total_processes
        a = self.layout.total_aggregators
        for sender, agg in self.link_overrides:
            if not (0 <= sender < p and 0 <= agg < a):
                raise ValueError(
                    f"link override ({sender}, {agg}) outside layout with "
                    f"{p} processes and {a} aggregators"
                )
        for i, size in self.msg_size_overrides.items():
            if not 0 <= i < self.schedule.iterations:
                raise ValueError(f"msg_size override for iteration {i} out of range")
            if size <= 0:
                raise ValueError(f"msg_size override must be > 0, got {size}")


@dataclass(frozen=True)
class SimReport:
    """Per-iteration timeline per aggregator, plus aggregate metrics."""

    strategy: str
    device: str
    shuffle_s: np.ndarray  # shape (aggregators, iterations)
    io_s: np.ndarray
    per_aggregator_total_s: np.ndarray
    makespan_s: float

    @property
    def aggregators(self) -> int:
        return self.shuffle_s.shape[0]

    @property
    def iterations(self) -> int:
        return self.shuffle_s.shape[1]

    @property
    def shuffle_total_s(self) -> float:
        return float(self.shuffle_s.sum())

    @property
    def io_total_s(self) -> float:
        return float(self.io_s.sum())

    @property
    def shuffle_ratio(self) -> float:
        """Shuffle time as a fraction of total simulated busy time."""
        denom = self.shuffle_total_s + self.io_total_s
        return self.shuffle_total_s / denom if denom > 0 else 0.0

    @property
    def avg_shuffle_per_iteration_s(self) -> float:
        return self.shuffle_total_s / self.shuffle_s.size if self.shuffle_s.size else 0.0

    @property
    def avg_io_per_iteration_s(self) -> float:
        return self.io_total_s / self.io_s.size if self.io_s.size else 0.0

    def iteration_rows(self):
        """Yield (aggregator, iteration, shuffle_s, io_s) per timeline entry."""
        for a in range(self.aggregators):
            for i in range(self.iterations):
                yield a, i, float(self.shuffle_s[a, i]), float(self.io_s[a, i])

    def to_json_obj(self) -> dict:
        return {
            "strategy": self.strategy,
            "device": self.device,
            "aggregators": self.aggregators,
            "iterations": self.iterations,
            "makespan_s": self.makespan_s,
            "shuffle_total_s": self.shuffle_total_s,
            "io_total_s": self.io_total_s,
            "shuffle_ratio": self.shuffle_ratio,
            "avg_shuffle_per_iteration_s": self.avg_shuffle_per_iteration_s,
            "avg_io_per_iteration_s": self.avg_io_per_iteration_s,
            "per_aggregator_total_s": [float(t) for t in self.per_aggregator_total_s],
            "timeline": [
                {"aggregator": a, "iteration": i, "shuffle_s": s, "io_s": o}
                for a, i, s, o in self.iteration_rows()
            ],
        }


def simulate_collective(config: SimConfig) -> SimReport:
    """Run the two-phase collective protocol for every aggregator."""
    schedule = config.schedule
    n_iter = schedule.iterations
    n_agg = config.layout.total_aggregators
    n_proc = config.layout.total_processes

    msgs = np.array(
        [
            config.msg_size_overrides.get(i, schedule.msg_size_at(i))
            for i in range(n_iter)
        ],
        dtype=np.float64,
    )

    shuffle = np.zeros((n_agg, n_iter), dtype=np.float64)
    io = np.zeros((n_agg, n_iter), dtype=np.float64)
    totals = np.zeros(n_agg, dtype=np.float64)

    overridden_aggs = {agg for (_, agg) in config.link_overrides}
    base_ts = np.array([config.comm.t_s], dtype=np.float64)
    base_tw = np.array([config.comm.t_w], dtype=np.float64)

    for a in range(n_agg):
        if a in overridden_aggs:
            links = [
                config.link_overrides.get((s, a), config.comm) for s in range(n_proc)
            ]
            link_ts = np.array([l.t_s for l in links], dtype=np.float64)
            link_tw = np.array([l.t_w for l in links], dtype=np.float64)
        else:
            # homogeneous senders collapse to a single link evaluation
            link_ts, link_tw = base_ts, base_tw
        sh, ios, total = _backend.collective_timeline(
            msgs, schedule.tau, link_ts, link_tw, n_agg, config.device.bdw_seq
        )
        shuffle[a, :] = sh
        io[a, :] = ios
        totals[a] = total

    makespan = float(totals.max()) if n_agg else 0.0
    return SimReport(
        strategy="collective",
        device=config.device.name,
        shuffle_s=shuffle,
        io_s=io,
        per_aggregator_total_s=totals,
        makespan_s=makespan,
    )


def simulate_individual(
    total_data: float,
    processes: int,
    device: DeviceProfile,
    pattern: AccessPattern = AccessPattern.RANDOM,
) -> SimReport:
    """Uncoordinated per-process I/O sharing the end-to-end bandwidth.

    Each process moves its share concurrently at bandwidth/processes,
    so every process finishes together and the makespan equals
    total_data over the pattern's bandwidth. No shuffle phase.
    """
    if total_data < 0:
        raise ValueError(f"total_data must be >= 0, got {total_data}")
    if processes < 1:
        raise ValueError(f"processes must be >= 1, got {processes}")
    share = total_data / processes
    rate = device.bandwidth(pattern) / processes
    per_proc = share / rate
    shuffle = np.zeros((processes, 1), dtype=np.float64)
    io = np.full((processes, 1), per_proc, dtype=np.float64)
    totals = io[:, 0].copy()
    return SimReport(
        strategy="individual",
        device=device.name,
        shuffle_s=shuffle,
        io_s=io,
        per_aggregator_total_s=totals,
        makespan_s=float(per_proc),
    )


@dataclass(frozen=True)
class PageCacheConfig:
    """LRU write-back cache: capacity (MB, floored to whole pages) and page size (KB)."""

    capacity_mb: float
    page_size_kb: float
    flush_at_end: bool = True

    def __post_init__(self) -> None:
        if self.capacity_mb < 0:
            raise ValueError(f"capacity_mb must be >= 0, got {self.capacity_mb}")
        if self.page_size_kb <= 0:
            raise ValueError(f"page_size_kb must be > 0, got {self.page_size_kb}")

    @property
    def capacity_pages(self) -> int:
        return int(self.capacity_mb * 1024 // self.page_size_kb)


@dataclass(frozen=True)
class CacheReport:
    """Elapsed time and hit/miss/eviction accounting for one trace run."""

    elapsed_s: float
    read_hits: int
    read_misses: int
    write_hits: int
    write_misses: int
    evictions_clean: int
    evictions_dirty: int
    flushed_pages: int
    capacity_pages: int

    @property
    def hits(self) -> int:
        return self.read_hits + self.write_hits

    @property
    def misses(self) -> int:
        return self.read_misses + self.write_misses

    @property
    def evictions(self) -> int:
        return self.evictions_clean + self.evictions_dirty

    def to_json_obj(self) -> dict:
        return {
            "elapsed_s": self.elapsed_s,
            "read_hits": self.read_hits,
            "read_misses": self.read_misses,
            "write_hits": self.write_hits,
            "write_misses": self.write_misses,
            "hits": self.hits,
            "misses": self.misses,
            "evictions_clean": self.evictions_clean,
            "evictions_dirty": self.evictions_dirty,
            "flushed_pages": self.flushed_pages,
            "capacity_pages": self.capacity_pages,
        }


def simulate_page_cache(
    trace: IoTrace,
    cache: PageCacheConfig,
    device: DeviceProfile,
    memory: MemoryProfile,
) -> CacheReport:
    """Replay a trace through the LRU write-back cache model."""
    n_pages = trace.n_pages
    if n_pages < 1:
        raise ValueError("trace working set holds no complete page")
    pages = np.ascontiguousarray(trace.page_indices, dtype=np.int64)
    if len(pages) and (pages.min() < 0 or pages.max() >= n_pages):
        raise ValueError(f"trace page indices must lie in [0, {n_pages})")
    is_write = np.ascontiguousarray(trace.is_write, dtype=np.uint8)
    page_mb = trace.page_size_kb / 1024.0

    (
        elapsed,
        read_hits,
        read_misses,
        write_hits,
        write_misses,
        evictions_clean,
        evictions_dirty,
        flushed,
    ) = _backend.page_cache_run(
        pages,
        is_write,
        cache.capacity_pages,
        n_pages,
        page_mb,
        memory.read_bw,
        memory.write_bw,
        device.bdw_ran,
        device.bdw_seq,
        cache.flush_at_end,
    )
    return CacheReport(
        elapsed_s=elapsed,
        read_hits=read_hits,
        read_misses=read_misses,
        write_hits=write_hits,
        write_misses=write_misses,
        evictions_clean=evictions_clean,
        evictions_dirty=evictions_dirty,
        flushed_pages=flushed,
        capacity_pages=cache.capacity_pages,
    )
