"""Analytic cost model for collective vs. individual parallel I/O.

Collective I/O alternates a shuffle phase and a contiguous I/O phase
per iteration; its predicted time is

    total = t_comm + t_io + t_other

where t_comm sums the slowest aggregator's per-iteration shuffle cost
(affine in the iteration's message size, scaled by the shuffle fraction
tau) and t_io is the job's total data over the device's sequential
end-to-end bandwidth (after shuffling, aggregators stream contiguous
data, sharing the storage link). Individual I/O has no shuffle phase;
uncoordinated per-process accesses are charged at the random-access
bandwidth by default.

t_other (memory mapping, initialization, bookkeeping) is a parameter
everywhere and defaults to zero, which is how the model was validated.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .commnet import CommParams, transfer_time
from .devices import AccessPattern, DeviceProfile, service_time
from .workload import TransferSchedule


class Strategy(Enum):
    COLLECTIVE = "collective"
    INDIVIDUAL = "individual"


@dataclass(frozen=True)
class CostBreakdown:
    """Predicted t_comm / t_io / t_other and their exact sum."""

    t_comm: float
    t_io: float
    t_other: float
    total: float

    def __post_init__(self) -> None:
        if min(self.t_comm, self.t_io, self.t_other) < 0:
            raise ValueError("cost components must be >= 0")
        if self.total != self.t_comm + self.t_io + self.t_other:
            raise ValueError("total must equal t_comm + t_io + t_other exactly")

    @classmethod
    def build(cls, t_comm: float, t_io: float, t_other: float) -> CostBreakdown:
        return cls(t_comm, t_io, t_other, t_comm + t_io + t_other)


def shuffle_time(schedule: TransferSchedule, comm: CommParams) -> float:
    """Total shuffle cost of the slowest aggregator across all iterations."""
    n = schedule.iterations
    if n == 0:
        return 0.0
    full = transfer_time(comm, schedule.msg_size, schedule.tau)
    tail = transfer_time(comm, schedule.msg_size_at(n - 1), schedule.tau)
    return (n - 1) * full + tail


def collective_time(
    schedule: TransferSchedule,
    comm: CommParams,
    device: DeviceProfile,
    t_other: float = 0.0,
) -> CostBreakdown:
    """Collective I/O prediction for one schedule on one device."""
    if t_other < 0:
        raise ValueError(f"t_other must be >= 0, got {t_other}")
    t_comm = shuffle_time(schedule, comm)
    t_io = service_time(device, schedule.total_data, AccessPattern.SEQUENTIAL)
    return CostBreakdown.build(t_comm, t_io, t_other)


def individual_time(
    total_data: float,
    device: DeviceProfile,
    pattern: AccessPattern = AccessPattern.RANDOM,
    t_other: float = 0.0,
) -> CostBreakdown:
    """Individual I/O prediction: no shuffle, uncoordinated accesses.

    The default pattern is random; a sequential override exists for
    workloads whose per-process accesses are known to be contiguous.
    """
    if t_other < 0:
        raise ValueError(f"t_other must be >= 0, got {t_other}")
    t_io = service_time(device, total_data, pattern)
    return CostBreakdown.build(0.0, t_io, t_other)


def fit_t_other(measured_total: float, modeled_without_other: float) -> float:
    """Residual cost term from one measurement; clamped at zero."""
    if measured_total < 0 or modeled_without_other < 0:
        raise ValueError("times must be >= 0")
    return max(0.0, measured_total - modeled_without_other)


@dataclass(frozen=True)
class Decision:
    """Strategy choice plus both predicted totals.

    benefit = t_individual - t_collective; collective is chosen iff the
    benefit is strictly positive (ties keep the simpler strategy).
    """

    strategy: Strategy
    t_collective: float
    t_individual: float
    benefit: float


def choose_strategy(t_collective: float, t_individual: float) -> Strategy:
    return Strategy.COLLECTIVE if t_individual - t_collective > 0 else Strategy.INDIVIDUAL


def decide(
    schedule: TransferSchedule,
    total_data: float,
    comm: CommParams,
    device: DeviceProfile,
    t_other_collective: float = 0.0,
    t_other_individual: float = 0.0,
    pattern: AccessPattern = AccessPattern.RANDOM,
) -> Decision:
    """Predict both strategies and pick the faster one."""
    coll = collective_time(schedule, comm, device, t_other_collective)
    indiv = individual_time(total_data, device, pattern, t_other_individual)
    return Decision(
        strategy=choose_strategy(coll.total, indiv.total),
        t_collective=coll.total,
        t_individual=indiv.total,
        benefit=indiv.total - coll.total,
    )


@dataclass(frozen=True)
class TradeoffRow:
    device: str
    msg_size: float
    shuffle_cost: float
    benefit: float


def tradeoff_sweep(
    msg_sizes: list[float],
    comm: CommParams,
    devices: list[DeviceProfile],
    tau: float,
    aggregators: int,
) -> list[TradeoffRow]:
    """Single-iteration shuffle cost vs. I/O benefit across message sizes.

    One collective iteration moves `aggregators * msg` MB in total. The
    benefit column is the gross I/O gain of coordinated access — the
    random-bandwidth individual time minus the sequential-bandwidth
    collective I/O time for that volume, shuffling excluded — so
    shuffle_cost < benefit exactly when collective I/O wins overall.
    """
    if not msg_sizes:
        raise ValueError("msg_sizes must be nonempty")
    if any(m <= 0 for m in msg_sizes):
        raise ValueError(f"msg_sizes must all be > 0, got {msg_sizes}")
    if aggregators < 1:
        raise ValueError(f"aggregators must be >= 1, got {aggregators}")
    rows = []
    for device in devices:
        for msg in msg_sizes:
            data = aggregators * msg
            rows.append(
                TradeoffRow(
                    device=device.name,
                    msg_size=msg,
                    shuffle_cost=transfer_time(comm, msg, tau),
                    benefit=(
                        service_time(device, data, AccessPattern.RANDOM)
                        - service_time(device, data, AccessPattern.SEQUENTIAL)
                    ),
                )
            )
    return rows
