"""Performance laboratory for parallel I/O on block storage.

Analytic cost model for collective (two-phase) and individual MPI-style
I/O, a discrete-event simulator that serves as the model's independent
oracle, an LRU write-back page-cache simulator, communication-cost
calibration, a collective-vs-individual decision engine, and a fixture
suite validating the model against published measurements.
"""

from .commnet import (
    REFERENCE_COMM,
    CalibrationError,
    CalibrationResult,
    CalibrationSample,
    CommParams,
    fit_comm_params,
    transfer_time,
)
from .costmodel import (
    CostBreakdown,
    Decision,
    Strategy,
    TradeoffRow,
    collective_time,
    decide,
    fit_t_other,
    individual_time,
    tradeoff_sweep,
)
from .devices import (
    DRAM,
    HDD,
    NVM,
    SSD,
    AccessPattern,
    DeviceProfile,
    MemoryProfile,
    builtin_profiles,
    service_time,
)
from .simulator import (
    CacheReport,
    Layout,
    PageCacheConfig,
    SimConfig,
    SimReport,
    backend_name,
    simulate_collective,
    simulate_individual,
    simulate_page_cache,
)
from .workload import (
    Direction,
    IoTrace,
    TracePattern,
    TransferSchedule,
    WorkloadSpec,
    derive_schedule,
    estimate_tau,
    generate_trace,
    total_data,
)

__version__ = "0.1.0"

__all__ = [
    "AccessPattern",
    "CacheReport",
    "CalibrationError",
    "CalibrationResult",
    "CalibrationSample",
    "CommParams",
    "CostBreakdown",
    "DRAM",
    "Decision",
    "DeviceProfile",
    "Direction",
    "HDD",
    "IoTrace",
    "Layout",
    "MemoryProfile",
    "NVM",
    "PageCacheConfig",
    "REFERENCE_COMM",
    "SSD",
    "SimConfig",
    "SimReport",
    "Strategy",
    "TracePattern",
    "TradeoffRow",
    "TransferSchedule",
    "WorkloadSpec",
    "backend_name",
    "builtin_profiles",
    "collective_time",
    "decide",
    "derive_schedule",
    "estimate_tau",
    "fit_comm_params",
    "fit_t_other",
    "generate_trace",
    "individual_time",
    "service_time",
    "simulate_collective",
    "simulate_individual",
    "simulate_page_cache",
    "total_data",
    "tradeoff_sweep",
    "transfer_time",
]
