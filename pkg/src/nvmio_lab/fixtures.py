"""Published reference measurements and the model-validation engine.

The fixture set encodes the measurement study the model derives from:
the reference platform's end-to-end device bandwidths, the DRAM
bandwidths, two end-to-end validation runs (a 4-compute-node and a
2-compute-node IOR configuration, each reporting estimated and measured
collective and individual times per device), and the shuffle-to-total
profiling ratios. `validate()` recomputes every reconstructable cell
from the model and compares at per-cell tolerances.

Cells marked `flagged` are source-internal inconsistencies (values not
derivable from the study's own stated parameters); they are reported
with an explanatory note but never fail validation. Non-flagged cells
fail when the relative difference exceeds the cell tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .commnet import REFERENCE_COMM
from .costmodel import collective_time, individual_time
from .devices import HDD, NVM, SSD, AccessPattern, DeviceProfile, DRAM, builtin_profiles
from .simulator import Layout, SimConfig, simulate_collective
from .workload import TransferSchedule, WorkloadSpec, derive_schedule

#: The validation runs shuffle their whole dataset (tasks reordered
#: randomly), so the effective shuffle fraction is 1.0 rather than the
#: layout estimate.
VALIDATION_TAU = 1.0

#: 4 compute nodes x 4 processes, 1 aggregator per node, 2 segments of
#: 512 MB per process, 16 MB collective buffer: 16 GB total, 256
#: iterations per aggregator.
VALIDATION_4NODE = WorkloadSpec(
    nodes=4,
    procs_per_node=4,
    aggregators_per_node=1,
    segment_count=2,
    block_size=512.0,
    transfer_size=16.0,
    reorder_random=True,
)

#: 2 compute nodes x 8 processes, same per-process volume.
VALIDATION_2NODE = WorkloadSpec(
    nodes=2,
    procs_per_node=8,
    aggregators_per_node=1,
    segment_count=2,
    block_size=512.0,
    transfer_size=16.0,
    reorder_random=True,
)


def validation_schedule(spec: WorkloadSpec) -> TransferSchedule:
    return derive_schedule(spec, tau_override=VALIDATION_TAU)


def relative_difference(a: float, b: float) -> float:
    """Symmetric relative difference |a-b| / max(|a|, |b|); 0 when equal."""
    if a == b:
        return 0.0
    return abs(a - b) / max(abs(a), abs(b))


@dataclass(frozen=True)
class FixtureCell:
    """One expected value with provenance, tolerance, and open-question flag."""

    name: str
    expected: float
    tolerance: float
    provenance: str
    flagged: bool = False
    note: str = ""


@dataclass(frozen=True)
class CellResult:
    cell: FixtureCell
    computed: float
    rel_error: float
    passed: bool | None  # None for flagged (report-only) cells

    def to_json_obj(self) -> dict:
        return {
            "name": self.cell.name,
            "expected": self.cell.expected,
            "computed": self.computed,
            "rel_error": self.rel_error,
            "tolerance": self.cell.tolerance,
            "flagged": self.cell.flagged,
            "status": "flagged" if self.passed is None else ("pass" if self.passed else "FAIL"),
            "provenance": self.cell.provenance,
            "note": self.cell.note,
        }


@dataclass(frozen=True)
class ValidationReport:
    results: tuple[CellResult, ...]

    @property
    def ok(self) -> bool:
        return all(r.passed is not False for r in self.results)

    @property
    def failures(self) -> tuple[CellResult, ...]:
        return tuple(r for r in self.results if r.passed is False)


def _model_values() -> dict[str, dict[str, float]]:
    """Model outputs for every reconstructable validation quantity."""
    values: dict[str, dict[str, float]] = {}
    devices = builtin_profiles()
    for run, spec in (("4node", VALIDATION_4NODE), ("2node", VALIDATION_2NODE)):
        schedule = validation_schedule(spec)
        coll = {
            d: collective_time(schedule, REFERENCE_COMM, devices[d]).total
            for d in devices
        }
        indiv = {
            d: individual_time(schedule.total_data, devices[d], AccessPattern.RANDOM).total
            for d in devices
        }
        values[f"{run}/collective"] = coll
        values[f"{run}/individual"] = indiv
    return values


def _simulated_shuffle_ratio(device: DeviceProfile) -> float:
    spec = VALIDATION_4NODE
    config = SimConfig(
        schedule=validation_schedule(spec),
        comm=REFERENCE_COMM,
        device=device,
        layout=Layout(spec.nodes, spec.procs_per_node, spec.aggregators_per_node),
    )
    return simulate_collective(config).shuffle_ratio


_DEVICE_SOURCE = "reference platform bandwidth table"
_4NODE_SOURCE = "4-node validation run (4 procs/node, 16 GB, random reorder)"
_2NODE_SOURCE = "2-node validation run (8 procs/node, 16 GB, random reorder)"
_PROFILE_SOURCE = "collective I/O profiling run (shuffle-to-total ratio)"

_NVM_INDIV_NOTE = (
    "published estimate equals total data over the sequential bandwidth "
    "(16384/112.31); the model's random-access reading gives 148.26"
)
_2NODE_COLL_NOTE = (
    "published value implies 128 shuffle iterations, which no stated "
    "parameterization produces (per-aggregator reading gives 512); report-only"
)


def build_cells() -> tuple[FixtureCell, ...]:
    """The full fixture set, every cell exactly once."""
    cells: list[FixtureCell] = []

    for dev in (HDD, SSD, NVM):
        cells.append(
            FixtureCell(
                name=f"device/{dev.name}/bdw_seq",
                expected=dev.bdw_seq,
                tolerance=0.0,
                provenance=_DEVICE_SOURCE,
            )
        )
        cells.append(
            FixtureCell(
                name=f"device/{dev.name}/bdw_ran",
                expected=dev.bdw_ran,
                tolerance=0.0,
                provenance=_DEVICE_SOURCE,
            )
        )
    cells.append(
        FixtureCell(
            name="dram/read_bw",
            expected=1000.0,
            tolerance=0.0,
            provenance="memory technology summary, DRAM row",
        )
    )
    cells.append(
        FixtureCell(
            name="dram/write_bw",
            expected=900.0,
            tolerance=0.0,
            provenance="memory technology summary, DRAM row",
        )
    )

    # 4-node validation run
    cells += [
        FixtureCell(
            name="4node/collective/estimate/HDD",
            expected=411.78,
            tolerance=0.03,
            provenance=_4NODE_SOURCE,
            note="published estimate implies an effective sequential bandwidth "
            "of 59.97 MB/s vs the profile's 58.11; tolerance widened to 3%",
        ),
        FixtureCell(
            name="4node/collective/estimate/SSD",
            expected=286.21,
            tolerance=0.005,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/collective/estimate/NVM",
            expected=284.46,
            tolerance=0.005,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/collective/measured/HDD",
            expected=385.86,
            tolerance=0.15,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/collective/measured/SSD",
            expected=277.46,
            tolerance=0.15,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/collective/measured/NVM",
            expected=242.54,
            tolerance=0.15,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/individual/estimate/HDD",
            expected=613.17,
            tolerance=0.001,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/individual/estimate/SSD",
            expected=160.84,
            tolerance=0.001,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/individual/estimate/NVM",
            expected=145.88,
            tolerance=0.001,
            provenance=_4NODE_SOURCE,
            flagged=True,
            note=_NVM_INDIV_NOTE,
        ),
        FixtureCell(
            name="4node/individual/measured/HDD",
            expected=593.04,
            tolerance=0.15,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/individual/measured/SSD",
            expected=146.50,
            tolerance=0.15,
            provenance=_4NODE_SOURCE,
        ),
        FixtureCell(
            name="4node/individual/measured/NVM",
            expected=146.35,
            tolerance=0.15,
            provenance=_4NODE_SOURCE,
        ),
    ]

    # 2-node validation run: the collective cells are not reconstructable
    for dev, est, meas in (
        ("HDD", 350.90, 354.59),
        ("SSD", 216.58, 217.74),
        ("NVM", 214.83, 213.01),
    ):
        cells.append(
            FixtureCell(
                name=f"2node/collective/estimate/{dev}",
                expected=est,
                tolerance=0.005,
                provenance=_2NODE_SOURCE,
                flagged=True,
                note=_2NODE_COLL_NOTE,
            )
        )
        cells.append(
            FixtureCell(
                name=f"2node/collective/measured/{dev}",
                expected=meas,
                tolerance=0.15,
                provenance=_2NODE_SOURCE,
                flagged=True,
                note=_2NODE_COLL_NOTE,
            )
        )
    cells += [
        FixtureCell(
            name="2node/individual/estimate/HDD",
            expected=613.17,
            tolerance=0.001,
            provenance=_2NODE_SOURCE,
        ),
        FixtureCell(
            name="2node/individual/estimate/SSD",
            expected=160.84,
            tolerance=0.001,
            provenance=_2NODE_SOURCE,
        ),
        FixtureCell(
            name="2node/individual/estimate/NVM",
            expected=145.88,
            tolerance=0.001,
            provenance=_2NODE_SOURCE,
            flagged=True,
            note=_NVM_INDIV_NOTE,
        ),
        FixtureCell(
            name="2node/individual/measured/HDD",
            expected=580.32,
            tolerance=0.15,
            provenance=_2NODE_SOURCE,
        ),
        FixtureCell(
            name="2node/individual/measured/SSD",
            expected=146.40,
            tolerance=0.15,
            provenance=_2NODE_SOURCE,
        ),
        FixtureCell(
            name="2node/individual/measured/NVM",
            expected=146.55,
            tolerance=0.15,
            provenance=_2NODE_SOURCE,
        ),
    ]

    # profiling ratios: magnitudes are not reconcilable with the stated
    # configuration, so only the qualitative ratio trend is shipped
    for dev, ratio in (("HDD", 0.0785), ("SSD", 0.4993), ("NVM", 0.5016)):
        cells.append(
            FixtureCell(
                name=f"profiling/shuffle_ratio/{dev}",
                expected=ratio,
                tolerance=0.05,
                provenance=_PROFILE_SOURCE,
                flagged=True,
                note="per-iteration magnitudes of the profiling run are not "
                "derivable from its stated configuration; the simulated "
                "shuffle-to-total ratio is reported for trend comparison only",
            )
        )

    return tuple(cells)


def validate(tolerance_scale: float = 1.0) -> ValidationReport:
    """Recompute every cell and compare at (scaled) tolerances.

    `tolerance_scale` multiplies the tolerance of every non-flagged
    cell; scale 0 demands exact reproduction and exercises the failure
    path. Flagged cells are reported but never fail.
    """
    if tolerance_scale < 0:
        raise ValueError(f"tolerance_scale must be >= 0, got {tolerance_scale}")
    model_cache = _model_values()
    devices = builtin_profiles()

    results: list[CellResult] = []
    for cell in build_cells():
        parts = cell.name.split("/")
        if parts[0] == "device":
            dev = devices[parts[1]]
            computed = dev.bdw_seq if parts[2] == "bdw_seq" else dev.bdw_ran
        elif parts[0] == "dram":
            computed = DRAM.read_bw if parts[1] == "read_bw" else DRAM.write_bw
        elif parts[0] == "profiling":
            computed = _simulated_shuffle_ratio(devices[parts[2]])
        else:
            run, strategy, _, dev_name = parts
            computed = model_cache[f"{run}/{strategy}"][dev_name]

        err = relative_difference(computed, cell.expected)
        if cell.flagged:
            passed: bool | None = None
        else:
            passed = err <= cell.tolerance * tolerance_scale
        results.append(CellResult(cell=cell, computed=computed, rel_error=err, passed=passed))

    return ValidationReport(results=tuple(results))
