"""Command-line surface.

Subcommands: profiles, predict, decide, sweep, simulate, cache-sim,
calibrate, validate. Every subcommand takes `--format {table,json,csv}`
(default from NVMIO_LAB_FORMAT, else table) and most take `--config`
pointing at the INI file described in nvmio_lab.config.

Exit status: 0 success, 1 usage/config error, 2 validation failure.
"""

from __future__ import annotations

import argparse
import os
import sys

from .commnet import (
    REFERENCE_COMM,
    CalibrationError,
    fit_comm_params,
    read_samples_csv,
)
from .config import AppConfig, ConfigError, load_config, resolve_device
from .costmodel import (
    collective_time,
    decide,
    individual_time,
    tradeoff_sweep,
)
from .devices import DRAM, AccessPattern, builtin_profiles
from .fixtures import validate
from .reporting import render
from .simulator import (
    Layout,
    PageCacheConfig,
    SimConfig,
    backend_name,
    simulate_collective,
    simulate_individual,
    simulate_page_cache,
)
from .workload import (
    TracePattern,
    derive_schedule,
    estimate_tau,
    generate_trace,
    total_data,
)

FORMAT_ENV_VAR = "NVMIO_LAB_FORMAT"
_FORMATS = ("table", "json", "csv")


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; this surface reserves 2 for
    validation failures, so usage errors exit 1."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _default_format() -> str:
    fmt = os.environ.get(FORMAT_ENV_VAR, "table").strip().lower() or "table"
    return fmt if fmt in _FORMATS else "table"


def _add_common(sub: argparse.ArgumentParser, config: bool = True) -> None:
    sub.add_argument(
        "--format",
        choices=_FORMATS,
        default=_default_format(),
        help=f"output format (default from ${FORMAT_ENV_VAR}, else table)",
    )
    if config:
        sub.add_argument("--config", metavar="PATH", help="INI configuration file")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="nvmio-lab",
        description="Performance laboratory for collective vs. individual parallel I/O "
        "on block storage (HDD/SSD/NVM).",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("profiles", help="list device and memory profiles")
    _add_common(p)

    p = sub.add_parser("predict", help="predict collective and individual I/O time")
    _add_common(p)
    p.add_argument("--device", required=True, help="device profile name")
    p.add_argument("--tau", type=float, help="shuffle fraction override")
    p.add_argument("--t-other-collective", type=float, default=0.0)
    p.add_argument("--t-other-individual", type=float, default=0.0)
    p.add_argument(
        "--pattern",
        choices=("random", "sequential"),
        default="random",
        help="individual-I/O access pattern (default random)",
    )

    p = sub.add_parser("decide", help="choose the faster strategy for a workload")
    _add_common(p)
    p.add_argument("--device", required=True)
    p.add_argument("--tau", type=float)
    p.add_argument("--t-other-collective", type=float, default=0.0)
    p.add_argument("--t-other-individual", type=float, default=0.0)
    p.add_argument("--pattern", choices=("random", "sequential"), default="random")

    p = sub.add_parser(
        "sweep", help="single-iteration shuffle-cost vs. I/O-benefit sweep"
    )
    _add_common(p)
    p.add_argument(
        "--msg-sizes-mb",
        required=True,
        help="comma-separated message sizes in MB, e.g. 0.03125,2,16",
    )
    p.add_argument(
        "--devices",
        default="HDD,SSD,NVM",
        help="comma-separated device names (default HDD,SSD,NVM)",
    )
    p.add_argument("--tau", type=float, help="shuffle fraction (default from workload, else 0.75)")
    p.add_argument(
        "--aggregators", type=int, help="concurrent aggregators (default from workload, else 4)"
    )

    p = sub.add_parser("simulate", help="discrete-event simulation of one strategy")
    _add_common(p)
    p.add_argument("--strategy", choices=("collective", "individual"), required=True)
    p.add_argument("--device", required=True)
    p.add_argument("--tau", type=float)
    p.add_argument("--pattern", choices=("random", "sequential"), default="random")
    p.add_argument(
        "--per-iteration",
        action="store_true",
        help="emit per-iteration timeline rows instead of the summary",
    )

    p = sub.add_parser("cache-sim", help="LRU write-back page-cache simulation")
    _add_common(p)
    p.add_argument("--device", required=True)
    p.add_argument(
        "--pattern",
        choices=[t.value for t in TracePattern],
        required=True,
    )
    p.add_argument("--working-set-mb", type=float, required=True)
    p.add_argument("--passes", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--capacity-mb", type=float, help="cache capacity (overrides [cache])")
    p.add_argument("--page-size-kb", type=float, help="page size (overrides [cache])")
    p.add_argument(
        "--no-flush",
        action="store_true",
        help="skip the final flush of dirty pages",
    )

    p = sub.add_parser("calibrate", help="fit communication coefficients from samples")
    _add_common(p, config=False)
    p.add_argument("--samples", required=True, metavar="CSV", help="msg_size_mb,elapsed_s samples")

    p = sub.add_parser("validate", help="recompute the published-table fixtures")
    _add_common(p, config=False)
    p.add_argument(
        "--tolerance-scale",
        type=float,
        default=1.0,
        help="multiply every non-flagged tolerance (0 demands exact reproduction)",
    )

    return parser


def _load(args) -> AppConfig:
    if getattr(args, "config", None):
        return load_config(args.config)
    return AppConfig()


def _comm(config: AppConfig):
    return config.comm if config.comm is not None else REFERENCE_COMM


def _tau(args, config: AppConfig, spec) -> float:
    if args.tau is not None:
        if not 0.0 <= args.tau <= 1.0:
            raise ConfigError(f"--tau {args.tau}: must be in [0, 1]")
        return args.tau
    if config.tau is not None:
        return config.tau
    return estimate_tau(spec)


def _pattern(name: str) -> AccessPattern:
    return AccessPattern.SEQUENTIAL if name == "sequential" else AccessPattern.RANDOM


def _cmd_profiles(args) -> int:
    config = _load(args)
    rows = [
        {"name": d.name, "bdw_seq_mbps": d.bdw_seq, "bdw_ran_mbps": d.bdw_ran, "kind": "builtin"}
        for d in builtin_profiles().values()
    ]
    if config.device is not None:
        d = config.device
        rows.append(
            {"name": d.name, "bdw_seq_mbps": d.bdw_seq, "bdw_ran_mbps": d.bdw_ran, "kind": "custom"}
        )
    rows.append(
        {"name": "DRAM", "bdw_seq_mbps": DRAM.read_bw, "bdw_ran_mbps": DRAM.write_bw, "kind": "memory"}
    )
    sys.stdout.write(
        render(rows, args.format, ["name", "bdw_seq_mbps", "bdw_ran_mbps", "kind"])
    )
    return 0


def _breakdown_rows(args, config: AppConfig):
    spec = config.require_workload()
    device = resolve_device(args.device, config)
    tau = _tau(args, config, spec)
    schedule = derive_schedule(spec, tau_override=tau)
    coll = collective_time(schedule, _comm(config), device, args.t_other_collective)
    indiv = individual_time(
        schedule.total_data, device, _pattern(args.pattern), args.t_other_individual
    )
    rows = [
        {
            "device": device.name,
            "strategy": "collective",
            "t_comm_s": coll.t_comm,
            "t_io_s": coll.t_io,
            "t_other_s": coll.t_other,
            "total_s": coll.total,
        },
        {
            "device": device.name,
            "strategy": "individual",
            "t_comm_s": indiv.t_comm,
            "t_io_s": indiv.t_io,
            "t_other_s": indiv.t_other,
            "total_s": indiv.total,
        },
    ]
    return spec, device, schedule, rows


def _cmd_predict(args) -> int:
    config = _load(args)
    _, _, schedule, rows = _breakdown_rows(args, config)
    json_obj = {
        "schedule": {
            "iterations": schedule.iterations,
            "msg_size_mb": schedule.msg_size,
            "tau": schedule.tau,
            "total_data_mb": schedule.total_data,
            "per_aggregator_data_mb": schedule.per_aggregator_data,
        },
        "predictions": rows,
    }
    sys.stdout.write(
        render(
            rows,
            args.format,
            ["device", "strategy", "t_comm_s", "t_io_s", "t_other_s", "total_s"],
            json_obj=json_obj,
        )
    )
    return 0


def _cmd_decide(args) -> int:
    config = _load(args)
    spec = config.require_workload()
    device = resolve_device(args.device, config)
    tau = _tau(args, config, spec)
    schedule = derive_schedule(spec, tau_override=tau)
    decision = decide(
        schedule,
        schedule.total_data,
        _comm(config),
        device,
        args.t_other_collective,
        args.t_other_individual,
        _pattern(args.pattern),
    )
    rows = [
        {
            "device": device.name,
            "strategy": decision.strategy.value,
            "t_collective_s": decision.t_collective,
            "t_individual_s": decision.t_individual,
            "benefit_s": decision.benefit,
        }
    ]
    sys.stdout.write(
        render(
            rows,
            args.format,
            ["device", "strategy", "t_collective_s", "t_individual_s", "benefit_s"],
        )
    )
    return 0


def _cmd_sweep(args) -> int:
    config = _load(args)
    try:
        msg_sizes = [float(tok) for tok in args.msg_sizes_mb.split(",") if tok.strip()]
    except ValueError:
        raise ConfigError(f"--msg-sizes-mb {args.msg_sizes_mb!r}: not a list of numbers") from None
    devices = [resolve_device(name.strip(), config) for name in args.devices.split(",") if name.strip()]
    if args.tau is not None:
        tau = args.tau
    elif config.workload is not None:
        tau = config.tau if config.tau is not None else estimate_tau(config.workload)
    else:
        tau = 0.75
    if args.aggregators is not None:
        aggregators = args.aggregators
    elif config.workload is not None:
        aggregators = config.workload.total_aggregators
    else:
        aggregators = 4
    rows = [
        {
            "device": r.device,
            "msg_size_mb": r.msg_size,
            "shuffle_cost_s": r.shuffle_cost,
            "benefit_s": r.benefit,
        }
        for r in tradeoff_sweep(msg_sizes, _comm(config), devices, tau, aggregators)
    ]
    sys.stdout.write(
        render(rows, args.format, ["device", "msg_size_mb", "shuffle_cost_s", "benefit_s"])
    )
    return 0


def _cmd_simulate(args) -> int:
    config = _load(args)
    spec = config.require_workload()
    device = resolve_device(args.device, config)
    if args.strategy == "collective":
        tau = _tau(args, config, spec)
        schedule = derive_schedule(spec, tau_override=tau)
        report = simulate_collective(
            SimConfig(
                schedule=schedule,
                comm=_comm(config),
                device=device,
                layout=Layout(spec.nodes, spec.procs_per_node, spec.aggregators_per_node),
            )
        )
    else:
        report = simulate_individual(
            total_data(spec), spec.total_processes, device, _pattern(args.pattern)
        )

    if args.per_iteration:
        rows = [
            {"aggregator": a, "iteration": i, "shuffle_s": s, "io_s": o}
            for a, i, s, o in report.iteration_rows()
        ]
        columns = ["aggregator", "iteration", "shuffle_s", "io_s"]
    else:
        rows = [
            {
                "device": report.device,
                "strategy": report.strategy,
                "aggregators": report.aggregators,
                "iterations": report.iterations,
                "makespan_s": report.makespan_s,
                "shuffle_total_s": report.shuffle_total_s,
                "io_total_s": report.io_total_s,
                "shuffle_ratio": report.shuffle_ratio,
            }
        ]
        columns = list(rows[0].keys())
    sys.stdout.write(render(rows, args.format, columns, json_obj=report.to_json_obj()))
    return 0


def _cmd_cache_sim(args) -> int:
    config = _load(args)
    device = resolve_device(args.device, config)
    capacity = args.capacity_mb
    page_size = args.page_size_kb
    if config.cache is not None:
        if capacity is None:
            capacity = config.cache.capacity_mb
        if page_size is None:
            page_size = config.cache.page_size_kb
        flush = config.cache.flush_at_end and not args.no_flush
    else:
        flush = not args.no_flush
    if capacity is None or page_size is None:
        raise ConfigError(
            "cache capacity and page size are required (either a [cache] section "
            "or --capacity-mb/--page-size-kb)"
        )
    cache = PageCacheConfig(capacity_mb=capacity, page_size_kb=page_size, flush_at_end=flush)
    trace = generate_trace(
        TracePattern(args.pattern), args.working_set_mb, page_size, args.passes, args.seed
    )
    report = simulate_page_cache(trace, cache, device, DRAM)
    rows = [
        {
            "device": device.name,
            "pattern": args.pattern,
            "capacity_mb": capacity,
            "elapsed_s": report.elapsed_s,
            "hits": report.hits,
            "misses": report.misses,
            "evictions": report.evictions,
            "flushed_pages": report.flushed_pages,
        }
    ]
    json_obj = {"device": device.name, "pattern": args.pattern, **report.to_json_obj()}
    sys.stdout.write(render(rows, args.format, list(rows[0].keys()), json_obj=json_obj))
    return 0


def _cmd_calibrate(args) -> int:
    samples = read_samples_csv(args.samples)
    result = fit_comm_params(samples)
    rows = [
        {
            "t_s_s": result.t_s,
            "t_w_s_per_mb": result.t_w,
            "rmse_s": result.rmse,
            "valid": result.valid,
            "n_samples": len(samples),
        }
    ]
    json_obj = {
        **rows[0],
        "raw_t_s_s": result.raw_t_s,
        "residuals_s": list(result.residuals),
        "warnings": list(result.warnings),
    }
    out = render(rows, args.format, list(rows[0].keys()), json_obj=json_obj)
    sys.stdout.write(out)
    for warning in result.warnings:
        sys.stderr.write(f"warning: {warning}\n")
    return 0


def _cmd_validate(args) -> int:
    report = validate(tolerance_scale=args.tolerance_scale)
    rows = [
        {
            "name": r.cell.name,
            "expected": r.cell.expected,
            "computed": r.computed,
            "rel_error_pct": 100.0 * r.rel_error,
            "tolerance_pct": 100.0 * r.cell.tolerance * (
                args.tolerance_scale if not r.cell.flagged else 1.0
            ),
            "status": "flagged" if r.passed is None else ("pass" if r.passed else "FAIL"),
            "provenance": r.cell.provenance,
        }
        for r in report.results
    ]
    json_obj = {
        "ok": report.ok,
        "tolerance_scale": args.tolerance_scale,
        "cells": [r.to_json_obj() for r in report.results],
    }
    sys.stdout.write(
        render(
            rows,
            args.format,
            ["name", "expected", "computed", "rel_error_pct", "tolerance_pct", "status", "provenance"],
            json_obj=json_obj,
        )
    )
    return 0 if report.ok else 2


_COMMANDS = {
    "profiles": _cmd_profiles,
    "predict": _cmd_predict,
    "decide": _cmd_decide,
    "sweep": _cmd_sweep,
    "simulate": _cmd_simulate,
    "cache-sim": _cmd_cache_sim,
    "calibrate": _cmd_calibrate,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _COMMANDS[args.command](args)
    except (ConfigError, CalibrationError, ValueError, OSError) as exc:
        sys.stderr.write(f"nvmio-lab: error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
