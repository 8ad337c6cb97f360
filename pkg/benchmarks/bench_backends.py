#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the two hot loops (per-aggregator two-phase timeline, page-cache
LRU event loop) on sizeable inputs with both backends, checks the
outputs are bit-for-bit identical, and reports the speedup.

Usage: python benchmarks/bench_backends.py [--events N] [--iterations N]
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from nvmio_lab.devices import DRAM, SSD
from nvmio_lab.simulator import _pykernels
from nvmio_lab.workload import TracePattern, generate_trace

try:
    from nvmio_lab import _ckernels
except ImportError:
    _ckernels = None


def _time(fn, *args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - start)
    return best, result


def bench_collective(iterations: int) -> list[dict]:
    rng = np.random.default_rng(42)
    msgs = rng.uniform(0.1, 16.0, size=iterations)
    link_ts = rng.uniform(1e-3, 1e-2, size=16)
    link_tw = rng.uniform(1e-2, 5e-2, size=16)
    args = (msgs, 0.75, link_ts, link_tw, 4, SSD.bdw_seq)

    t_py, r_py = _time(_pykernels.collective_timeline, *args)
    rows = [{"kernel": "collective_timeline", "backend": "python", "seconds": t_py}]
    if _ckernels is not None:
        t_c, r_c = _time(_ckernels.collective_timeline, *args)
        assert np.array_equal(r_py[0], r_c[0]) and np.array_equal(r_py[1], r_c[1])
        assert r_py[2] == r_c[2], "backends disagree on total time"
        rows.append(
            {
                "kernel": "collective_timeline",
                "backend": "cython",
                "seconds": t_c,
                "speedup": t_py / t_c,
            }
        )
    return rows


def bench_page_cache(events: int) -> list[dict]:
    # enough passes over a 64 MB working set to reach the event budget
    passes = max(2, events // 16384)
    trace = generate_trace(TracePattern.READ_WRITE_MIX, 64.0, 4.0, passes=passes)
    pages = np.ascontiguousarray(trace.page_indices, dtype=np.int64)
    writes = np.ascontiguousarray(trace.is_write, dtype=np.uint8)
    args = (
        pages, writes, 4096, trace.n_pages, 4.0 / 1024.0,
        DRAM.read_bw, DRAM.write_bw, SSD.bdw_ran, SSD.bdw_seq, True,
    )

    t_py, r_py = _time(_pykernels.page_cache_run, *args)
    rows = [
        {
            "kernel": f"page_cache_run ({len(pages)} events)",
            "backend": "python",
            "seconds": t_py,
        }
    ]
    if _ckernels is not None:
        t_c, r_c = _time(_ckernels.page_cache_run, *args)
        assert tuple(r_py) == tuple(r_c), "backends disagree on cache accounting"
        rows.append(
            {
                "kernel": f"page_cache_run ({len(pages)} events)",
                "backend": "cython",
                "seconds": t_c,
                "speedup": t_py / t_c,
            }
        )
    return rows


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--iterations", type=int, default=200_000,
                        help="collective timeline iterations (default 200000)")
    parser.add_argument("--events", type=int, default=500_000,
                        help="page-cache trace events (default 500000)")
    args = parser.parse_args()

    if _ckernels is None:
        print("note: compiled backend unavailable; timing the fallback only")

    rows = bench_collective(args.iterations) + bench_page_cache(args.events)
    width = max(len(r["kernel"]) for r in rows)
    for row in rows:
        speedup = f"  ({row['speedup']:.1f}x)" if "speedup" in row else ""
        print(f"{row['kernel']:<{width}}  {row['backend']:<7} {row['seconds']*1e3:9.2f} ms{speedup}")
    if _ckernels is not None:
        print("outputs: bit-for-bit identical across backends")
    return 0


if __name__ == "__main__":
    sys.exit(main())
