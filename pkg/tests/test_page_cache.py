import numpy as np
import pytest

from nvmio_lab.devices import DRAM, HDD, NVM, SSD
from nvmio_lab.simulator import (
    PageCacheConfig,
    backend_name,
    simulate_page_cache,
)
from nvmio_lab.simulator import _backend, _pykernels
from nvmio_lab.workload import TracePattern, generate_trace

PAGE_KB = 4.0
PAGE_MB = PAGE_KB / 1024.0


def run(trace, capacity_mb, device, flush=True):
    cache = PageCacheConfig(capacity_mb=capacity_mb, page_size_kb=PAGE_KB, flush_at_end=flush)
    return simulate_page_cache(trace, cache, device, DRAM)


def test_streaming_read_every_access_misses():
    trace = generate_trace(TracePattern.STREAMING_READ, 1.0, PAGE_KB)
    report = run(trace, capacity_mb=2.0, device=HDD)
    assert report.read_misses == 256
    assert report.read_hits == 0
    assert report.evictions == 0
    assert report.flushed_pages == 0
    assert report.elapsed_s == pytest.approx(256 * PAGE_MB / HDD.bdw_ran, rel=1e-12)


def test_read_write_mix_hits_after_first_pass_with_large_cache():
    trace = generate_trace(TracePattern.READ_WRITE_MIX, 1.0, PAGE_KB, passes=4)
    report = run(trace, capacity_mb=2.0, device=SSD)
    n = 256
    assert report.write_misses == n  # cold first write sweep
    assert report.read_misses == 0
    assert report.hits == 3 * n
    assert report.evictions == 0
    assert report.flushed_pages == n  # pages stay dirty after the last write sweep
    expected = (
        n * (PAGE_MB / DRAM.write_bw)  # cold write-allocate
        + n * (PAGE_MB / DRAM.read_bw)
        + n * (PAGE_MB / DRAM.write_bw)
        + n * (PAGE_MB / DRAM.read_bw)
        + n * PAGE_MB / SSD.bdw_seq  # final flush
    )
    assert report.elapsed_s == pytest.approx(expected, rel=1e-12)


def test_zero_capacity_sends_everything_to_device():
    trace = generate_trace(TracePattern.READ_WRITE_MIX, 1.0, PAGE_KB, passes=2)
    report = run(trace, capacity_mb=0.0, device=NVM)
    assert report.hits == 0
    assert report.misses == len(trace)
    assert report.evictions == 0
    assert report.elapsed_s == pytest.approx(len(trace) * PAGE_MB / NVM.bdw_ran, rel=1e-12)


def test_dirty_evictions_are_charged():
    # sequential writes over 2x the cache: every insertion past warmup
    # evicts a dirty page
    trace = generate_trace(TracePattern.SEQUENTIAL_WRITE, 2.0, PAGE_KB, passes=1)
    report = run(trace, capacity_mb=1.0, device=HDD, flush=False)
    n = 512
    cap = 256
    assert report.write_misses == n
    assert report.evictions_dirty == n - cap
    assert report.evictions_clean == 0
    expected = n * (PAGE_MB / DRAM.write_bw) + (n - cap) * (PAGE_MB / HDD.bdw_ran)
    assert report.elapsed_s == pytest.approx(expected, rel=1e-12)


def test_flush_streams_at_sequential_bandwidth():
    trace = generate_trace(TracePattern.SEQUENTIAL_WRITE, 1.0, PAGE_KB, passes=1)
    with_flush = run(trace, capacity_mb=2.0, device=HDD, flush=True)
    without = run(trace, capacity_mb=2.0, device=HDD, flush=False)
    assert with_flush.flushed_pages == 256
    assert without.flushed_pages == 0
    delta = with_flush.elapsed_s - without.elapsed_s
    assert delta == pytest.approx(256 * PAGE_MB / HDD.bdw_seq, rel=1e-12)


def test_lru_recency_is_respected():
    # touch page 0 between sweeps of a cache-sized working set: page 0
    # must survive while untouched pages are evicted in LRU order
    from nvmio_lab.workload import IoTrace

    indices = np.array([0, 1, 2, 3, 0, 4, 1], dtype=np.int64)
    writes = np.zeros(len(indices), dtype=np.uint8)
    trace = IoTrace(
        page_indices=indices,
        is_write=writes,
        page_size_kb=PAGE_KB,
        working_set_mb=5 * PAGE_MB,
    )
    cache = PageCacheConfig(capacity_mb=4 * PAGE_MB, page_size_kb=PAGE_KB)
    report = simulate_page_cache(trace, cache, HDD, DRAM)
    # second access to 0 hits; inserting 4 evicts page 1 (LRU), so the
    # final access to 1 misses again
    assert report.read_hits == 1
    assert report.read_misses == 6


def test_miss_count_monotone_in_capacity():
    trace = generate_trace(TracePattern.READ_WRITE_MIX, 8.0, PAGE_KB, passes=4)
    misses = [
        run(trace, capacity_mb=c, device=NVM).misses for c in (0.0, 1.0, 2.0, 4.0, 8.0, 12.0)
    ]
    assert all(a >= b for a, b in zip(misses, misses[1:]))


def test_sensitivity_ordering_at_half_capacity():
    # working set twice the cache capacity: the slowdown relative to a
    # cache that holds everything orders HDD > SSD > NVM
    trace = generate_trace(TracePattern.READ_WRITE_MIX, 8.0, PAGE_KB, passes=4)
    ratios = {}
    for device in (HDD, SSD, NVM):
        small = run(trace, capacity_mb=4.0, device=device).elapsed_s
        large = run(trace, capacity_mb=12.0, device=device).elapsed_s
        ratios[device.name] = small / large
    assert ratios["HDD"] > ratios["SSD"] > ratios["NVM"]


def test_capacity_rounds_down_to_whole_pages():
    cache = PageCacheConfig(capacity_mb=PAGE_MB * 2.5, page_size_kb=PAGE_KB)
    assert cache.capacity_pages == 2


def test_rejects_out_of_range_page_indices():
    from nvmio_lab.workload import IoTrace

    trace = IoTrace(
        page_indices=np.array([0, 99], dtype=np.int64),
        is_write=np.zeros(2, dtype=np.uint8),
        page_size_kb=PAGE_KB,
        working_set_mb=8 * PAGE_MB,
    )
    cache = PageCacheConfig(capacity_mb=1.0, page_size_kb=PAGE_KB)
    with pytest.raises(ValueError):
        simulate_page_cache(trace, cache, HDD, DRAM)


def test_backends_agree_bitwise_on_cache_runs():
    trace = generate_trace(TracePattern.READ_WRITE_MIX, 2.0, PAGE_KB, passes=3)
    pages = np.ascontiguousarray(trace.page_indices, dtype=np.int64)
    writes = np.ascontiguousarray(trace.is_write, dtype=np.uint8)
    args = (pages, writes, 128, trace.n_pages, PAGE_MB, DRAM.read_bw, DRAM.write_bw,
            SSD.bdw_ran, SSD.bdw_seq, True)
    py = _pykernels.page_cache_run(*args)
    active = _backend.page_cache_run(*args)
    assert tuple(py) == tuple(active)
    if backend_name() == "python":
        pytest.skip("compiled backend not available; fallback compared to itself")
