"""Pure-Python kernels for the simulator inner loops.

These are the reference implementations; `nvmio_lab._ckernels` compiles
the same loops with Cython. Both backends perform the identical
floating-point operations in the identical order, so their outputs are
bit-for-bit equal (the benchmark asserts this).
"""

from __future__ import annotations

from collections import OrderedDict

import numpy as np


def collective_timeline(
    msgs: np.ndarray,
    tau: float,
    link_ts: np.ndarray,
    link_tw: np.ndarray,
    n_aggregators: int,
    bdw_seq: float,
) -> tuple[np.ndarray, np.ndarray, float]:
    """One aggregator's two-phase timeline.

    Per iteration: the shuffle phase costs the slowest incoming link's
    t_s + t_w * msg * tau (concurrent senders overlap); the I/O phase
    writes the iteration's buffer at a fair share of the device's
    sequential bandwidth (n_aggregators concurrent writers). Returns
    (shuffle_s, io_s, total_s) with iterations strictly sequential.
    """
    mt = msgs * tau
    terms = link_ts[:, None] + link_tw[:, None] * mt[None, :]
    shuffle = terms.max(axis=0)
    io = (msgs * n_aggregators) / bdw_seq
    total = 0.0
    for s, v in zip(shuffle.tolist(), io.tolist()):
        total += s
        total += v
    return shuffle, io, total


def page_cache_run(
    pages: np.ndarray,
    is_write: np.ndarray,
    capacity_pages: int,
    n_pages: int,
    page_mb: float,
    mem_read_bw: float,
    mem_write_bw: float,
    dev_ran_bw: float,
    dev_seq_bw: float,
    flush_at_end: bool,
) -> tuple[float, int, int, int, int, int, int, int]:
    """LRU write-back page cache over a trace.

    Read hits and writes run at memory speed; read misses and dirty
    evictions hit the device at its random bandwidth; a final flush of
    remaining dirty pages streams at the sequential bandwidth. With
    zero capacity every access goes straight to the device.

    Returns (elapsed_s, read_hits, read_misses, write_hits,
    write_misses, evictions_clean, evictions_dirty, flushed_pages).
    """
    cost_hit_r = page_mb / mem_read_bw
    cost_hit_w = page_mb / mem_write_bw
    cost_dev_ran = page_mb / dev_ran_bw

    lru: OrderedDict[int, int] = OrderedDict()  # page -> dirty; last item is MRU
    elapsed = 0.0
    read_hits = read_misses = write_hits = write_misses = 0
    evictions_clean = evictions_dirty = 0

    for page, write in zip(pages.tolist(), is_write.tolist()):
        if write:
            if page in lru:
                write_hits += 1
                elapsed += cost_hit_w
                lru.move_to_end(page)
                lru[page] = 1
            elif capacity_pages > 0:
                write_misses += 1
                elapsed += cost_hit_w
                if len(lru) >= capacity_pages:
                    _, dirty = lru.popitem(last=False)
                    if dirty:
                        evictions_dirty += 1
                        elapsed += cost_dev_ran
                    else:
                        evictions_clean += 1
                lru[page] = 1
            else:
                write_misses += 1
                elapsed += cost_dev_ran
        else:
            if page in lru:
                read_hits += 1
                elapsed += cost_hit_r
                lru.move_to_end(page)
            else:
                read_misses += 1
                elapsed += cost_dev_ran
                if capacity_pages > 0:
                    if len(lru) >= capacity_pages:
                        _, dirty = lru.popitem(last=False)
                        if dirty:
                            evictions_dirty += 1
                            elapsed += cost_dev_ran
                        else:
                            evictions_clean += 1
                    lru[page] = 0

    flushed = 0
    if flush_at_end:
        flushed = sum(lru.values())
        if flushed:
            elapsed += (flushed * page_mb) / dev_seq_bw

    return (
        elapsed,
        read_hits,
        read_misses,
        write_hits,
        write_misses,
        evictions_clean,
        evictions_dirty,
        flushed,
    )
