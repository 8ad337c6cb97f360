# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels for the simulator inner loops.

Same semantics and the same floating-point operation order as
`nvmio_lab.simulator._pykernels`; outputs are bit-for-bit identical.
"""

import numpy as np


def collective_timeline(double[::1] msgs, double tau,
                        double[::1] link_ts, double[::1] link_tw,
                        long n_aggregators, double bdw_seq):
    cdef Py_ssize_t n = msgs.shape[0]
    cdef Py_ssize_t n_links = link_ts.shape[0]
    shuffle_arr = np.empty(n, dtype=np.float64)
    io_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] shuffle = shuffle_arr
    cdef double[::1] io = io_arr
    cdef double total = 0.0
    cdef double mt, best, term
    cdef double aggs = <double> n_aggregators
    cdef Py_ssize_t i, l

    for i in range(n):
        mt = msgs[i] * tau
        best = link_ts[0] + link_tw[0] * mt
        for l in range(1, n_links):
            term = link_ts[l] + link_tw[l] * mt
            if term > best:
                best = term
        shuffle[i] = best
        io[i] = (msgs[i] * aggs) / bdw_seq

    for i in range(n):
        total += shuffle[i]
        total += io[i]
    return shuffle_arr, io_arr, total


def page_cache_run(long[::1] pages, unsigned char[::1] is_write,
                   long capacity_pages, long n_pages, double page_mb,
                   double mem_read_bw, double mem_write_bw,
                   double dev_ran_bw, double dev_seq_bw, bint flush_at_end):
    cdef double cost_hit_r = page_mb / mem_read_bw
    cdef double cost_hit_w = page_mb / mem_write_bw
    cdef double cost_dev_ran = page_mb / dev_ran_bw

    # LRU as a doubly linked list over page ids; head is MRU, tail is LRU.
    nxt_arr = np.full(n_pages, -1, dtype=np.int64)
    prv_arr = np.full(n_pages, -1, dtype=np.int64)
    in_cache_arr = np.zeros(n_pages, dtype=np.uint8)
    dirty_arr = np.zeros(n_pages, dtype=np.uint8)
    cdef long[::1] nxt = nxt_arr
    cdef long[::1] prv = prv_arr
    cdef unsigned char[::1] in_cache = in_cache_arr
    cdef unsigned char[::1] dirty = dirty_arr

    cdef long head = -1, tail = -1, size = 0
    cdef double elapsed = 0.0
    cdef long read_hits = 0, read_misses = 0, write_hits = 0, write_misses = 0
    cdef long evictions_clean = 0, evictions_dirty = 0, flushed = 0
    cdef Py_ssize_t n_events = pages.shape[0]
    cdef Py_ssize_t i
    cdef long page, victim, pr, nx
    cdef unsigned char write

    for i in range(n_events):
        page = pages[i]
        write = is_write[i]
        if in_cache[page]:
            if write:
                write_hits += 1
                elapsed += cost_hit_w
                dirty[page] = 1
            else:
                read_hits += 1
                elapsed += cost_hit_r
            # move to MRU position
            if head != page:
                pr = prv[page]
                nx = nxt[page]
                if pr != -1:
                    nxt[pr] = nx
                if nx != -1:
                    prv[nx] = pr
                if tail == page:
                    tail = pr
                prv[page] = -1
                nxt[page] = head
                if head != -1:
                    prv[head] = page
                head = page
        else:
            if write:
                write_misses += 1
                if capacity_pages > 0:
                    elapsed += cost_hit_w
                else:
                    elapsed += cost_dev_ran
            else:
                read_misses += 1
                elapsed += cost_dev_ran
            if capacity_pages > 0:
                if size >= capacity_pages:
                    victim = tail
                    pr = prv[victim]
                    if pr != -1:
                        nxt[pr] = -1
                    else:
                        head = -1
                    tail = pr
                    prv[victim] = -1
                    in_cache[victim] = 0
                    size -= 1
                    if dirty[victim]:
                        evictions_dirty += 1
                        elapsed += cost_dev_ran
                        dirty[victim] = 0
                    else:
                        evictions_clean += 1
                # insert at MRU
                prv[page] = -1
                nxt[page] = head
                if head != -1:
                    prv[head] = page
                head = page
                if tail == -1:
                    tail = page
                in_cache[page] = 1
                dirty[page] = write
                size += 1

    if flush_at_end:
        victim = head
        while victim != -1:
            if dirty[victim]:
                flushed += 1
            victim = nxt[victim]
        if flushed:
            elapsed += (flushed * page_mb) / dev_seq_bw

    return (elapsed, read_hits, read_misses, write_hits, write_misses,
            evictions_clean, evictions_dirty, flushed)
