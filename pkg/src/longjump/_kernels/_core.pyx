# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled hot kernels: cyclic cost frontiers, brute step-length scans,
and the Pareto label-correcting search.  Mirrors `pure.py` exactly."""

import numpy as np

cimport numpy as cnp

from .pure import LabelBudgetError

cnp.import_array()


def pair_frontiers(cnp.int64_t[::1] dlog1, long s2, long n2):
    cdef Py_ssize_t n = dlog1.shape[0]
    cdef long tmax = n2 // 2
    cdef cnp.int64_t sentinel = n + 1
    cdef cnp.ndarray[cnp.int64_t, ndim=1] offsets_arr = np.zeros(n + 1, dtype=np.int64)
    cdef cnp.int64_t[::1] offsets = offsets_arr
    cdef Py_ssize_t cap = 4 * n if 4 * n > 64 else 64
    cdef cnp.ndarray[cnp.int64_t, ndim=1] d1_arr = np.empty(cap, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] d2_arr = np.empty(cap, dtype=np.int64)
    cdef cnp.int64_t[::1] d1 = d1_arr
    cdef cnp.int64_t[::1] d2 = d2_arr
    cdef Py_ssize_t used = 0
    cdef Py_ssize_t g
    cdef long t, pos_p, pos_m, step
    cdef cnp.int64_t best, dp, dm, d
    step = s2 % n
    for g in range(n):
        best = sentinel
        pos_p = g
        pos_m = g
        for t in range(tmax + 1):
            dp = dlog1[pos_p]
            dm = dlog1[pos_m]
            if dp < 0:
                d = dm
            elif dm < 0:
                d = dp
            else:
                d = dp if dp < dm else dm
            if 0 <= d < best:
                if used == cap:
                    cap = cap * 2
                    d1_arr = np.resize(d1_arr, cap)
                    d2_arr = np.resize(d2_arr, cap)
                    d1 = d1_arr
                    d2 = d2_arr
                d1[used] = d
                d2[used] = t
                used += 1
                best = d
                if best == 0:
                    break
            pos_p -= step
            if pos_p < 0:
                pos_p += n
            pos_m += step
            if pos_m >= n:
                pos_m -= n
        offsets[g + 1] = used
    return offsets_arr, d1_arr[:used].copy(), d2_arr[:used].copy()


def min_step_lengths(long n, long s, targets):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] tgt = np.ascontiguousarray(targets, dtype=np.int64)
    cdef Py_ssize_t m = tgt.shape[0]
    cdef cnp.ndarray[cnp.int64_t, ndim=1] visit_arr = np.zeros(n, dtype=np.int64)
    cdef cnp.int64_t[::1] visit = visit_arr
    cdef cnp.ndarray[cnp.int8_t, ndim=1] needed_arr = np.zeros(n, dtype=np.int8)
    cdef cnp.int8_t[::1] needed = needed_arr
    cdef Py_ssize_t i
    cdef long remaining = 0, cur = 0, ell, step, r1, r2
    step = s % n
    for i in range(m):
        r1 = tgt[i] % n
        r2 = (n - r1) % n
        if not needed[r1]:
            needed[r1] = 1
            remaining += 1
        if not needed[r2]:
            needed[r2] = 1
            remaining += 1
    for ell in range(1, n + 1):
        cur += step
        if cur >= n:
            cur -= n
        if visit[cur] == 0:
            visit[cur] = ell
            if needed[cur]:
                needed[cur] = 0
                remaining -= 1
                if remaining == 0:
                    break
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(m, dtype=np.int64)
    cdef long a, b
    for i in range(m):
        r1 = tgt[i] % n
        r2 = (n - r1) % n
        a = visit[r1]
        b = visit[r2]
        if a == 0:
            out[i] = b
        elif b == 0:
            out[i] = a
        else:
            out[i] = a if a < b else b
    return out


def pareto_labels(moves, long id_idx, long k, long budget, long comp_cap):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] mv_arr = np.ascontiguousarray(moves, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] mv = mv_arr
    cdef Py_ssize_t n = mv.shape[1]
    cdef cnp.ndarray[cnp.int32_t, ndim=2] labs_arr = np.zeros((n * budget, k), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] labs = labs_arr
    cdef cnp.ndarray[cnp.int32_t, ndim=1] counts_arr = np.zeros(n, dtype=np.int32)
    cdef cnp.int32_t[::1] counts = counts_arr

    cdef Py_ssize_t qcap = 1024
    cdef cnp.ndarray[cnp.int32_t, ndim=2] queue_arr = np.zeros((qcap, k + 1), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] queue = queue_arr
    cdef Py_ssize_t qhead = 0, qtail = 0

    cdef cnp.int32_t[64] nd
    if k > 64:
        raise ValueError("at most 64 generators supported")

    queue[0, 0] = <cnp.int32_t> id_idx
    qtail = 1
    counts[id_idx] = 1

    cdef Py_ssize_t cur, tgt, base, row, j, w
    cdef long mvi, gi, cnt
    cdef bint present, dominated, ge_all, le_all

    while qhead < qtail:
        cur = queue[qhead, 0]
        # stale check: the popped vector must still be a live label of cur
        base = cur * budget
        cnt = counts[cur]
        present = False
        for row in range(cnt):
            ge_all = True
            for j in range(k):
                if labs[base + row, j] != queue[qhead, j + 1]:
                    ge_all = False
                    break
            if ge_all:
                present = True
                break
        if not present:
            qhead += 1
            continue
        for mvi in range(2 * k):
            gi = mvi >> 1
            if queue[qhead, gi + 1] + 1 > comp_cap:
                continue
            for j in range(k):
                nd[j] = queue[qhead, j + 1]
            nd[gi] += 1
            tgt = mv[mvi, cur]
            base = tgt * budget
            cnt = counts[tgt]
            dominated = False
            for row in range(cnt):
                le_all = True
                for j in range(k):
                    if labs[base + row, j] > nd[j]:
                        le_all = False
                        break
                if le_all:
                    dominated = True
                    break
            if dominated:
                continue
            # drop labels dominated by nd (swap-with-last)
            row = 0
            while row < cnt:
                le_all = True
                for j in range(k):
                    if nd[j] > labs[base + row, j]:
                        le_all = False
                        break
                if le_all:
                    cnt -= 1
                    for j in range(k):
                        labs[base + row, j] = labs[base + cnt, j]
                else:
                    row += 1
            if cnt >= budget:
                raise LabelBudgetError(
                    f"element index {tgt} needs more than {budget} Pareto labels"
                )
            for j in range(k):
                labs[base + cnt, j] = nd[j]
            counts[tgt] = <cnp.int32_t> (cnt + 1)
            if qtail == qcap:
                qcap = qcap * 2
                queue_arr = np.resize(queue_arr, (qcap, k + 1))
                queue = queue_arr
            queue[qtail, 0] = <cnp.int32_t> tgt
            for j in range(k):
                queue[qtail, j + 1] = nd[j]
            qtail += 1
        qhead += 1

    offsets = np.zeros(n + 1, dtype=np.int64)
    offsets[1:] = np.cumsum(counts_arr, dtype=np.int64)
    total = int(offsets[n])
    degs = np.zeros((total, k), dtype=np.int32)
    cdef Py_ssize_t g
    pos = 0
    for g in range(n):
        block = labs_arr[g * budget : g * budget + counts[g]]
        block = block[np.lexsort(block.T[::-1])]
        degs[pos : pos + counts[g]] = block
        pos += counts[g]
    return offsets, degs
