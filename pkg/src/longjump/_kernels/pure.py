"""Pure numpy/Python fallback for the hot kernels.

Same contracts and return layouts as the compiled module `_core`; selected at
import time by the package `__init__` when the extension is unavailable or
LONGJUMP_PURE is set.
"""

from __future__ import annotations

from collections import deque

import numpy as np


class LabelBudgetError(RuntimeError):
    """Pareto label set at some element exceeded the configured budget."""


def pair_frontiers(dlog1: np.ndarray, s2: int, n2: int):
    """Per-element Pareto frontiers for a two-generator cost problem on Z/N.

    dlog1[x] is the minimal |l| with l*s1 = x mod N (-1 if unreachable).  For
    each g the candidates are (dlog1[(g - t*s2) mod N], |t|) over
    t in [-n2//2, n2//2]; the frontier keeps the strictly improving dlog
    records as |t| grows.

    Returns (offsets, d1, d2): frontier rows of g are offsets[g]:offsets[g+1],
    d2 strictly increasing and d1 strictly decreasing within each row.
    """
    n = dlog1.shape[0]
    tmax = n2 // 2
    sentinel = np.int64(n + 1)
    base = np.where(dlog1 < 0, sentinel, dlog1).astype(np.int64)
    best = np.full(n, sentinel, dtype=np.int64)
    gs: list[np.ndarray] = []
    d1s: list[np.ndarray] = []
    d2s: list[np.ndarray] = []
    for t in range(tmax + 1):
        off = (t * s2) % n
        m = np.minimum(np.roll(base, off), np.roll(base, -off))
        mask = m < best
        if mask.any():
            idx = np.flatnonzero(mask)
            gs.append(idx)
            d1s.append(m[idx])
            d2s.append(np.full(idx.shape, t, dtype=np.int64))
            best[idx] = m[idx]
            if not best.any():
                break
    g_all = np.concatenate(gs)
    order = np.argsort(g_all, kind="stable")
    g_all = g_all[order]
    d1 = np.concatenate(d1s)[order]
    d2 = np.concatenate(d2s)[order]
    counts = np.bincount(g_all, minlength=n)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return offsets, d1, d2


def min_step_lengths(n: int, s: int, targets: np.ndarray) -> np.ndarray:
    """Least l >= 1 with l*s = t or l*s = -t mod n, per target; 0 if none within n."""
    targets = np.asarray(targets, dtype=np.int64)
    res = np.zeros(targets.shape[0], dtype=np.int64)
    pending: dict[int, list[int]] = {}
    for i, t in enumerate(targets.tolist()):
        for residue in (t % n, (n - t) % n):
            pending.setdefault(residue, []).append(i)
    found = np.full(targets.shape[0], 0, dtype=np.int64)
    chunk = 1 << 16
    start = 1
    while start <= n and pending:
        stop = min(n, start + chunk - 1)
        vals = (np.arange(start, stop + 1, dtype=np.int64) * s) % n
        for residue in list(pending):
            hits = np.flatnonzero(vals == residue)
            if hits.size:
                ell = start + int(hits[0])
                for i in pending.pop(residue):
                    if found[i] == 0 or ell < found[i]:
                        found[i] = ell
        start = stop + 1
    res[:] = found
    return res


def pareto_labels(moves: np.ndarray, id_idx: int, k: int, budget: int, comp_cap: int):
    """Label-correcting Pareto search over a group given by generator moves.

    moves has shape (2k, |G|): row 2i applies s_i, row 2i+1 applies s_i^-1.
    A label is a degree vector; a label survives iff no other label at the
    same element is componentwise <= it.  Raises LabelBudgetError instead of
    pruning when an element collects more than ``budget`` labels.

    Returns (offsets, degs): degs is (L, k) int32, each element's rows sorted
    lexicographically.
    """
    n = moves.shape[1]
    labels: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    zero = (0,) * k
    labels[id_idx] = [zero]
    queue: deque[tuple[int, tuple[int, ...]]] = deque([(id_idx, zero)])
    while queue:
        cur, deg = queue.popleft()
        if deg not in labels[cur]:
            continue
        for mv in range(2 * k):
            gi = mv >> 1
            if deg[gi] + 1 > comp_cap:
                continue
            nd = deg[:gi] + (deg[gi] + 1,) + deg[gi + 1 :]
            tgt = int(moves[mv, cur])
            existing = labels[tgt]
            dominated = False
            for lab in existing:
                if all(a <= b for a, b in zip(lab, nd)):
                    dominated = True
                    break
            if dominated:
                continue
            kept = [lab for lab in existing if not all(a <= b for a, b in zip(nd, lab))]
            kept.append(nd)
            if len(kept) > budget:
                raise LabelBudgetError(
                    f"element index {tgt} needs more than {budget} Pareto labels"
                )
            labels[tgt] = kept
            queue.append((tgt, nd))
    offsets = np.zeros(n + 1, dtype=np.int64)
    rows: list[tuple[int, ...]] = []
    for g in range(n):
        labs = sorted(labels[g])
        offsets[g + 1] = offsets[g] + len(labs)
        rows.extend(labs)
    degs = np.array(rows, dtype=np.int32).reshape(len(rows), k)
    return offsets, degs
