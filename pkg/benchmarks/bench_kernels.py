"""Benchmark the compiled kernels against the pure fallback on identical inputs.

Run as: python benchmarks/bench_kernels.py
"""

from __future__ import annotations

import math
import time

import numpy as np

from longjump._kernels import pure

try:
    from longjump._kernels import _core
except ImportError:
    _core = None


def _time(fn, *args, repeat=3):
    best = math.inf
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def bench_pair_frontiers():
    n, s = 20_000, 4_937
    order = n // math.gcd(n, s)
    j = np.arange(n, dtype=np.int64)
    dlog = np.minimum(j, n - j)
    rows = []
    t_pure, out_pure = _time(pure.pair_frontiers, dlog, s, order)
    rows.append(("pair_frontiers", "pure", t_pure))
    if _core is not None:
        t_fast, out_fast = _time(_core.pair_frontiers, dlog, s, order)
        rows.append(("pair_frontiers", "compiled", t_fast))
        for a, b in zip(out_pure, out_fast):
            assert np.array_equal(a, b), "backend mismatch"
    return rows


def bench_min_step_lengths():
    n, s = 1_999_993, 777_777
    targets = np.array([1, 17, 12345, 999_996], dtype=np.int64)
    rows = []
    t_pure, out_pure = _time(pure.min_step_lengths, n, s, targets)
    rows.append(("min_step_lengths", "pure", t_pure))
    if _core is not None:
        t_fast, out_fast = _time(_core.min_step_lengths, n, s, targets)
        rows.append(("min_step_lengths", "compiled", t_fast))
        assert np.array_equal(out_pure, out_fast), "backend mismatch"
    return rows


def bench_pareto():
    from longjump.cost import cost_table_pareto
    from longjump.groups import heisenberg_standard_triple, make_walk

    group, triple = heisenberg_standard_triple(7)
    walk = make_walk(group, triple, [1.0, 1.0, 1.0])
    elements = list(group.enumerate())
    index = {g: i for i, g in enumerate(elements)}
    moves = np.empty((6, len(elements)), dtype=np.int32)
    for i, gen in enumerate(walk.gens):
        gi = group.inv(gen)
        for x, g in enumerate(elements):
            moves[2 * i, x] = index[group.mul(g, gen)]
            moves[2 * i + 1, x] = index[group.mul(g, gi)]
    id_idx = index[group.identity()]
    rows = []
    t_pure, out_pure = _time(pure.pareto_labels, moves, id_idx, 3, 96, len(elements), repeat=1)
    rows.append(("pareto_labels H3(7)", "pure", t_pure))
    if _core is not None:
        t_fast, out_fast = _time(_core.pareto_labels, moves, id_idx, 3, 96, len(elements), repeat=1)
        rows.append(("pareto_labels H3(7)", "compiled", t_fast))
        assert np.array_equal(out_pure[0], out_fast[0])
        assert np.array_equal(out_pure[1], out_fast[1])
    return rows


def main() -> None:
    print(f"compiled extension available: {_core is not None}")
    all_rows = bench_pair_frontiers() + bench_min_step_lengths() + bench_pareto()
    print(f"{'kernel':<24} {'backend':<10} {'seconds':>12}")
    by_kernel: dict[str, dict[str, float]] = {}
    for kernel, backend, secs in all_rows:
        print(f"{kernel:<24} {backend:<10} {secs:>12.6f}")
        by_kernel.setdefault(kernel, {})[backend] = secs
    for kernel, entry in by_kernel.items():
        if "compiled" in entry:
            print(f"{kernel}: speedup x{entry['pure'] / entry['compiled']:.1f}")


if __name__ == "__main__":
    main()
