"""Parity between the compiled kernels and the pure fallback on identical inputs."""

import math

import numpy as np
import pytest

from longjump._kernels import backend, pure

_core = pytest.importorskip("longjump._kernels._core")


def _dlog_unit(n):
    j = np.arange(n, dtype=np.int64)
    return np.minimum(j, n - j)


@pytest.mark.parametrize("n,s", [(101, 13), (100, 10), (96, 36), (57, 2), (40, 20)])
def test_pair_frontiers_parity(n, s):
    order = n // math.gcd(n, s)
    out_p = pure.pair_frontiers(_dlog_unit(n), s, order)
    out_c = _core.pair_frontiers(_dlog_unit(n), s, order)
    for a, b in zip(out_p, out_c):
        assert np.array_equal(a, b)


def test_pair_frontiers_with_unreachable_entries():
    # dlog for the subgroup <2> inside Z/12: odd residues unreachable
    n = 12
    dlog = np.full(n, -1, dtype=np.int64)
    ell = np.arange(6, dtype=np.int64)
    dlog[(2 * ell) % n] = np.minimum(ell, 6 - ell)
    out_p = pure.pair_frontiers(dlog, 3, 4)
    out_c = _core.pair_frontiers(dlog, 3, 4)
    for a, b in zip(out_p, out_c):
        assert np.array_equal(a, b)
    offsets = out_p[0]
    assert (np.diff(offsets) > 0).all()  # <2> plus 3-shifts cover Z/12


@pytest.mark.parametrize("n,s", [(101, 13), (2000, 761), (128, 48), (9973, 4999)])
def test_min_step_lengths_parity(n, s):
    targets = np.array([1, 2, 5, n // 3, n - 1, 0], dtype=np.int64)
    a = pure.min_step_lengths(n, s, targets)
    b = _core.min_step_lengths(n, s, targets)
    assert np.array_equal(a, b)


def test_min_step_lengths_oracle():
    n, s = 30, 4  # gcd 2: odd targets unreachable
    targets = np.array([2, 8, 3], dtype=np.int64)
    got = _core.min_step_lengths(n, s, targets)

    def slow(t):
        best = 0
        for ell in range(1, n + 1):
            if (ell * s) % n in (t % n, (n - t) % n):
                return ell
        return best

    assert got.tolist() == [slow(2), slow(8), 0]


def _moves_for(group, gens):
    elements = list(group.enumerate())
    index = {g: i for i, g in enumerate(elements)}
    moves = np.empty((2 * len(gens), len(elements)), dtype=np.int32)
    for i, s in enumerate(gens):
        si = group.inv(s)
        for x, g in enumerate(elements):
            moves[2 * i, x] = index[group.mul(g, s)]
            moves[2 * i + 1, x] = index[group.mul(g, si)]
    return moves, index[group.identity()]


def test_pareto_parity_heisenberg():
    from longjump.groups import heisenberg_standard_triple

    group, triple = heisenberg_standard_triple(4)
    moves, id_idx = _moves_for(group, triple)
    out_p = pure.pareto_labels(moves, id_idx, 3, 64, group.order)
    out_c = _core.pareto_labels(moves, id_idx, 3, 64, group.order)
    assert np.array_equal(out_p[0], out_c[0])
    assert np.array_equal(out_p[1], out_c[1])


def test_pareto_parity_cyclic():
    from longjump.groups import GroupSpec

    group = GroupSpec.cyclic(60)
    moves, id_idx = _moves_for(group, [(1,), (7,)])
    out_p = pure.pareto_labels(moves, id_idx, 2, 64, group.order)
    out_c = _core.pareto_labels(moves, id_idx, 2, 64, group.order)
    assert np.array_equal(out_p[0], out_c[0])
    assert np.array_equal(out_p[1], out_c[1])


def test_backend_reports_compiled():
    assert backend() in ("compiled", "pure")
