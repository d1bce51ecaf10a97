"""Exact quasi-norm cost tables, the diameter, and the Heisenberg closed forms.

The cost of g is the min over words representing g of max_i Phi_ai(d_i), where
d_i counts uses of generator i (either sign).  Two exact constructions are
provided: an exponent-lattice enumeration for abelian groups (with a compiled
fast path for two-generator cyclic walks) and a Pareto label-correcting search
that works on any supported group.  They agree exactly on abelian groups and
cross-validate each other.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .groups import Element, GroupOrderError, WalkSpec
from .measure import cyclic_abs

DEFAULT_TABLE_CAP = 10**6
DEFAULT_PARETO_CAP = 10**4
DEFAULT_LABEL_BUDGET = 64


def phi_alpha(alpha: float, x: int) -> float:
    """Phi_a(x): x^a for a in (0,2); x^2/ln x at a = 2 (0, 1 map to 0, 1); x^2 above.

    Strictly increasing for x >= 1 at every exponent.  Evaluated through numpy
    float64 ops so that scalar and vectorized paths give bitwise-equal values.
    """
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if x < 0:
        raise ValueError("x must be nonnegative")
    if x == 0:
        return 0.0
    if alpha < 2:
        return float(np.float64(x) ** np.float64(alpha))
    if alpha == 2:
        return 1.0 if x == 1 else float(np.float64(x) ** 2 / np.log(np.float64(x)))
    return float(x) ** 2


def phi_alpha_arr(alpha: float, xs: np.ndarray) -> np.ndarray:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    xs = np.asarray(xs, dtype=np.float64)
    if alpha < 2:
        return xs ** np.float64(alpha)
    if alpha == 2:
        out = np.ones_like(xs)
        big = xs >= 2
        with np.errstate(divide="ignore", invalid="ignore"):
            out[big] = xs[big] ** 2 / np.log(xs[big])
        out[xs == 0] = 0.0
        return out
    return xs**2


def quasi_triangle_factor(alphas: tuple[float, ...]) -> float:
    """Constant in cost(gh) <= C (cost(g) + cost(h)): 2 below the Phi regime, 4 in it."""
    return 4.0 if any(a >= 2 for a in alphas) else 2.0


@dataclass
class CostTable:
    """Exact cost and a witness degree vector for every group element."""

    walk: WalkSpec
    elements: list[Element]
    costs: np.ndarray
    witnesses: np.ndarray
    diameter: float
    argmax: Element

    def __post_init__(self) -> None:
        self.index = {g: i for i, g in enumerate(self.elements)}

    def cost(self, g: Element) -> float:
        return float(self.costs[self.index[g]])

    def witness(self, g: Element) -> tuple[int, ...]:
        return tuple(int(d) for d in self.witnesses[self.index[g]])

    def to_csv(self, path) -> None:
        from .serialize import write_csv

        rows = [
            (
                ":".join(str(c) for c in g),
                self.costs[i],
                ":".join(str(int(d)) for d in self.witnesses[i]),
            )
            for i, g in enumerate(self.elements)
        ]
        write_csv(path, ("element", "cost", "witness_degs"), rows)

    def report(self) -> dict:
        values, counts = np.unique(self.costs, return_counts=True)
        return {
            "walk": self.walk.describe(),
            "diameter": self.diameter,
            "argmax": ":".join(str(c) for c in self.argmax),
            "histogram": {format(v, ".17g"): int(c) for v, c in zip(values, counts)},
        }

    def to_json(self, path) -> None:
        from .serialize import write_json

        write_json(path, self.report())


def _finish_table(walk, elements, costs, witnesses) -> CostTable:
    arg = int(np.argmax(costs))
    return CostTable(
        walk=walk,
        elements=elements,
        costs=costs,
        witnesses=witnesses,
        diameter=float(costs[arg]),
        argmax=elements[arg],
    )


def _unit_dlog(n: int) -> np.ndarray:
    """Discrete log table for the generator 1 of Z/n: just the cyclic distance."""
    j = np.arange(n, dtype=np.int64)
    return np.minimum(j, n - j)


def _subgroup_dlog_array(n: int, s: int, order: int) -> np.ndarray:
    """dlog[x] = min |l| with l*s = x mod n, or -1 when x is not in <s>."""
    out = np.full(n, -1, dtype=np.int64)
    ell = np.arange(order, dtype=np.int64)
    pos = (ell * s) % n
    out[pos] = np.minimum(ell, order - ell)
    return out


def cyclic_pair_frontier(n: int, s1: int, s2: int, order1: int, order2: int):
    """Pareto frontiers of (|x1|, |x2|) witnesses for g = x1 s1 + x2 s2 on Z/n.

    Enumerates the generator with the smaller order; the other is solved via
    its discrete-log table.  Returns (offsets, d_solve, d_enum, swapped):
    ``swapped`` is True when the enumerated generator is s1.
    """
    if order2 <= order1:
        dlog = _unit_dlog(n) if s1 == 1 else _subgroup_dlog_array(n, s1, order1)
        offsets, d1, d2 = _kernels.pair_frontiers(dlog, s2, order2)
        return offsets, d1, d2, False
    dlog = _unit_dlog(n) if s2 == 1 else _subgroup_dlog_array(n, s2, order2)
    offsets, d1, d2 = _kernels.pair_frontiers(dlog, s1, order1)
    return offsets, d1, d2, True


def frontier_costs(offsets, d_solve, d_enum, alpha_solve: float, alpha_enum: float):
    """Per-element costs from a frontier: min over rows of max(Phi(d1), Phi(d2))."""
    vals = np.maximum(phi_alpha_arr(alpha_solve, d_solve), phi_alpha_arr(alpha_enum, d_enum))
    return np.minimum.reduceat(vals, offsets[:-1]), vals


def cyclic_pair_diameters(n: int, s1: int, s2: int, alpha_pairs, order1: int, order2: int):
    """Diameters of Z/n with S = (s1, s2) for many exponent pairs at once.

    The witness frontier is alpha-independent, so one frontier construction
    serves every exponent pair; this is the hot path of the Euclid sandwich
    sweep and the diameter-exponent fits.
    """
    offsets, d_solve, d_enum, swapped = cyclic_pair_frontier(n, s1, s2, order1, order2)
    out = np.empty(len(alpha_pairs))
    for t, (a1, a2) in enumerate(alpha_pairs):
        a_solve, a_enum = (a2, a1) if swapped else (a1, a2)
        costs, _ = frontier_costs(offsets, d_solve, d_enum, a_solve, a_enum)
        out[t] = costs.max()
    return out


def _segment_argmin(vals, segmins, offsets):
    reps = np.repeat(segmins, np.diff(offsets))
    idx = np.arange(vals.shape[0], dtype=np.int64)
    cand = np.where(vals == reps, idx, vals.shape[0])
    return np.minimum.reduceat(cand, offsets[:-1])


def cost_table_abelian(walk: WalkSpec, cap: int = DEFAULT_TABLE_CAP) -> CostTable:
    """Exact table for abelian groups by exponent-lattice enumeration.

    cost(g) = min over (x_1..x_k) with sum x_i s_i = g, |x_i| <= N_i/2, of
    max_i Phi_ai(|x_i|); the k-1 generators of smallest order are enumerated
    and the last coordinate is solved through a discrete-log table.
    """
    group = walk.group
    if not group.is_abelian:
        raise ValueError("cost_table_abelian requires an abelian group")
    if group.order > cap:
        raise GroupOrderError(f"group order {group.order} exceeds cap {cap}")
    elements = list(group.enumerate(cap))
    k = walk.k

    if group.kind == "cyclic" and k == 2:
        n = group.moduli[0]
        s1, s2 = walk.gens[0][0], walk.gens[1][0]
        offsets, d_solve, d_enum, swapped = cyclic_pair_frontier(
            n, s1, s2, walk.orders[0], walk.orders[1]
        )
        if (np.diff(offsets) <= 0).any():
            raise RuntimeError("frontier left an element uncovered; walk must generate")
        a_solve, a_enum = (walk.alphas[1], walk.alphas[0]) if swapped else walk.alphas
        costs, vals = frontier_costs(offsets, d_solve, d_enum, a_solve, a_enum)
        sel = _segment_argmin(vals, costs, offsets)
        witnesses = np.empty((n, 2), dtype=np.int64)
        i_solve, i_enum = (1, 0) if swapped else (0, 1)
        witnesses[:, i_solve] = d_solve[sel]
        witnesses[:, i_enum] = d_enum[sel]
        return _finish_table(walk, elements, costs, witnesses)

    index = {g: i for i, g in enumerate(elements)}
    by_order = sorted(range(k), key=lambda i: (walk.orders[i], i))
    lattice_gens = by_order[:-1]
    solve_gen = by_order[-1]
    s_last = walk.gens[solve_gen]
    ord_last = walk.orders[solve_gen]
    # Phi lookup per generator, from the vectorized ufunc, so every builder
    # compares bitwise-identical values.
    phi_by_gen = [
        phi_alpha_arr(walk.alphas[i], np.arange(walk.orders[i] // 2 + 1)) for i in range(k)
    ]
    dlog: dict[Element, int] = {}
    h = group.identity()
    for ell in range(ord_last):
        dlog[h] = min(ell, ord_last - ell)
        h = group.mul(h, s_last)

    costs = np.full(len(elements), np.inf)
    witnesses = np.zeros((len(elements), k), dtype=np.int64)
    phi_last = phi_by_gen[solve_gen]
    for xs in itertools.product(
        *(range(-(walk.orders[i] // 2), walk.orders[i] // 2 + 1) for i in lattice_gens)
    ):
        partial = group.identity()
        lat_cost = 0.0
        for i, x in zip(lattice_gens, xs):
            partial = group.mul(partial, group.pow(walk.gens[i], x))
            lat_cost = max(lat_cost, float(phi_by_gen[i][abs(x)]))
        for h, dx in dlog.items():
            cand = max(lat_cost, float(phi_last[dx]))
            gi = index[group.mul(partial, h)]
            if cand < costs[gi]:
                costs[gi] = cand
                for i, x in zip(lattice_gens, xs):
                    witnesses[gi, i] = abs(x)
                witnesses[gi, solve_gen] = dx
    if not np.isfinite(costs).all():
        raise RuntimeError("lattice enumeration left an element uncovered")
    return _finish_table(walk, elements, costs, witnesses)


def cost_table_pareto(
    walk: WalkSpec,
    cap: int = DEFAULT_PARETO_CAP,
    budget: int = DEFAULT_LABEL_BUDGET,
) -> CostTable:
    """Exact table on any supported group via Pareto label-correcting search.

    Labels are witness degree vectors; a label survives iff no other label at
    the same element dominates it componentwise, so the surviving set carries
    the exact min of max_i Phi_ai(d_i) for every exponent tuple.  Exceeding
    ``budget`` labels at one element raises instead of pruning.
    """
    group = walk.group
    if group.order > cap:
        raise GroupOrderError(f"group order {group.order} exceeds cap {cap}")
    elements = list(group.enumerate(cap))
    index = {g: i for i, g in enumerate(elements)}
    k = walk.k
    n = len(elements)
    moves = np.empty((2 * k, n), dtype=np.int32)
    for i, s in enumerate(walk.gens):
        s_inv = group.inv(s)
        for x, g in enumerate(elements):
            moves[2 * i, x] = index[group.mul(g, s)]
            moves[2 * i + 1, x] = index[group.mul(g, s_inv)]
    id_idx = index[group.identity()]
    offsets, degs = _kernels.pareto_labels(moves, id_idx, k, budget, comp_cap=n)
    if (np.diff(offsets) <= 0).any():
        raise RuntimeError("label search left an element uncovered; walk must generate")
    vals = phi_alpha_arr(walk.alphas[0], degs[:, 0])
    for i in range(1, k):
        np.maximum(vals, phi_alpha_arr(walk.alphas[i], degs[:, i]), out=vals)
    costs = np.minimum.reduceat(vals, offsets[:-1])
    sel = _segment_argmin(vals, costs, offsets)
    witnesses = degs[sel].astype(np.int64)
    return _finish_table(walk, elements, costs, witnesses)


def cost_table(walk: WalkSpec, **kwargs) -> CostTable:
    """Abelian fast construction when possible, Pareto search otherwise."""
    if walk.group.is_abelian:
        return cost_table_abelian(walk, **kwargs)
    return cost_table_pareto(walk, **kwargs)


def diameter(walk: WalkSpec, **kwargs) -> tuple[float, Element]:
    """(max cost, first argmax in enumeration order)."""
    table = cost_table(walk, **kwargs)
    return table.diameter, table.argmax


def word_diameter(walk: WalkSpec, **kwargs) -> int:
    """Word-metric diameter D_S: the cost diameter with every exponent set to 1."""
    flat = WalkSpec(
        group=walk.group, gens=walk.gens, alphas=(1.0,) * walk.k, orders=walk.orders
    )
    d, _ = diameter(flat, **kwargs)
    return int(round(d))


def _standard_triple(walk: WalkSpec) -> int:
    group = walk.group
    if group.kind != "heisenberg":
        raise ValueError("requires a Heisenberg group")
    n = group.moduli[0]
    if walk.gens != ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        raise ValueError("requires the standard generator triple")
    return n


def heisenberg_cost_estimate(walk: WalkSpec, g: Element) -> float:
    """Closed-form comparison target for the standard triple on H3(Z/N).

    max(|x|^a1, |y|^a2, min(|z|^a3, |z|^(a1 a2/(a1+a2)))) with |.| the cyclic
    distance.  Comparable to the exact cost up to constants, not equal.
    """
    n = _standard_triple(walk)
    a1, a2, a3 = walk.alphas
    x, y, z = (cyclic_abs(c, n) for c in g)
    zc = min(float(z) ** a3, float(z) ** (a1 * a2 / (a1 + a2))) if z else 0.0
    return max(float(x) ** a1, float(y) ** a2, zc)


def _split_digits(m: int, t: int) -> tuple[int, int]:
    """m = y*t + x with |x| <= t/2 (tie keeps x = +t/2); m is the canonical residue."""
    x = m % t
    if 2 * x > t:
        x -= t
    return x, (m - x) // t


def heisenberg_split_cost_estimate(walk: WalkSpec, g: Element) -> float:
    """Comparison target for H3(Z/t^2) with the widened tuple (s1, s1^t, s2, s3).

    Writing g = s3^m3 s2^m2 s1^m1 (so (m1, m2, m3) are the coordinates) and
    m = y(m) t + x(m) with |x(m)| <= t/2, the value is
    max(max(|x(m1)|,|y(m1)|)^a1, |m2|^a2, min(|m3|^a3, max(|x(m3)|,|y(m3)|)^(a1 a2/(a1+a2)))).
    """
    group = walk.group
    if group.kind != "heisenberg":
        raise ValueError("requires a Heisenberg group")
    n = group.moduli[0]
    t = math.isqrt(n)
    if t * t != n:
        raise ValueError("modulus must be a perfect square")
    expected = ((1, 0, 0), (t % n, 0, 0), (0, 1, 0), (0, 0, 1))
    if walk.gens != expected:
        raise ValueError("requires the generator tuple (s1, s1^t, s2, s3)")
    if walk.alphas[0] != walk.alphas[1]:
        raise ValueError("the two s1-direction exponents must match")
    a1, a2, a3 = walk.alphas[0], walk.alphas[2], walk.alphas[3]
    m1, m2, m3 = g
    x1, y1 = _split_digits(m1, t)
    first = float(max(abs(x1), abs(y1))) ** a1
    second = float(cyclic_abs(m2, n)) ** a2
    if m3:
        x3, y3 = _split_digits(m3, t)
        mixed = float(max(abs(x3), abs(y3))) ** (a1 * a2 / (a1 + a2))
        third = min(float(cyclic_abs(m3, n)) ** a3, mixed)
    else:
        third = 0.0
    return max(first, second, third)


def costs_equal(a: float, b: float, log_tol: float = 1e-12) -> bool:
    """Exact comparison, falling back to a log-domain tolerance for d^alpha floats."""
    if a == b:
        return True
    if a <= 0.0 or b <= 0.0:
        return False
    return abs(math.log(a) - math.log(b)) <= log_tol


def tables_equal(t1: CostTable, t2: CostTable, log_tol: float = 1e-12) -> bool:
    if t1.elements != t2.elements:
        return False
    return all(costs_equal(float(a), float(b), log_tol) for a, b in zip(t1.costs, t2.costs))
