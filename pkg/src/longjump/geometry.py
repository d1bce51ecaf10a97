"""Ball volumes of the cost quasi-norm: doubling, moderate growth, reverse doubling.

The volume profile is a right-continuous step function with breakpoints at the
distinct cost values, so every "for all r" check quantifies over breakpoints
plus midpoints (and, where the ratio jumps at scaled radii, the scaled
breakpoints too).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .cost import CostTable
from .groups import Element


@dataclass(frozen=True)
class VolumeProfile:
    """Counting profile of closed balls B(e, r) around the identity."""

    radii: np.ndarray  # sorted distinct cost values, starting at 0
    counts: np.ndarray  # cumulative counts: #B(e, radii[i])
    group_order: int

    @property
    def diameter(self) -> float:
        return float(self.radii[-1])

    def count(self, r: float) -> int:
        """#B(e, r) by step-function lookup (0 for r < 0)."""
        if r < 0:
            return 0
        idx = int(np.searchsorted(self.radii, r, side="right")) - 1
        return int(self.counts[idx]) if idx >= 0 else 0

    def volume(self, r: float) -> float:
        return self.count(r) / self.group_order

    def to_csv(self, path) -> None:
        from .serialize import write_csv

        rows = [
            (self.radii[i], int(self.counts[i]), self.counts[i] / self.group_order)
            for i in range(len(self.radii))
        ]
        write_csv(path, ("r", "count", "V"), rows)


def volume_profile(table: CostTable) -> VolumeProfile:
    values, counts = np.unique(table.costs, return_counts=True)
    cumulative = np.cumsum(counts)
    if values[0] != 0.0:
        values = np.concatenate(([0.0], values))
        cumulative = np.concatenate(([0], cumulative))
    return VolumeProfile(radii=values, counts=cumulative, group_order=len(table.elements))


def _with_midpoints(radii: np.ndarray) -> np.ndarray:
    mids = (radii[:-1] + radii[1:]) / 2.0
    return np.unique(np.concatenate((radii, mids)))


def doubling_constant(profile: VolumeProfile) -> float:
    """max over r in (0, D] of V(2r)/V(r), evaluated where the ratio can jump."""
    d = profile.diameter
    candidates = np.unique(np.concatenate((profile.radii, profile.radii / 2.0)))
    candidates = candidates[(candidates > 0) & (candidates <= d)]
    best = 1.0
    for r in candidates:
        best = max(best, profile.count(2.0 * r) / profile.count(r))
    return best


def moderate_growth_check(profile: VolumeProfile, big_a: float) -> float:
    """Worst slack of V(e,r) >= V(e,R) ((r+1)/(R+1))^d, d = log2(A), over r <= R <= D.

    Quantified over breakpoint pairs (the bound concerns ball counts, and
    between breakpoints only the right-hand side moves; at off-breakpoint
    radii the shifted (r+1) form can dip below a count that jumps just above
    r, so breakpoints are the meaningful grid).  Returns min LHS/RHS, which
    should be >= 1 - 1e-9 whenever A dominates the measured doubling constant.
    """
    if big_a < doubling_constant(profile):
        raise ValueError("A must be at least the measured doubling constant")
    d_exp = math.log2(big_a)
    grid = profile.radii[profile.radii <= profile.diameter]
    counts = np.array([profile.count(r) for r in grid], dtype=np.float64)
    worst = math.inf
    for j in range(len(grid)):
        r_small = grid[: j + 1]
        lhs = counts[: j + 1]
        rhs = counts[j] * ((r_small + 1.0) / (grid[j] + 1.0)) ** d_exp
        worst = min(worst, float((lhs / rhs).min()))
    return worst


@dataclass(frozen=True)
class ReverseDoublingReport:
    holds: bool  # V(e,R) >= 2 V(e, R/128) for all R in [1, D]
    worst_halving_ratio: float
    exponent_form_constant: float  # empirical min of [V(R)/V(r)] / (R/r)^(1/7)


def reverse_doubling_check(profile: VolumeProfile) -> ReverseDoublingReport:
    """Check V(e,R)/V(e,R/2^7) >= 2 on [1, D] and measure the (R/r)^(1/7) form.

    The exponent-form constant is reported, not asserted: iterating the
    halving lemma yields exponent 1/7 on R/r, and the empirical constant
    quantifies how tight that is on this instance.
    """
    d = profile.diameter
    candidates = np.unique(np.concatenate((profile.radii, profile.radii * 128.0, [1.0])))
    candidates = candidates[(candidates >= 1.0) & (candidates <= d)]
    worst = math.inf
    for r in candidates:
        worst = min(worst, profile.count(r) / profile.count(r / 128.0))
    worst_ratio = worst if candidates.size else math.inf

    grid = profile.radii[(profile.radii >= 1.0) & (profile.radii <= d)]
    const = math.inf
    counts = np.array([profile.count(r) for r in grid], dtype=np.float64)
    for j in range(len(grid)):
        ratios = counts[j] / counts[: j + 1]
        scale = (grid[j] / grid[: j + 1]) ** (1.0 / 7.0)
        const = min(const, float((ratios / scale).min()))
    return ReverseDoublingReport(
        holds=worst_ratio >= 2.0,
        worst_halving_ratio=float(worst_ratio),
        exponent_form_constant=float(const),
    )


def annulus_witness(table: CostTable, R: float) -> Element:
    """Some g with R/4 <= cost(g) <= R (exists for every 1 <= R < D); first in order."""
    if not 1.0 <= R < table.diameter:
        raise ValueError("need 1 <= R < diameter")
    lo = R / 4.0
    hits = np.flatnonzero((table.costs >= lo) & (table.costs <= R))
    if hits.size == 0:
        raise RuntimeError(f"no element with cost in [{lo}, {R}]; table inconsistent")
    return table.elements[int(hits[0])]


def doubling_report(profile: VolumeProfile) -> dict:
    rd = reverse_doubling_check(profile)
    return {
        "group_order": profile.group_order,
        "diameter": profile.diameter,
        "doubling_constant": doubling_constant(profile),
        "reverse_halving_holds": rd.holds,
        "reverse_worst_ratio": rd.worst_halving_ratio,
        "reverse_exponent_constant": rd.exponent_form_constant,
    }
