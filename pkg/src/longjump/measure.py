"""Truncated power-law jump distributions and the aggregated walk measure.

Each generator s_i of order N_i carries the distribution

    p_i(j) = c_i / (1 + |j|)^(1 + alpha_i),   |j| = min(j, N_i - j),

normalized by direct summation, and the walk measure averages the p_i pushed
onto the cyclic subgroups.  This module also provides the analytic sanity
checks used throughout: tail-mass bounds, comparability with the wrapped
integer power law, and the interval-regularity condition that drives the
pseudo-Poincare inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .groups import Element, WalkSpec


@dataclass(frozen=True)
class PowerLawDistribution:
    """Symmetric power-law distribution on Z/N with exponent 1 + alpha."""

    modulus: int
    alpha: float
    norm_const: float
    probs: np.ndarray

    def __post_init__(self) -> None:
        self.probs.setflags(write=False)


def cyclic_abs(j: np.ndarray | int, n: int) -> np.ndarray | int:
    """Distance to 0 on the cycle Z/n: min(j, n - j) for j in [0, n)."""
    return np.minimum(j, n - j) if isinstance(j, np.ndarray) else min(j, n - j)


def build_power_law(n: int, alpha: float) -> PowerLawDistribution:
    if n < 1:
        raise ValueError("cycle length must be >= 1")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    j = np.arange(n, dtype=np.int64)
    absj = np.minimum(j, n - j)
    weights = (1.0 + absj) ** (-(1.0 + alpha))
    c = 1.0 / weights.sum()
    return PowerLawDistribution(modulus=n, alpha=float(alpha), norm_const=float(c), probs=c * weights)


def alpha_star(alphas: tuple[float, ...] | list[float]) -> float:
    """min_i alpha_i / (2 (1 + alpha_i)): a lower bound for mu(e)."""
    return min(a / (2.0 * (1.0 + a)) for a in alphas)


@dataclass(frozen=True)
class LongJumpMeasure:
    """The walk measure: mu(g) = (1/k) sum_i sum_j 1[s_i^j = g] p_i(j).

    ``support`` maps group elements to probabilities; overlapping generator
    subgroups accumulate additively.
    """

    walk: WalkSpec
    per_gen: tuple[PowerLawDistribution, ...]
    support: Mapping[Element, float]

    @property
    def group(self):
        return self.walk.group

    def generator_component(self, i: int) -> dict[Element, float]:
        """The single-generator measure mu_i pushed onto <s_i> (sums to 1)."""
        group = self.walk.group
        dist = self.per_gen[i]
        out: dict[Element, float] = {}
        g = group.identity()
        s = self.walk.gens[i]
        for j in range(dist.modulus):
            out[g] = out.get(g, 0.0) + float(dist.probs[j])
            g = group.mul(g, s)
        return out


def build_measure(walk: WalkSpec) -> LongJumpMeasure:
    group = walk.group
    k = walk.k
    per_gen = tuple(build_power_law(n_i, a_i) for n_i, a_i in zip(walk.orders, walk.alphas))
    support: dict[Element, float] = {}
    for i in range(k):
        dist = per_gen[i]
        g = group.identity()
        s = walk.gens[i]
        for j in range(dist.modulus):
            support[g] = support.get(g, 0.0) + float(dist.probs[j]) / k
            g = group.mul(g, s)
    return LongJumpMeasure(walk=walk, per_gen=per_gen, support=support)


def tail_mass(dist: PowerLawDistribution, a: float) -> float:
    """Probability of jumps with |j| > a.  Bounded by (2 * 2^alpha / alpha) / a^alpha."""
    if a <= 0:
        raise ValueError("a must be positive")
    n = dist.modulus
    absj = np.minimum(np.arange(n), n - np.arange(n))
    return float(dist.probs[absj > a].sum())


def tail_mass_bound(alpha: float, a: float) -> float:
    return (2.0 * 2.0**alpha / alpha) / a**alpha


def _midpoint_tail(s: float, c0, step: float, j_cut: int):
    """Estimate sum_{j > j_cut} (c0 + step*j)^(-s) with a certified error bound.

    Midpoint rule: the sum over j > j_cut is approximated by the integral from
    j_cut + 1/2 to infinity; the error is at most |f'(j_cut)| / 24 summed,
    i.e. s * step * (c0 + step*j_cut)^(-s-1) / 24 plus the same order again,
    which we over-report by a factor 2 for safety.
    """
    x0 = c0 + step * (j_cut + 0.5)
    est = x0 ** (-(s - 1.0)) / ((s - 1.0) * step)
    err = 2.0 * s * step * (c0 + step * j_cut) ** (-(s + 1.0)) / 24.0
    return est, err


def tail_coefficient(alpha: float, terms: int = 200_000) -> tuple[float, float]:
    """A_alpha = sum_{j>=1} (1+j)^(-1-alpha), by truncated sum plus certified tail."""
    s = 1.0 + alpha
    j = np.arange(1, terms + 1, dtype=np.float64)
    head = float(((1.0 + j) ** (-s)).sum())
    tail, err = _midpoint_tail(s, 1.0, 1.0, terms)
    return head + tail, err


@dataclass(frozen=True)
class WrappedComparability:
    """Extremes of p_tilde(k)/p(k) together with the analytic band [c1, c2]."""

    modulus: int
    alpha: float
    min_ratio: float
    max_ratio: float
    band_lo: float
    band_hi: float
    tail_coeff: float
    wrapped_norm_const: float
    certified_rel_error: float


def check_wrapped_comparability(
    n: int,
    alpha: float,
    wrap_terms: int = 10_000,
    rel_tol: float = 1e-6,
) -> WrappedComparability:
    """Compare p with the wrapped integer power law p_tilde on Z/n.

    p_tilde(g) is proportional to sum_{j in Z} (1 + |g + n j|)^(-1-alpha),
    truncated at |j| <= wrap_terms with a midpoint-integral tail whose error is
    certified; raises if the certified relative error exceeds ``rel_tol``.

    The returned band is c1 = alpha / (2 c (1+alpha)) and
    c2 = (1 + 2^(2+alpha)) A_alpha / c with c the normalization constant of p,
    which sandwiches the ratio because c always lies between the wrapped
    normalizer and 1.
    """
    if wrap_terms < 1:
        raise ValueError("wrap_terms must be >= 1")
    s = 1.0 + alpha
    dist = build_power_law(n, alpha)

    a_alpha, a_err = tail_coefficient(alpha)
    c_alpha = 1.0 / (1.0 + 2.0 * a_alpha)

    g = np.arange(n, dtype=np.float64)
    unnorm = (1.0 + g) ** (-s)
    # Wrap in chunks over j to bound memory; both signs of j at once.
    chunk = max(1, min(wrap_terms, 4_000_000 // max(n, 1)))
    for start in range(1, wrap_terms + 1, chunk):
        js = np.arange(start, min(start + chunk, wrap_terms + 1), dtype=np.float64)[:, None]
        unnorm += ((1.0 + (g[None, :] + n * js)) ** (-s)).sum(axis=0)
        unnorm += ((1.0 + np.abs(g[None, :] - n * js)) ** (-s)).sum(axis=0)
    # Per-residue tails beyond the cut J: going up the terms are
    # ((1+g) + n j)^-s for j > J, going down ((1+n-g) + n j)^-s for j > J-1.
    abs_err = 0.0
    for c0, cut in ((1.0 + g, wrap_terms), (1.0 + n - g, wrap_terms - 1)):
        est, err = _midpoint_tail(s, c0, float(n), cut)
        unnorm += est
        abs_err += float(np.max(err))

    rel_err = abs_err / float(unnorm.min()) + 2.0 * a_err / (1.0 + 2.0 * a_alpha)
    if rel_err > rel_tol:
        raise ValueError(
            f"certified truncation error {rel_err:.3e} exceeds tolerance {rel_tol:.3e}; "
            "increase wrap_terms"
        )

    p_tilde = c_alpha * unnorm
    ratios = p_tilde / dist.probs
    c = dist.norm_const
    c1 = alpha / (2.0 * c * (1.0 + alpha))
    c2 = (1.0 + 2.0 ** (2.0 + alpha)) * a_alpha / c
    return WrappedComparability(
        modulus=n,
        alpha=float(alpha),
        min_ratio=float(ratios.min()),
        max_ratio=float(ratios.max()),
        band_lo=float(c1),
        band_hi=float(c2),
        tail_coeff=float(a_alpha),
        wrapped_norm_const=float(c_alpha),
        certified_rel_error=float(rel_err),
    )


def check_regularity_A(dist: PowerLawDistribution) -> tuple[bool, float]:
    """Interval regularity: min over I_k of p over max over I_k, I_k = [floor(k/9), k].

    Returns whether the worst ratio over k in [0, N/2] is >= 18^(-1-alpha), and
    the worst ratio itself.
    """
    n = dist.modulus
    half = n // 2
    best = 1.0
    for k in range(half + 1):
        lo = k // 9
        window = dist.probs[lo : k + 1]
        ratio = float(window.min() / window.max())
        if ratio < best:
            best = ratio
    threshold = 18.0 ** (-(1.0 + dist.alpha))
    return best >= threshold, best


def regularity_threshold(alpha: float) -> float:
    return 18.0 ** (-(1.0 + alpha))
