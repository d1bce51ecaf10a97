"""Exact distribution evolution, l2/TV distances, mixing time, and envelope fits.

Abelian groups evolve through characters: the l2 distance is a power sum of
eigenvalues (Parseval) and the TV distance comes from the inverse transform of
the powered spectrum, so any time is accessible directly.  Dense evolution
iterates the kernel and serves as the cross-method oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import VolumeProfile
from .groups import GroupOrderError
from .measure import LongJumpMeasure
from .spectral import DEFAULT_DENSE_CAP, _measure_vector, _right_translation

L2_FLOOR = 1e-12


@dataclass(frozen=True)
class MixingCurve:
    """Distances to uniform per time step; ``times`` may stop early at the l2 floor."""

    times: np.ndarray
    l2: np.ndarray
    tv: np.ndarray
    group_order: int
    continuous: bool = False
    underflowed: bool = False

    def to_csv(self, path) -> None:
        from .serialize import write_csv

        name = "t" if self.continuous else "n"
        rows = list(zip(self.times.tolist(), self.l2.tolist(), self.tv.tolist()))
        write_csv(path, (name, "l2", "tv"), rows)


def default_horizon(diameter: float) -> int:
    """20 diameters, the default evolution span."""
    return max(1, math.ceil(20.0 * diameter))


def _beta_tensor(measure: LongJumpMeasure) -> np.ndarray:
    beta = np.fft.fftn(_measure_vector(measure))
    if np.abs(beta.imag).max() > 1e-12:
        raise RuntimeError("asymmetric measure: spectrum not real")
    return beta.real


def _tv_from_density(ker: np.ndarray, order: int) -> float:
    return 0.5 * float(np.abs(ker - 1.0 / order).sum())


def evolve_abelian(
    measure: LongJumpMeasure,
    horizon: int,
    l2_floor: float = L2_FLOOR,
) -> MixingCurve:
    """Exact curve on an abelian group for n = 0..horizon (early stop at the floor).

    l2(n)^2 = sum_{chi != triv} beta_chi^(2n); TV comes from the inverse FFT of
    beta^n.  Underflowed eigenvalue powers clamp to zero and set the flag.
    """
    if not measure.group.is_abelian:
        raise ValueError("evolve_abelian requires an abelian group")
    if horizon < 0:
        raise ValueError("horizon must be nonnegative")
    beta = _beta_tensor(measure)
    order = measure.group.order
    bpow = np.ones_like(beta)
    times, l2s, tvs = [], [], []
    underflow = False
    with np.errstate(under="ignore"):
        for n in range(horizon + 1):
            if n > 0:
                bpow = bpow * beta
            l2sq = max(float((bpow**2).sum()) - 1.0, 0.0)
            if l2sq == 0.0 and n > 0 and order > 1:
                underflow = True  # every nontrivial eigenvalue power hit zero
            ker = np.fft.ifftn(bpow).real
            times.append(n)
            l2s.append(math.sqrt(l2sq))
            tvs.append(_tv_from_density(ker, order))
            if l2s[-1] < l2_floor:
                break
    return MixingCurve(
        times=np.array(times, dtype=np.int64),
        l2=np.array(l2s),
        tv=np.array(tvs),
        group_order=order,
        underflowed=underflow,
    )


def tv_at(measure: LongJumpMeasure, n: int) -> float:
    """Exact TV distance to uniform after n steps (abelian random access)."""
    beta = _beta_tensor(measure)
    order = measure.group.order
    with np.errstate(under="ignore"):
        ker = np.fft.ifftn(beta**n).real
    return _tv_from_density(ker, order)


def evolve_dense(
    measure: LongJumpMeasure,
    horizon: int,
    cap: int = DEFAULT_DENSE_CAP,
    l2_floor: float = L2_FLOOR,
) -> MixingCurve:
    """Iterated vector-kernel products from the identity; exact per-step distances."""
    from .spectral import kernel_matrix

    mat, elements = kernel_matrix(measure, cap)
    group = measure.group
    order = len(elements)
    u = np.zeros(order)
    u[elements.index(group.identity())] = 1.0
    times, l2s, tvs = [], [], []
    for n in range(horizon + 1):
        if n > 0:
            u = mat.T @ u
        diff = u - 1.0 / order
        l2 = math.sqrt(max(float(order * np.dot(diff, diff)), 0.0))
        times.append(n)
        l2s.append(l2)
        tvs.append(0.5 * float(np.abs(diff).sum()))
        if l2 < l2_floor:
            break
    return MixingCurve(
        times=np.array(times, dtype=np.int64),
        l2=np.array(l2s),
        tv=np.array(tvs),
        group_order=order,
    )


def evolve_continuous(
    measure: LongJumpMeasure,
    times,
    cap: int = DEFAULT_DENSE_CAP,
    series_tol: float = 1e-12,
    max_terms: int = 1_000_000,
) -> MixingCurve:
    """Continuous-time curve h_t = e^{-t(I-K)} delta_e at the given times.

    Abelian path: eigenvalue form exp(-t (1 - beta)).  Dense path: truncated
    Poisson series over kernel powers with certified remainder <= series_tol.
    """
    times = np.asarray(sorted(float(t) for t in times))
    if (times < 0).any():
        raise ValueError("times must be nonnegative")
    group = measure.group
    order = group.order
    if group.is_abelian:
        beta = _beta_tensor(measure)
        l2s, tvs = [], []
        with np.errstate(under="ignore"):
            for t in times:
                decay = np.exp(-t * (1.0 - beta))
                l2sq = max(float((decay**2).sum()) - 1.0, 0.0)
                ker = np.fft.ifftn(decay).real
                l2s.append(math.sqrt(l2sq))
                tvs.append(_tv_from_density(ker, order))
        return MixingCurve(
            times=times, l2=np.array(l2s), tv=np.array(tvs), group_order=order, continuous=True
        )

    from .spectral import kernel_matrix

    mat, elements = kernel_matrix(measure, cap)
    u = np.zeros(len(elements))
    u[elements.index(group.identity())] = 1.0
    powers = [u.copy()]
    l2s, tvs = [], []
    for t in times:
        acc = np.zeros_like(u)
        w = math.exp(-t)
        total_w = 0.0
        n = 0
        while True:
            if n >= len(powers):
                powers.append(mat.T @ powers[-1])
            acc += w * powers[n]
            total_w += w
            # dropped Poisson mass bounds every distance error by order * mass
            remaining = max(1.0 - total_w, 0.0)
            if remaining * len(u) <= series_tol:
                break
            if w == 0.0:
                raise RuntimeError("Poisson weights underflowed before certifying the tail")
            n += 1
            if n > max_terms:
                raise RuntimeError("Poisson series did not certify within max_terms")
            w *= t / n
        diff = acc - 1.0 / len(u)
        l2s.append(math.sqrt(max(float(len(u) * np.dot(diff, diff)), 0.0)))
        tvs.append(0.5 * float(np.abs(diff).sum()))
    return MixingCurve(
        times=times, l2=np.array(l2s), tv=np.array(tvs), group_order=order, continuous=True
    )


def mixing_time(curve: MixingCurve):
    """First recorded time with TV <= 1/4; raises if the horizon was too short."""
    hits = np.flatnonzero(curve.tv <= 0.25)
    if hits.size == 0:
        raise ValueError(
            f"curve never reaches TV <= 1/4 within horizon {curve.times[-1]}"
        )
    return curve.times[int(hits[0])]


def mixing_time_bisect(measure: LongJumpMeasure, hi: int | None = None) -> int:
    """Exact discrete mixing time on abelian groups via monotone bisection on TV."""
    if tv_at(measure, 0) <= 0.25:
        return 0
    if hi is None:
        hi = 1
        while tv_at(measure, hi) > 0.25:
            hi *= 2
            if hi > 2**40:
                raise RuntimeError("mixing time beyond 2^40 steps; giving up")
    lo = hi // 2 if hi > 1 else 0  # tv(lo) > 1/4 when derived by doubling
    if tv_at(measure, lo) <= 0.25:
        lo = 0
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if tv_at(measure, mid) <= 0.25:
            hi = mid
        else:
            lo = mid
    return hi


@dataclass(frozen=True)
class SandwichFit:
    """Two-sided envelopes c1 e^(-n/(a1 D)) <= l2(n) sqrt(V(n)) <= c2 e^(-n/(a2 D))."""

    a_lower: float
    c_lower: float
    a_upper: float
    c_upper: float
    slope_lower: float
    slope_upper: float
    points: int


def l2_sandwich_report(curve: MixingCurve, profile: VolumeProfile, diameter: float) -> SandwichFit:
    """Fit linear envelopes to y(n) = ln l2(n) + 0.5 ln V(e, min(n, D)).

    One-sided Chebyshev-style fits by linear programming (minimal total slack
    subject to pointwise validity), so the returned envelopes hold pointwise on
    the computed horizon by construction.
    """
    from scipy.optimize import linprog

    mask = curve.l2 > 0
    x = np.asarray(curve.times, dtype=np.float64)[mask]
    vol = np.array([profile.volume(min(float(t), diameter)) for t in x])
    y = np.log(curve.l2[mask]) + 0.5 * np.log(vol)
    if x.size < 3:
        raise ValueError("need at least 3 positive-l2 points for an envelope fit")

    # upper: minimize sum(b + m x - y) s.t. b + m x >= y
    res_up = linprog(
        c=[float(x.sum()), float(x.size)],
        A_ub=np.column_stack((-x, -np.ones_like(x))),
        b_ub=-y,
        bounds=[(None, None), (None, None)],
        method="highs",
    )
    # lower: maximize sum(b + m x) s.t. b + m x <= y
    res_lo = linprog(
        c=[-float(x.sum()), -float(x.size)],
        A_ub=np.column_stack((x, np.ones_like(x))),
        b_ub=y,
        bounds=[(None, None), (None, None)],
        method="highs",
    )
    if not (res_up.success and res_lo.success):
        raise RuntimeError("envelope fit LP failed")
    m_up, b_up = res_up.x
    m_lo, b_lo = res_lo.x

    def rate(m: float) -> float:
        return -1.0 / (m * diameter) if m < -1e-300 else math.inf

    return SandwichFit(
        a_lower=rate(m_lo),
        c_lower=math.exp(b_lo),
        a_upper=rate(m_up),
        c_upper=math.exp(b_up),
        slope_lower=float(m_lo),
        slope_upper=float(m_up),
        points=int(x.size),
    )


def monte_carlo_walk(
    measure: LongJumpMeasure,
    steps: int,
    walkers: int,
    seed: int,
    cap: int = DEFAULT_DENSE_CAP,
):
    """Empirical distribution of `walkers` independent walks after `steps` steps.

    Sanity oracle only: the empirical TV to the exact curve shrinks with the
    number of walkers.  Deterministic for a fixed seed.

    Returns (elements, frequencies) aligned with the enumeration order.
    """
    group = measure.group
    rng = np.random.default_rng(seed)
    items = sorted(measure.support.items())
    probs = np.array([p for _, p in items])
    probs = probs / probs.sum()
    if group.is_abelian:
        coords = np.array([g for g, _ in items], dtype=np.int64)
        mods = np.array(group.coord_moduli, dtype=np.int64)
        pos = np.zeros((walkers, len(mods)), dtype=np.int64)
        for _ in range(steps):
            draws = rng.choice(len(items), size=walkers, p=probs)
            pos = (pos + coords[draws]) % mods
        flat = np.ravel_multi_index(tuple(pos.T), tuple(mods))
        counts = np.bincount(flat, minlength=group.order)
    else:
        if group.order > cap:
            raise GroupOrderError(f"group order {group.order} exceeds dense cap {cap}")
        elements = list(group.enumerate(cap))
        index = {g: i for i, g in enumerate(elements)}
        trans = np.stack(
            [_right_translation(group, elements, index, h) for h, _ in items]
        ).astype(np.int64)
        pos = np.full(walkers, index[group.identity()], dtype=np.int64)
        for _ in range(steps):
            draws = rng.choice(len(items), size=walkers, p=probs)
            pos = trans[draws, pos]
        counts = np.bincount(pos, minlength=len(elements))
    elements = list(group.enumerate(max(cap, group.order)))
    return elements, counts / walkers
