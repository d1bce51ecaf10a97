"""Walk kernels, eigenvalues, Dirichlet forms, and the gap-diameter machinery.

The kernel K(x, y) = mu(x^-1 y) is symmetric with uniform stationary
distribution, so its spectrum is real in [-1, 1].  Abelian groups diagonalize
through characters (FFT of the measure vector); everything else goes through a
dense symmetric eigensolve.  The zeta test function built from the cost table
witnesses the gap upper bound c/D.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cost import CostTable
from .groups import Element, GroupOrderError, WalkSpec
from .measure import LongJumpMeasure, alpha_star

DEFAULT_DENSE_CAP = 4096


@dataclass(frozen=True)
class SpectrumReport:
    beta: np.ndarray  # all eigenvalues, sorted descending; beta[0] = 1
    gap: float
    beta_min: float

    @property
    def beta1(self) -> float:
        return float(self.beta[1]) if self.beta.shape[0] > 1 else float(self.beta[0])


def _measure_vector(measure: LongJumpMeasure) -> np.ndarray:
    """Dense mu over the enumeration grid (cyclic: length N; product: tensor)."""
    group = measure.group
    shape = group.coord_moduli
    vec = np.zeros(shape)
    for g, p in measure.support.items():
        vec[g] = p
    return vec


def character_eigenvalues(measure: LongJumpMeasure) -> np.ndarray:
    """Eigenvalues indexed by character (unsorted), via FFT of the measure.

    Symmetry of mu makes the transform real; the imaginary residue is checked
    against 1e-12 and dropped.
    """
    group = measure.group
    if not group.is_abelian:
        raise ValueError("character eigenvalues need an abelian group")
    vec = _measure_vector(measure)
    beta = np.fft.fftn(vec)
    if np.abs(beta.imag).max() > 1e-12:
        raise RuntimeError("measure is not symmetric enough for a real spectrum")
    return beta.real.ravel()


def spectrum_abelian(measure: LongJumpMeasure) -> SpectrumReport:
    beta = np.sort(character_eigenvalues(measure))[::-1]
    return SpectrumReport(beta=beta, gap=float(1.0 - beta[1]) if beta.size > 1 else 0.0, beta_min=float(beta[-1]))


def _right_translation(group, elements, index, h) -> np.ndarray:
    """Index array t with t[i] = index of elements[i] * h; vectorized when abelian."""
    n = len(elements)
    if group.is_abelian:
        mods = np.array(group.coord_moduli, dtype=np.int64)
        coords = np.array(elements, dtype=np.int64).reshape(n, len(mods))
        shifted = (coords + np.array(h, dtype=np.int64)) % mods
        return np.ravel_multi_index(tuple(shifted.T), tuple(mods)).astype(np.int64)
    return np.fromiter((index[group.mul(g, h)] for g in elements), count=n, dtype=np.int64)


def kernel_matrix(measure: LongJumpMeasure, cap: int = DEFAULT_DENSE_CAP) -> tuple[np.ndarray, list[Element]]:
    """Dense K with K[x, y] = mu(x^-1 y), plus the element enumeration."""
    group = measure.group
    if group.order > cap:
        raise GroupOrderError(f"group order {group.order} exceeds dense cap {cap}")
    elements = list(group.enumerate(cap))
    index = {g: i for i, g in enumerate(elements)}
    n = len(elements)
    mat = np.zeros((n, n))
    rows = np.arange(n)
    for h, p in measure.support.items():
        mat[rows, _right_translation(group, elements, index, h)] += p
    return mat, elements


def spectrum_dense(measure: LongJumpMeasure, cap: int = DEFAULT_DENSE_CAP) -> SpectrumReport:
    mat, _ = kernel_matrix(measure, cap)
    beta = np.linalg.eigvalsh(mat)[::-1]
    return SpectrumReport(beta=beta, gap=float(1.0 - beta[1]) if beta.size > 1 else 0.0, beta_min=float(beta[-1]))


def spectrum(measure: LongJumpMeasure, cap: int = DEFAULT_DENSE_CAP) -> SpectrumReport:
    if measure.group.is_abelian:
        return spectrum_abelian(measure)
    return spectrum_dense(measure, cap)


def beta_min_floor(walk: WalkSpec) -> float:
    """2 alpha_* - 1: every eigenvalue sits above this."""
    return 2.0 * alpha_star(walk.alphas) - 1.0


def _as_function_array(elements, f) -> np.ndarray:
    if isinstance(f, np.ndarray):
        return f.astype(np.float64)
    return np.array([f(g) for g in elements], dtype=np.float64)


def dirichlet_form(measure: LongJumpMeasure, f, g=None, support=None, cap: int = 10**6) -> float:
    """E(f, g) = 1/2 sum_{x,h} (f(x) - f(xh)) (g(x) - g(xh)) mu(h) pi(x).

    ``support`` overrides the measure's support map (used for per-generator
    components); f and g are arrays over the enumeration order or callables.
    """
    group = measure.group
    elements = list(group.enumerate(cap))
    fa = _as_function_array(elements, f)
    ga = fa if g is None else _as_function_array(elements, g)
    sup = measure.support if support is None else support
    total = 0.0
    if group.is_abelian:
        mods = np.array(group.coord_moduli, dtype=np.int64)
        coords = np.array(elements, dtype=np.int64).reshape(len(elements), len(mods))
        for h, p in sup.items():
            shifted = (coords + np.array(h, dtype=np.int64)) % mods
            cols = np.ravel_multi_index(tuple(shifted.T), tuple(mods))
            total += p * float(np.dot(fa - fa[cols], ga - ga[cols]))
    else:
        index = {e: i for i, e in enumerate(elements)}
        for h, p in sup.items():
            cols = _right_translation(group, elements, index, h)
            total += p * float(np.dot(fa - fa[cols], ga - ga[cols]))
    return 0.5 * total / len(elements)


def rayleigh_quotient(measure: LongJumpMeasure, f, cap: int = 10**6) -> float:
    """E(f, f) / Var_pi(f); >= the spectral gap for every non-constant f."""
    elements = list(measure.group.enumerate(cap))
    fa = _as_function_array(elements, f)
    var = float(np.var(fa))
    if var < 1e-300:
        raise ValueError("Rayleigh quotient needs a non-constant function")
    return dirichlet_form(measure, fa, cap=cap) / var


def zeta_test_function(walk: WalkSpec, cost_table: CostTable, R: float) -> np.ndarray:
    """The two-bump test function zeta = zeta_+ - zeta_- over the enumeration.

    zeta_+(g) = (R^(1/a*) - cost(g)^(1/a*))_+ around the identity and zeta_-
    is the same profile around the cost argmax o; R <= D/16 keeps their
    supports disjoint.
    """
    if R > cost_table.diameter / 16.0:
        raise ValueError("R must be at most diameter/16")
    if R <= 0:
        raise ValueError("R must be positive")
    group = walk.group
    a_star = min(walk.alphas)
    e = 1.0 / a_star
    costs = cost_table.costs
    zp = np.clip(R**e - costs**e, 0.0, None)
    o_inv = group.inv(cost_table.argmax)
    shifted = np.fromiter(
        (cost_table.costs[cost_table.index[group.mul(o_inv, g)]] for g in cost_table.elements),
        count=len(cost_table.elements),
        dtype=np.float64,
    )
    zm = np.clip(R**e - shifted**e, 0.0, None)
    return zp - zm


@dataclass(frozen=True)
class GapDiameterReport:
    """Per-instance numbers behind the gap sandwich c1 <= (1-beta1) D <= c2."""

    walk_label: str
    gap: float
    diameter: float
    product: float  # (1 - beta1) * D
    zeta_product: float  # rayleigh(zeta) * D; an upper-bound witness, >= product


def gap_sandwich_report(
    walk: WalkSpec,
    measure: LongJumpMeasure,
    cost_table: CostTable,
    cap: int = DEFAULT_DENSE_CAP,
) -> GapDiameterReport:
    spec = spectrum(measure, cap)
    d = cost_table.diameter
    r = d / 16.0
    zeta = zeta_test_function(walk, cost_table, r)
    zq = rayleigh_quotient(measure, zeta, cap=max(cap, walk.group.order))
    return GapDiameterReport(
        walk_label=walk.describe(),
        gap=spec.gap,
        diameter=d,
        product=spec.gap * d,
        zeta_product=zq * d,
    )


def pseudo_poincare_constant(alpha: float) -> float:
    """C(alpha) = 2^(9+alpha) 3^(2+alpha) (alpha+1)/alpha (the larger stated form)."""
    return 2.0 ** (9.0 + alpha) * 3.0 ** (2.0 + alpha) * (alpha + 1.0) / alpha


@dataclass(frozen=True)
class PoincareReport:
    worst_ratio: float
    seed: int
    trials: int


def pseudo_poincare_check(
    measure: LongJumpMeasure,
    cost_table: CostTable,
    trials: int = 100,
    seed: int = 0,
    cap: int = DEFAULT_DENSE_CAP,
) -> PoincareReport:
    """Worst ratio of mean_x |f(x) - f(xy)|^2 to cost(y) E(f, f) over random f, y != e.

    On a single-generator cyclic walk cost(y) = Phi_alpha(|y|) and the ratio is
    bounded by pseudo_poincare_constant(alpha).  Uses circular autocorrelation
    on cyclic groups and a dense multiplication table otherwise.
    """
    group = measure.group
    rng = np.random.default_rng(seed)
    elements = cost_table.elements
    n = len(elements)
    costs = cost_table.costs
    worst = 0.0
    if group.kind == "cyclic":
        mu_vec = np.zeros(n)
        for g, p in measure.support.items():
            mu_vec[g[0]] = p
        for _ in range(trials):
            f = rng.uniform(-1.0, 1.0, size=n)
            fhat = np.fft.fft(f)
            corr = np.fft.ifft(fhat * np.conj(fhat)).real
            lhs = 2.0 * (corr[0] - corr) / n  # lhs[y] = mean_x (f(x) - f(x+y))^2
            energy = 0.5 * float(np.dot(lhs, mu_vec))
            if energy <= 0.0:
                continue
            ratios = lhs[1:] / (costs[1:] * energy)
            worst = max(worst, float(ratios.max()))
        return PoincareReport(worst_ratio=worst, seed=seed, trials=trials)

    if group.order > cap:
        raise GroupOrderError(f"group order {group.order} exceeds dense cap {cap}")
    index = {g: i for i, g in enumerate(elements)}
    mult = np.empty((n, n), dtype=np.int64)
    for j, y in enumerate(elements):
        for i, x in enumerate(elements):
            mult[i, j] = index[group.mul(x, y)]
    sup_idx = np.array([index[h] for h in measure.support], dtype=np.int64)
    sup_p = np.array([measure.support[h] for h in measure.support])
    for _ in range(trials):
        f = rng.uniform(-1.0, 1.0, size=n)
        diffs = (f[:, None] - f[mult]) ** 2
        lhs = diffs.mean(axis=0)
        energy = 0.5 * float(np.dot(lhs[sup_idx], sup_p))
        if energy <= 0.0:
            continue
        mask = costs > 0
        ratios = lhs[mask] / (costs[mask] * energy)
        worst = max(worst, float(ratios.max()))
    return PoincareReport(worst_ratio=worst, seed=seed, trials=trials)
