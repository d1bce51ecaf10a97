"""Experiment recipes: the worked example families, exponent fits, and the suite runner.

Each cyclic family fixes N(t) and s(t); sweeping t and fitting log D against
log N recovers the piecewise diameter exponent of the corresponding example.
The Heisenberg and generalized-exponent recipes compare exact cost tables to
their closed-form targets and record the ratio band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import numpy as np

from . import cost, euclid, geometry, measure, mixing, serialize, spectral
from .groups import make_walk, parse_element, parse_group

DEFAULT_T_RANGE = (3, 4, 5, 6, 7, 8)


@dataclass(frozen=True)
class ExponentFit:
    alpha: float
    fitted_exponent: float
    expected_exponent: float
    residual: float


def fit_exponent(ns, ds) -> float:
    """Least-squares slope of log D against log N (>= 4 points)."""
    ns = np.asarray(ns, dtype=np.float64)
    ds = np.asarray(ds, dtype=np.float64)
    if ns.size < 4:
        raise ValueError("need at least 4 points for an exponent fit")
    slope, _ = np.polyfit(np.log(ns), np.log(ds), 1)
    return float(slope)


@dataclass(frozen=True)
class CyclicFamily:
    """N(t), s(t) recipe with one probe exponent per piecewise regime."""

    name: str
    modulus: Callable[[int], int]
    step: Callable[[int], int]
    regimes: dict[float, float]  # probe alpha -> expected diameter exponent
    t_range: tuple[int, ...] = DEFAULT_T_RANGE


CYCLIC_FAMILIES = {
    # N = t^5, s = t^4: regimes alpha / 1/5 / 4 alpha / 5.
    "intro-1.2": CyclicFamily(
        name="intro-1.2",
        modulus=lambda t: t**5,
        step=lambda t: t**4,
        regimes={0.1: 0.1, 0.22: 0.2, 1.0: 0.8},
    ),
    # N = t(t^2+1)(t^2+2), s = (t^2+1)(t^2+2): s | N, same three regimes.
    "cyclic-5.1": CyclicFamily(
        name="cyclic-5.1",
        modulus=lambda t: t * (t**2 + 1) * (t**2 + 2),
        step=lambda t: (t**2 + 1) * (t**2 + 2),
        regimes={0.1: 0.1, 0.22: 0.2, 1.0: 0.8},
    ),
    # s' = t^2(t^2+2): two extra regimes (N^{2/5}, N^{3 alpha/5}).
    "cyclic-5.2": CyclicFamily(
        name="cyclic-5.2",
        modulus=lambda t: t * (t**2 + 1) * (t**2 + 2),
        step=lambda t: t**2 * (t**2 + 2),
        regimes={0.1: 0.1, 0.22: 0.2, 0.375: 0.3, 0.6: 0.4, 1.3: 0.78},
    ),
    # s'' = (t^2+1)^2: the full seven-regime table.
    "cyclic-5.3": CyclicFamily(
        name="cyclic-5.3",
        modulus=lambda t: t * (t**2 + 1) * (t**2 + 2),
        step=lambda t: (t**2 + 1) ** 2,
        regimes={0.1: 0.1, 0.22: 0.2, 0.375: 0.3, 0.6: 0.4, 0.8: 0.48, 1.2: 0.6, 1.7: 0.68},
    ),
}

EXAMPLE_NAMES = ("intro-1.2", "cyclic-5.1", "cyclic-5.2", "cyclic-5.3", "heis-5.4", "heis-5.5", "phi-6")


def family_diameter(n: int, s: int, alpha: float) -> float:
    """Brute-force diameter of Z/n, S = (1, s), sp = (alpha, 1)."""
    order2 = n // math.gcd(n, s)
    return float(cost.cyclic_pair_diameters(n, 1, s, [(alpha, 1.0)], n, order2)[0])


def run_cyclic_family(
    family: CyclicFamily,
    t_range: tuple[int, ...] | None = None,
    alphas: tuple[float, ...] | None = None,
    out_dir: str | Path | None = None,
):
    """Sweep t, compute brute D and the Euclid formula value M, fit exponents."""
    ts = tuple(t_range or family.t_range)
    probes = tuple(alphas or family.regimes)
    rows = []
    fits = []
    for alpha in probes:
        ns, ds = [], []
        for t in ts:
            n, s = family.modulus(t), family.step(t)
            d = family_diameter(n, s, alpha)
            exp = euclid.expand(n, s)
            m_val, m_idx = euclid.diameter_formula(exp, (alpha, 1.0))
            rows.append((alpha, t, n, s, d, m_val, m_idx))
            ns.append(n)
            ds.append(d)
        fitted = fit_exponent(ns, ds)
        expected = family.regimes.get(alpha)
        if expected is not None:
            fits.append(
                ExponentFit(
                    alpha=alpha,
                    fitted_exponent=fitted,
                    expected_exponent=expected,
                    residual=fitted - expected,
                )
            )
    if out_dir is not None:
        out = Path(out_dir)
        serialize.write_csv(
            out / f"{family.name}-diameters.csv",
            ("alpha", "t", "N", "s", "D", "M", "argmin_i"),
            rows,
        )
        serialize.write_json(
            out / f"{family.name}-fits.json",
            {
                "family": family.name,
                "t_range": list(ts),
                "fits": [vars(f) for f in fits],
            },
        )
    return rows, fits


def heisenberg_ratio_band(n: int, alphas=(1.0, 1.0, 1.0), budget: int = 96):
    """(min, max) of exact cost / closed-form estimate over g != e on H3(Z/n)."""
    from .groups import heisenberg_standard_triple

    group, triple = heisenberg_standard_triple(n)
    walk = make_walk(group, triple, alphas)
    table = cost.cost_table_pareto(walk, budget=budget)
    lo, hi = math.inf, 0.0
    for i, g in enumerate(table.elements):
        if g == group.identity():
            continue
        est = cost.heisenberg_cost_estimate(walk, g)
        ratio = float(table.costs[i]) / est
        lo, hi = min(lo, ratio), max(hi, ratio)
    return lo, hi


def heisenberg_split_ratio_band(t: int, alphas=(1.0, 1.0, 1.0, 1.0), budget: int = 192):
    """(min, max) of exact cost / split-form estimate on H3(Z/t^2) with S=(s1,s1^t,s2,s3)."""
    from .groups import GroupSpec

    n = t * t
    group = GroupSpec.heisenberg(n)
    gens = ((1, 0, 0), (t % n, 0, 0), (0, 1, 0), (0, 0, 1))
    walk = make_walk(group, gens, alphas)
    table = cost.cost_table_pareto(walk, budget=budget)
    lo, hi = math.inf, 0.0
    for i, g in enumerate(table.elements):
        if g == group.identity():
            continue
        est = cost.heisenberg_split_cost_estimate(walk, g)
        ratio = float(table.costs[i]) / est
        lo, hi = min(lo, ratio), max(hi, ratio)
    return lo, hi


def phi6_ratio_band(t: int):
    """(min, max) of cost / max(|x1|, Phi_2(|x2|)) on Z/t^2 with S = (1, t), sp = (1, 2)."""
    from .groups import GroupSpec

    n = t * t
    group = GroupSpec.cyclic(n)
    walk = make_walk(group, [(1,), (t,)], [1.0, 2.0])
    table = cost.cost_table_abelian(walk)
    lo, hi = math.inf, 0.0
    for g in range(1, n):
        x1 = g % t
        if 2 * x1 > t:
            x1 -= t
        m = (g - x1) // t
        x2 = m % t
        if 2 * x2 > t:
            x2 -= t
        target = max(float(abs(x1)), cost.phi_alpha(2.0, abs(x2)))
        ratio = float(table.costs[g]) / target
        lo, hi = min(lo, ratio), max(hi, ratio)
    return lo, hi


def run_example(name: str, out_dir: str | Path, seed: int = 0) -> dict:
    """Run one named worked-example recipe; writes its report files.

    Returns the JSON-ready summary that was written.
    """
    out = Path(out_dir)
    if name in CYCLIC_FAMILIES:
        rows, fits = run_cyclic_family(CYCLIC_FAMILIES[name], out_dir=out)
        summary = {
            "example": name,
            "fits": [vars(f) for f in fits],
            "max_abs_residual": max(abs(f.residual) for f in fits),
        }
    elif name == "heis-5.4":
        bands = {}
        for n in (3, 5, 7, 9, 11):
            lo, hi = heisenberg_ratio_band(n)
            bands[str(n)] = [lo, hi]
        summary = {"example": name, "ratio_bands": bands}
        serialize.write_csv(
            out / "heis-5.4-bands.csv",
            ("N", "min_ratio", "max_ratio"),
            [(int(k), v[0], v[1]) for k, v in bands.items()],
        )
    elif name == "heis-5.5":
        bands = {}
        for t in (2, 3, 4):
            lo, hi = heisenberg_split_ratio_band(t)
            bands[str(t)] = [lo, hi]
        summary = {"example": name, "ratio_bands": bands}
        serialize.write_csv(
            out / "heis-5.5-bands.csv",
            ("t", "min_ratio", "max_ratio"),
            [(int(k), v[0], v[1]) for k, v in bands.items()],
        )
    elif name == "phi-6":
        bands = {}
        for t in range(4, 13):
            lo, hi = phi6_ratio_band(t)
            bands[str(t)] = [lo, hi]
        summary = {"example": name, "ratio_bands": bands}
        serialize.write_csv(
            out / "phi-6-bands.csv",
            ("t", "min_ratio", "max_ratio"),
            [(int(k), v[0], v[1]) for k, v in bands.items()],
        )
    else:
        raise ValueError(f"unknown example {name!r}; choose from {EXAMPLE_NAMES}")
    serialize.write_json(out / f"{name}-summary.json", summary)
    return summary


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat key-value experiment description; same config + seed => identical bytes."""

    name: str
    out_dir: Path
    seed: int
    horizon: int | None
    instances: tuple[tuple[str, str, str], ...]  # (group, gens, alphas) strings
    goldens: tuple[str, ...] = ()


def parse_gens(group, text: str):
    """Generators split on ';'; bare commas also separate for 1-coordinate groups."""
    text = text.strip()
    arity = len(group.coord_moduli)
    if ";" in text:
        parts = text.split(";")
    elif arity == 1:
        parts = text.split(",")
    else:
        parts = [text]
    return [parse_element(group, p) for p in parts]


def parse_config(path) -> ExperimentConfig:
    name = "experiment"
    out_dir = Path("longjump-out")
    seed = 0
    horizon = None
    instances: list[tuple[str, str, str]] = []
    goldens: list[str] = []
    for raw in Path(path).read_text().splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key == "name":
            name = value
        elif key == "out":
            out_dir = Path(value)
        elif key == "seed":
            seed = int(value)
        elif key == "horizon":
            horizon = int(value)
        elif key == "instance":
            fields = [f.strip() for f in value.split("|")]
            if len(fields) != 3:
                raise ValueError(f"instance needs 'group | gens | alphas': {value!r}")
            instances.append((fields[0], fields[1], fields[2]))
        elif key == "golden":
            goldens.append(value)
        else:
            raise ValueError(f"unknown config key {key!r}")
    return ExperimentConfig(
        name=name,
        out_dir=out_dir,
        seed=seed,
        horizon=horizon,
        instances=tuple(instances),
        goldens=tuple(goldens),
    )


def run_instance(group_str: str, gens_str: str, alpha_str: str, horizon: int | None, seed: int) -> tuple[dict, list[str]]:
    """Full pipeline for one walk: measure, cost, spectrum, volume, mixing.

    Returns (report, failures); every built-in invariant that fails lands in
    ``failures`` instead of killing the run.
    """
    failures: list[str] = []
    group = parse_group(group_str)
    gens = parse_gens(group, gens_str)
    alphas = [float(a) for a in alpha_str.split(",")]
    walk = make_walk(group, gens, alphas)
    mu = measure.build_measure(walk)
    a_star = measure.alpha_star(walk.alphas)

    total = sum(mu.support.values())
    if abs(total - 1.0) > 1e-12:
        failures.append(f"measure mass {total} != 1")
    if mu.support[group.identity()] < a_star - 1e-12:
        failures.append("mu(e) below alpha_* floor")
    for g, p in mu.support.items():
        q = mu.support.get(group.inv(g))
        if q is None or abs(p - q) > 1e-12:
            failures.append(f"measure asymmetric at {g}")
            break

    table = cost.cost_table(walk)
    if table.cost(group.identity()) != 0.0:
        failures.append("cost(e) != 0")
    for i, g in enumerate(table.elements):
        if not cost.costs_equal(float(table.costs[i]), table.cost(group.inv(g))):
            failures.append(f"cost asymmetric at {g}")
            break

    spec_report = spectral.spectrum(mu)
    if abs(spec_report.beta[0] - 1.0) > 1e-10:
        failures.append(f"beta_0 = {spec_report.beta[0]} != 1")
    floor = spectral.beta_min_floor(walk)
    if spec_report.beta_min < floor - 1e-10:
        failures.append(f"beta_min {spec_report.beta_min} below floor {floor}")

    profile = geometry.volume_profile(table)
    doubling = geometry.doubling_constant(profile)
    slack = geometry.moderate_growth_check(profile, doubling)
    if slack < 1.0 - 1e-9:
        failures.append(f"moderate growth slack {slack}")
    reverse = geometry.reverse_doubling_check(profile)
    if not reverse.holds:
        failures.append("reverse doubling violated")

    span = horizon if horizon is not None else mixing.default_horizon(table.diameter)
    if group.is_abelian:
        curve = mixing.evolve_abelian(mu, span)
    else:
        curve = mixing.evolve_dense(mu, span)
    if (np.diff(curve.tv) > 1e-12).any():
        failures.append("tv not monotone")
    if (2.0 * curve.tv > curve.l2 + 1e-12).any():
        failures.append("tv exceeds l2/2")
    try:
        t_mix = int(mixing.mixing_time(curve))
    except ValueError:
        t_mix = None
        failures.append("horizon too short for mixing time")
    try:
        fit = mixing.l2_sandwich_report(curve, profile, table.diameter)
        fit_dict = vars(fit)
    except ValueError as exc:
        fit_dict = {"error": str(exc)}

    report = {
        "walk": walk.describe(),
        "group_order": group.order,
        "alpha_star": a_star,
        "measure_mass": total,
        "diameter": table.diameter,
        "argmax": ":".join(str(c) for c in table.argmax),
        "gap": spec_report.gap,
        "beta_min": spec_report.beta_min,
        "gap_diameter_product": spec_report.gap * table.diameter,
        "doubling_constant": doubling,
        "moderate_growth_slack": slack,
        "reverse_doubling_holds": reverse.holds,
        "mixing_time": t_mix,
        "tmix_over_diameter": (t_mix / table.diameter) if t_mix is not None else None,
        "sandwich_fit": fit_dict,
        "seed": seed,
        "failures": failures,
    }
    return report, failures


def run_suite(config: ExperimentConfig) -> tuple[int, dict]:
    """Run every configured instance and golden check; nonzero exit on any failure."""
    out = config.out_dir
    out.mkdir(parents=True, exist_ok=True)
    summary_rows = []
    all_failures: list[str] = []
    for idx, (group_str, gens_str, alpha_str) in enumerate(config.instances):
        report, failures = run_instance(group_str, gens_str, alpha_str, config.horizon, config.seed)
        serialize.write_json(out / f"instance-{idx:03d}.json", report)
        summary_rows.append(
            (
                idx,
                report["walk"],
                report["diameter"],
                report["gap"],
                report["doubling_constant"],
                report["mixing_time"] if report["mixing_time"] is not None else -1,
                len(failures),
            )
        )
        all_failures.extend(f"instance {idx}: {msg}" for msg in failures)
        print(
            f"[{config.name}] {report['walk']}: D={report['diameter']:g} "
            f"gap={report['gap']:.6g} failures={len(failures)}"
        )
    for fam in config.goldens:
        ok, msgs = check_against_golden(fam)
        if not ok:
            all_failures.extend(f"golden {fam}: {m}" for m in msgs)
        print(f"[{config.name}] golden {fam}: {'ok' if ok else 'FAIL'}")
    serialize.write_csv(
        out / "summary.csv",
        ("index", "walk", "diameter", "gap", "doubling", "mixing_time", "failures"),
        summary_rows,
    )
    serialize.write_json(out / "failures.json", {"failures": all_failures})
    return (1 if all_failures else 0), {"rows": summary_rows, "failures": all_failures}


def golden_path() -> Path:
    return Path(__file__).parent / "golden" / "bands.json"


def load_goldens() -> dict:
    return serialize.read_json(golden_path())


def check_against_golden(family: str) -> tuple[bool, list[str]]:
    """Recompute a family's recorded quantities and compare against the golden file.

    Band quantities must stay within the recorded band widened by the factor-2
    stability tolerance; scalar constants within factor 2.
    """
    golden = load_goldens()
    if family not in golden:
        return False, [f"no golden entry for {family!r}"]
    entry = golden[family]
    msgs: list[str] = []
    if family == "heis-5.4":
        worst = 0.0
        for n_str, (lo, hi) in entry["ratio_bands"].items():
            got_lo, got_hi = heisenberg_ratio_band(int(n_str))
            worst = max(worst, got_hi / hi, lo / got_lo if got_lo else math.inf)
            if got_hi > hi * (1 + 1e-6) or got_lo < lo * (1 - 1e-6):
                msgs.append(f"N={n_str}: band [{got_lo}, {got_hi}] outside golden [{lo}, {hi}]")
    elif family in CYCLIC_FAMILIES:
        for alpha_str, (lo, hi) in entry["gap_product"].items():
            alpha = float(alpha_str)
            fam = CYCLIC_FAMILIES[family]
            for t in entry["t_range"]:
                n, s = fam.modulus(t), fam.step(t)
                walk = make_walk(parse_group(f"Z/{n}"), [(1,), (s % n,)], [alpha, 1.0])
                mu = measure.build_measure(walk)
                gap = spectral.spectrum_abelian(mu).gap
                d = family_diameter(n, s, alpha)
                prod = gap * d
                if not (lo / 2.0 <= prod <= hi * 2.0):
                    msgs.append(f"alpha={alpha}, t={t}: gap*D={prod} outside [{lo}/2, {hi}*2]")
    else:
        return False, [f"no golden checker for {family!r}"]
    return (not msgs), msgs
