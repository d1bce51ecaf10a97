"""Recompute the recorded family bands and rewrite src/longjump/golden/bands.json.

Run after any intentional change to the recipes or the cost/spectral engines:
    python scripts/regen_goldens.py
"""

from __future__ import annotations

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from longjump import cost, geometry, measure, mixing, recipes, serialize, spectral
from longjump.groups import make_walk, parse_group

GAP_ALPHAS = (0.5, 1.0, 1.5)
FAMILY_T_RANGE = (2, 3, 4, 5, 6)
SINGLE_GEN_NS = (32, 64, 128, 256, 512, 1024)


def cyclic_family_entry(name: str) -> dict:
    fam = recipes.CYCLIC_FAMILIES[name]
    gap_product: dict[str, list[float]] = {}
    zeta_product: dict[str, list[float]] = {}
    for alpha in GAP_ALPHAS:
        prods, zetas = [], []
        for t in FAMILY_T_RANGE:
            n, s = fam.modulus(t), fam.step(t)
            walk = make_walk(parse_group(f"Z/{n}"), [(1,), (s % n,)], [alpha, 1.0])
            mu = measure.build_measure(walk)
            table = cost.cost_table_abelian(walk)
            rep = spectral.gap_sandwich_report(walk, mu, table)
            prods.append(rep.product)
            zetas.append(rep.zeta_product)
        gap_product[f"{alpha:g}"] = [min(prods), max(prods)]
        zeta_product[f"{alpha:g}"] = [min(zetas), max(zetas)]
    ratios, doublings = [], []
    for t in FAMILY_T_RANGE:
        n, s = fam.modulus(t), fam.step(t)
        walk = make_walk(parse_group(f"Z/{n}"), [(1,), (s % n,)], [1.0, 1.0])
        mu = measure.build_measure(walk)
        table = cost.cost_table_abelian(walk)
        profile = geometry.volume_profile(table)
        doublings.append(geometry.doubling_constant(profile))
        ratios.append(mixing.mixing_time_bisect(mu) / table.diameter)
    return {
        "t_range": list(FAMILY_T_RANGE),
        "gap_product": gap_product,
        "zeta_product": zeta_product,
        "tmix_over_d": {"1": [min(ratios), max(ratios)]},
        "doubling": {"1": max(doublings)},
    }


def single_gen_entry() -> dict:
    gap_product: dict[str, list[float]] = {}
    for alpha in GAP_ALPHAS:
        prods = []
        for n in SINGLE_GEN_NS:
            walk = make_walk(parse_group(f"Z/{n}"), [(1,)], [alpha])
            mu = measure.build_measure(walk)
            gap = spectral.spectrum_abelian(mu).gap
            prods.append(gap * float(n // 2) ** alpha)
        gap_product[f"{alpha:g}"] = [min(prods), max(prods)]
    doublings = []
    for n in SINGLE_GEN_NS:
        walk = make_walk(parse_group(f"Z/{n}"), [(1,)], [1.0])
        profile = geometry.volume_profile(cost.cost_table_abelian(walk))
        doublings.append(geometry.doubling_constant(profile))
    return {
        "n_range": list(SINGLE_GEN_NS),
        "gap_product": gap_product,
        "doubling": {"1": max(doublings)},
    }


def main() -> None:
    golden = {}
    for name in ("cyclic-5.1", "cyclic-5.2", "cyclic-5.3"):
        golden[name] = cyclic_family_entry(name)
        print(f"{name}: done")
    golden["single-gen-cyclic"] = single_gen_entry()
    print("single-gen-cyclic: done")

    bands = {}
    for n in (3, 5, 7, 9, 11):
        lo, hi = recipes.heisenberg_ratio_band(n)
        bands[str(n)] = [lo, hi]
    golden["heis-5.4"] = {
        "ratio_bands": bands,
        "overall_c": max(max(hi, 1.0 / lo) for lo, hi in bands.values()),
    }
    print("heis-5.4: done")

    bands = {}
    for t in (2, 3, 4):
        lo, hi = recipes.heisenberg_split_ratio_band(t)
        bands[str(t)] = [lo, hi]
    golden["heis-5.5"] = {"ratio_bands": bands}
    print("heis-5.5: done")

    bands = {}
    for t in range(4, 13):
        lo, hi = recipes.phi6_ratio_band(t)
        bands[str(t)] = [lo, hi]
    golden["phi-6"] = {"ratio_bands": bands}
    print("phi-6: done")

    out = recipes.golden_path()
    out.parent.mkdir(parents=True, exist_ok=True)
    serialize.write_json(out, golden)
    print(f"wrote {out}")


if __name__ == "__main__":
    main()
