"""Command-line front end: per-instance computations, worked examples, suites.

Every subcommand writes machine-readable files under --out and prints a
one-line summary per instance to stdout.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import cost, euclid, geometry, measure, mixing, recipes, serialize, spectral
from .groups import make_walk, parse_group
from .recipes import parse_config, parse_gens, run_suite


def _walk_from_args(args):
    group = parse_group(args.group)
    gens = parse_gens(group, args.gens)
    alphas = [float(a) for a in args.alpha.split(",")]
    return make_walk(group, gens, alphas, cap=args.cap)


def _add_walk_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="Z/100, Z/4xZ/25, or H3/7")
    p.add_argument("--gens", "--s", dest="gens", required=True, help="generators, e.g. '1,10' or '1,0;0,1'")
    p.add_argument("--alpha", required=True, help="comma-separated jump exponents")
    p.add_argument("--out", default="longjump-out", help="output directory")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cap", type=int, default=10**6, help="group order cap")


def _slug(walk) -> str:
    return (
        walk.describe()
        .replace("/", "_")
        .replace(" ", "_")
        .replace("(", "")
        .replace(")", "")
        .replace(";", "-")
        .replace(",", "-")
    )


def cmd_cost(args) -> int:
    walk = _walk_from_args(args)
    table = cost.cost_table(walk, cap=args.cap)
    out = Path(args.out)
    table.to_csv(out / f"cost-{_slug(walk)}.csv")
    table.to_json(out / f"cost-{_slug(walk)}.json")
    print(f"cost {walk.describe()}: D={table.diameter:.17g} argmax={table.argmax}")
    return 0


def cmd_diameter(args) -> int:
    walk = _walk_from_args(args)
    d, argmax = cost.diameter(walk, cap=args.cap)
    serialize.write_json(
        Path(args.out) / f"diameter-{_slug(walk)}.json",
        {"walk": walk.describe(), "diameter": d, "argmax": ":".join(map(str, argmax))},
    )
    print(f"diameter {walk.describe()}: D={d:.17g} argmax={argmax}")
    return 0


def cmd_euclid(args) -> int:
    a1, a2 = (float(a) for a in args.alpha.split(","))
    exp = euclid.expand(args.n, args.s)
    m_val, m_idx = euclid.diameter_formula(exp, (a1, a2))
    obj = {
        "N": exp.modulus,
        "s": exp.step,
        "K": exp.K,
        "r": list(exp.r_seq),
        "q": list(exp.q_seq),
        "eps": list(exp.eps_seq),
        "m": list(exp.m_seq),
        "M": m_val,
        "argmin_i": m_idx,
        "lower_factor": euclid.sandwich_lower_factor((a1, a2)),
    }
    if args.verify:
        group = parse_group(f"Z/{args.n}")
        walk = make_walk(group, [(1,), (args.s,)], [a1, a2], cap=args.cap)
        table = cost.cost_table_abelian(walk, cap=args.cap)
        obj["brute_diameter"] = table.diameter
        lo = euclid.sandwich_lower_factor((a1, a2)) * m_val
        obj["sandwich_ok"] = bool(lo <= table.diameter + 1e-12 and table.diameter <= m_val + 1e-12)
    if args.out:
        serialize.write_json(Path(args.out) / f"euclid-{args.n}-{args.s}.json", obj)
        print(f"euclid N={args.n} s={args.s}: M={m_val:.17g} at i={m_idx}")
    else:
        import json

        print(json.dumps(obj, sort_keys=True, indent=2))
    return 0 if obj.get("sandwich_ok", True) else 1


def cmd_spectrum(args) -> int:
    walk = _walk_from_args(args)
    mu = measure.build_measure(walk)
    rep = spectral.spectrum(mu)
    floor = spectral.beta_min_floor(walk)
    serialize.write_json(
        Path(args.out) / f"spectrum-{_slug(walk)}.json",
        {
            "walk": walk.describe(),
            "gap": rep.gap,
            "beta_min": rep.beta_min,
            "beta_min_floor": floor,
            "seed": args.seed,
        },
    )
    print(f"spectrum {walk.describe()}: gap={rep.gap:.17g} beta_min={rep.beta_min:.17g}")
    return 0


def cmd_volume(args) -> int:
    walk = _walk_from_args(args)
    table = cost.cost_table(walk, cap=args.cap)
    profile = geometry.volume_profile(table)
    out = Path(args.out)
    profile.to_csv(out / f"volume-{_slug(walk)}.csv")
    serialize.write_json(out / f"doubling-{_slug(walk)}.json", geometry.doubling_report(profile))
    print(
        f"volume {walk.describe()}: D={profile.diameter:g} "
        f"A={geometry.doubling_constant(profile):.6g}"
    )
    return 0


def cmd_mixing(args) -> int:
    walk = _walk_from_args(args)
    mu = measure.build_measure(walk)
    table = cost.cost_table(walk, cap=args.cap)
    horizon = args.horizon if args.horizon else mixing.default_horizon(table.diameter)
    if walk.group.is_abelian:
        curve = mixing.evolve_abelian(mu, horizon)
    else:
        curve = mixing.evolve_dense(mu, horizon)
    out = Path(args.out)
    curve.to_csv(out / f"mixing-{_slug(walk)}.csv")
    profile = geometry.volume_profile(table)
    try:
        fit = vars(mixing.l2_sandwich_report(curve, profile, table.diameter))
    except ValueError as exc:
        fit = {"error": str(exc)}
    try:
        t_mix = int(mixing.mixing_time(curve))
    except ValueError:
        t_mix = None
    serialize.write_json(
        out / f"mixing-{_slug(walk)}.json",
        {"walk": walk.describe(), "mixing_time": t_mix, "diameter": table.diameter, "fit": fit},
    )
    print(f"mixing {walk.describe()}: t_mix={t_mix} horizon={curve.times[-1]}")
    return 0


def cmd_example(args) -> int:
    summary = recipes.run_example(args.name, args.out, seed=args.seed)
    print(f"example {args.name}: written to {args.out}")
    if "max_abs_residual" in summary:
        print(f"example {args.name}: max exponent residual {summary['max_abs_residual']:.4f}")
    return 0


def cmd_suite(args) -> int:
    config = parse_config(args.config)
    code, _ = run_suite(config)
    return code


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="longjump", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    for name, fn in (
        ("cost", cmd_cost),
        ("diameter", cmd_diameter),
        ("spectrum", cmd_spectrum),
        ("volume", cmd_volume),
    ):
        p = sub.add_parser(name)
        _add_walk_flags(p)
        p.set_defaults(fn=fn)

    p = sub.add_parser("mixing")
    _add_walk_flags(p)
    p.add_argument("--horizon", type=int, default=0, help="0 = 20 diameters")
    p.set_defaults(fn=cmd_mixing)

    p = sub.add_parser("euclid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--alpha", required=True, help="a1,a2")
    p.add_argument("--verify", action="store_true", help="cross-check against the brute table")
    p.add_argument("--out", default="")
    p.add_argument("--cap", type=int, default=10**6)
    p.set_defaults(fn=cmd_euclid)

    p = sub.add_parser("example")
    p.add_argument("name", choices=recipes.EXAMPLE_NAMES)
    p.add_argument("--out", default="longjump-out")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_example)

    p = sub.add_parser("suite")
    p.add_argument("config")
    p.set_defaults(fn=cmd_suite)

    args = parser.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
