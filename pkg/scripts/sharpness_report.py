#!/usr/bin/env python3
"""Print the sharp-constant scoreboard: estimated norms vs closed-form targets."""
import argparse
import math
import sys
import time

from logharm import GridSpec, LogHarmonicMap, bloch_norm_log, pre_schwarzian_norm, schwarzian_norm, weighted_sup
from logharm.expr import Mul
from logharm.maps import analytic_pre_schwarzian_field, hg_epsilon_field

CASES = {
    "gap-one": (0, 0, "exp(z/(1-z))", "exp(-z/(1-z))/(1-z)"),
    "gap-five": (0, 0, "z/(1-z)", "1/(1-z)"),
    "mobius-a60": (0, 0, "1/(1-z)", "(1-z)*(1-0.6*z)^(-8/3)"),
    "mobius-a90": (0, 0, "1/(1-z)", "(1-z)*(1-0.9*z)^(-19/9)"),
    "mobius-a99": (0, 0, "1/(1-z)", "(1-z)*(1-0.99*z)^(-199/99)"),
    "koebe": (0, 0, "z/(1-z)^2", "1"),
}


def interior_max(a: float) -> float:
    r = (1 - math.sqrt(1 - a * a)) / a
    return 2 * (1 + r) + (a - r) * (2 + r) / (1 - a * r)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radial-levels", type=int, default=200)
    ap.add_argument("--angular", type=int, default=512)
    ap.add_argument("--refine", type=int, default=3)
    args = ap.parse_args()
    grid = GridSpec(
        radial_levels=args.radial_levels,
        angular_count=args.angular,
        refine_rounds=args.refine,
    )

    rows = []
    maps = {k: LogHarmonicMap.from_strings(*v) for k, v in CASES.items()}

    t0 = time.perf_counter()
    f = maps["gap-one"]
    rows.append(("gap-one  |P_f|", pre_schwarzian_norm(f, grid).value, 5.0))
    rows.append(
        ("gap-one  |P_hg|", weighted_sup(analytic_pre_schwarzian_field(Mul(f.h, f.g)), 1, grid).value, 4.0)
    )

    f = maps["gap-five"]
    rows.append(("gap-five |P_f|", pre_schwarzian_norm(f, grid).value, 5.0))
    rows.append(("gap-five member", weighted_sup(hg_epsilon_field(f, -1), 1, grid).value, 0.0))
    rows.append(("gap-five Bloch(log g)", bloch_norm_log(f.g, grid).value, 2.0))

    for a, name in ((0.6, "mobius-a60"), (0.9, "mobius-a90"), (0.99, "mobius-a99")):
        rows.append((f"{name} |P_f|", pre_schwarzian_norm(maps[name], grid).value, interior_max(a)))

    f = maps["koebe"]
    rows.append(("koebe |P|", pre_schwarzian_norm(f, grid).value, 6.0))
    rows.append(("koebe |S|", schwarzian_norm(f, grid).value, 6.0))
    elapsed = time.perf_counter() - t0

    width = max(len(r[0]) for r in rows)
    print(f"{'case':<{width}}  {'estimate':>16}  {'target':>12}  {'deviation':>10}")
    for label, got, target in rows:
        print(f"{label:<{width}}  {got:>16.10f}  {target:>12.8f}  {abs(got - target):>10.2e}")
    print(f"\n{len(rows)} norms on a {grid.radial_levels}x{grid.angular_count} grid in {elapsed:.1f}s")
    return 0


if __name__ == "__main__":
    sys.exit(main())
