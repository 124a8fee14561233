"""Mean-square resolvent integrals s * sup_x int_{gamma_s} ||R x||^2 across operator kinds.

    python3 scripts/meansquare_sweep.py --curve ellipse:1.2:1
"""

import argparse

from scl import criteria as crit
from scl import zoo
from scl.curves import parse_curve


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--curve", default="circle")
    p.add_argument("--n", type=int, default=8)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    curve = parse_curve(args.curve)
    fo, fi = crit.default_families(curve)
    ops = {
        "normal": zoo.make_operator("normal", curve, args.n, {"spacing": "random"}, seed=args.seed),
        "similar k=10": zoo.make_operator("similar", curve, args.n, {"kappa": 10}, seed=args.seed),
        "similar k=100": zoo.make_operator("similar", curve, args.n, {"kappa": 100}, seed=args.seed),
        "jordan J_2": zoo.make_operator("jordan", curve, 2),
    }
    print(f"{'operator':>14} {'side':>8} {'fitted C':>12} {'growth':>8} {'bounded':>8}")
    for name, T in ops.items():
        for fam in (fo, fi):
            rep = crit.mean_square(T, fam, seed=args.seed)
            print(f"{name:>14} {rep.side:>8} {rep.fitted_C:12.5g} {rep.growth_exponent:8.3f} {str(rep.bounded):>8}")


if __name__ == "__main__":
    main()
