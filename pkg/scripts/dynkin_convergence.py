"""Convergence of the Cauchy-Green calculus under mesh refinement for a rational f.

    python3 scripts/dynkin_convergence.py --n 12 --kappa 10
"""

import argparse

import numpy as np

from scl import zoo
from scl.curves import parse_curve, radial_diffeo
from scl.dynkin import QuadratureSpec, apply_function


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--curve", default="ellipse:1.2:1")
    p.add_argument("--n", type=int, default=12)
    p.add_argument("--kappa", type=float, default=10.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pole", type=complex, default=2.0)
    args = p.parse_args()

    curve = parse_curve(args.curve)
    d = radial_diffeo(curve)
    T = zoo.make_operator("similar", curve, args.n, {"kappa": args.kappa}, seed=args.seed)
    ref = np.linalg.inv(T - args.pole * np.eye(args.n))
    f = lambda z: 1 / (z - args.pole)  # noqa: E731
    print(f"{'nodes':>6} {'layers':>6} {'rel error':>12} {'residual':>12} {'ratio':>7}")
    prev = None
    for k, (nodes, layers) in enumerate([(128, 8), (256, 8), (512, 16), (1024, 32)]):
        quad = QuadratureSpec(contour_nodes=nodes, radial_layers=layers)
        r = apply_function(T, f, curve, d, quad)
        err = np.linalg.norm(r.matrix - ref, 2) / np.linalg.norm(ref, 2)
        ratio = f"{prev / err:7.2f}" if prev else "      -"
        print(f"{nodes:6d} {layers:6d} {err:12.4e} {r.residual_estimate:12.4e} {ratio}")
        prev = err


if __name__ == "__main__":
    main()
