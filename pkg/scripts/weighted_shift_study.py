"""Weighted shift with weights (..., 1, alpha, beta, 1, ...): truncated spectra of 2 Re T,
the transfer-matrix eigen-condition and the 2-contraction margin.

    python3 scripts/weighted_shift_study.py --alpha 1.4142135623730951 --beta 1.4142135623730951
"""

import argparse
import math

import numpy as np

from scl import criteria as crit
from scl import zoo


def main():
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--alpha", type=float, default=math.sqrt(2))
    p.add_argument("--beta", type=float, default=math.sqrt(2))
    p.add_argument("--sizes", type=int, nargs="+", default=[11, 21, 51, 101, 201, 401, 801])
    args = p.parse_args()

    a, b = args.alpha, args.beta
    spec = zoo.WeightedShiftSpec(a, b)
    print(f"alpha={a:.6g} beta={b:.6g} alpha^2+beta^2={a * a + b * b:.6g} in_regime={spec.in_regime}")
    print(f"{'n':>5} {'top eig 2Re T_n':>18} {'2-contraction margin':>22}")
    for n in args.sizes:
        s = zoo.WeightedShiftSpec(a, b, n)
        top = zoo.shift_real_part_top_eig(s)
        margin = crit.rho_tests(s.matrix(), 2.0, 64).margin if n <= 401 else float("nan")
        print(f"{n:5d} {top:18.12f} {margin:22.12f}")

    lam = zoo.real_part_point_eigenvalue(a, b)
    print(f"eigenvalue of the infinite 2 Re T above 2: {lam}")
    if lam is not None:
        up, um = zoo.u_pm(lam)
        n = 201
        mid = (n - 1) // 2
        x = np.empty(n)
        # decaying tails u_-^k to the right of the defect, u_+^-k to the left
        x[mid + 1:] = um ** np.arange(n - mid - 1)
        x[mid] = (lam * x[mid + 1] - x[mid + 2]) / b
        x[mid - 1] = (lam * x[mid] - b * x[mid + 1]) / a
        x[:mid - 1] = x[mid - 1] * um ** np.arange(mid - 1, 0, -1)
        A = zoo.WeightedShiftSpec(a, b, n).real_part()
        print(f"residual ||(A_n - lam) x|| / ||x|| for the explicit eigenvector: "
              f"{np.linalg.norm(A @ x - lam * x) / np.linalg.norm(x):.3g}")

    print(f"\n{'lambda':>8} {'closed form f':>16} {'eigen-condition':>16}")
    for l in np.linspace(2, 4, 9)[1:]:
        print(f"{l:8.3f} {zoo.shift_f(l, a, b):16.8f} {zoo.transfer_f(l, a, b):16.8f}")


if __name__ == "__main__":
    main()
