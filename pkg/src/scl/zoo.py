"""Concrete operators: normal, similar-to-normal, Jordan blocks and the
bilateral weighted shift with weights (..., 1, 1, alpha, beta, 1, 1, ...).

The shift comes with the transfer-matrix apparatus used to look for
eigenvalues of A = 2 Re T above 2: for lambda > 2 a square-summable
solution of (A - lambda) x = 0 must decay like u_-^n on the right and
u_+^n on the left, and the three non-free equations glue the two tails
through a product of 2x2 Mobius matrices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla
from scipy.optimize import brentq

from .curves import JordanCurve
from .errors import BadParams, DomainError
from .linalg import spectrum

KINDS = ("normal", "similar", "jordan", "shift")


@dataclass(frozen=True)
class WeightedShiftSpec:
    alpha: float
    beta: float
    n: int = 101
    boundary: str = "dirichlet"  # rows/columns outside the window are dropped

    def __post_init__(self):
        if self.alpha <= 0 or self.beta <= 0:
            raise BadParams("shift weights must be positive")
        if self.n < 3 or self.n % 2 == 0:
            raise BadParams(f"truncation size must be odd and >= 3, got {self.n}")
        if self.boundary != "dirichlet":
            raise BadParams(f"unknown boundary convention {self.boundary!r}")

    @property
    def in_regime(self) -> bool:
        """max(alpha, beta) > 1 and alpha^2 + beta^2 <= 4."""
        return max(self.alpha, self.beta) > 1 and self.alpha**2 + self.beta**2 <= 4 * (1 + 1e-12)

    def weights(self) -> np.ndarray:
        """The n - 1 subdiagonal weights; alpha and beta sit at the middle."""
        w = np.ones(self.n - 1)
        mid = (self.n - 1) // 2
        w[mid - 1] = self.alpha
        w[mid] = self.beta
        return w

    def matrix(self) -> np.ndarray:
        """T e_j = w_j e_{j+1} restricted to the window."""
        return np.diag(self.weights().astype(complex), -1)

    def real_part(self) -> np.ndarray:
        """A_n = 2 Re T_n, a Jacobi matrix with zero diagonal."""
        w = self.weights()
        return np.diag(w, -1) + np.diag(w, 1)


def shift_real_part_top_eig(spec: WeightedShiftSpec) -> float:
    d = np.zeros(spec.n)
    e = spec.weights()
    top = sla.eigvalsh_tridiagonal(d, e, select="i", select_range=(spec.n - 1, spec.n - 1))
    return float(top[0])


# ---------------------------------------------------------- transfer matrices


def u_pm(lam: float) -> tuple[float, float]:
    """Roots u_+ >= u_- > 0 of u^2 - lam u + 1 for lam > 2."""
    lam = float(lam)
    if not lam > 2:
        raise DomainError(f"u_pm needs lambda > 2, got {lam}")
    up = 0.5 * (lam + math.sqrt((lam - 2) * (lam + 2)))
    return up, 1.0 / up


def shift_f(lam: float, alpha: float, beta: float) -> float:
    """lam [(lam^2 - (alpha^2 + beta^2)) u_+ + u_-], the closed form stated for the example."""
    up, um = u_pm(lam)
    return lam * ((lam**2 - (alpha**2 + beta**2)) * up + um)


@dataclass(frozen=True)
class TransferMatrix:
    """2x2 matrix acting on z by the Mobius map (a z + b) / (c z + d)."""

    entries: np.ndarray

    @classmethod
    def step(cls, F: float, G: float, lam: float) -> "TransferMatrix":
        """Encodes F x_n - lam x_{n+1} + G x_{n+2} = 0 as y_n = F / (-G y_{n+1} + lam)."""
        return cls(np.array([[0.0, F], [-G, lam]]))

    def __matmul__(self, other: "TransferMatrix") -> "TransferMatrix":
        return TransferMatrix(self.entries @ other.entries)

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.entries))

    def act(self, z):
        (a, b), (c, d) = self.entries
        return (a * z + b) / (c * z + d)


def transfer_product(lam: float, alpha: float, beta: float) -> TransferMatrix:
    """M = [[0,1],[-alpha,lam]] [[0,alpha],[-beta,lam]] [[0,beta],[-1,lam]], so y_{-1} = M . y_2."""
    return (TransferMatrix.step(1.0, alpha, lam) @ TransferMatrix.step(alpha, beta, lam)
            @ TransferMatrix.step(beta, 1.0, lam))


def transfer_f(lam: float, alpha: float, beta: float) -> float:
    """u_+ (M21 u_- + M22) - (M11 u_- + M12); zero exactly at eigenvalues of A above 2."""
    up, um = u_pm(lam)
    M = transfer_product(lam, alpha, beta).entries
    return float(up * (M[1, 0] * um + M[1, 1]) - (M[0, 0] * um + M[0, 1]))


def recursion_y_minus1(lam: float, alpha: float, beta: float) -> float:
    """y_{-1} = x_0 / x_{-1} from the decaying right tail x_2 = 1, x_3 = u_-, solved backwards."""
    _, um = u_pm(lam)
    x2, x3 = 1.0, um
    x1 = (lam * x2 - x3) / beta
    x0 = (lam * x1 - beta * x2) / alpha
    xm1 = lam * x0 - alpha * x1
    return x0 / xm1


def real_part_point_eigenvalue(alpha: float, beta: float, lam_max: float = 1e3):
    """Eigenvalue of the infinite A = 2 Re T in (2, inf), or None.

    It is the zero of transfer_f; for lam -> inf transfer_f is positive,
    so a sign change on (2, lam_max] brackets it.
    """
    lo = 2.0 + 1e-12
    grid = np.geomspace(1e-12, lam_max - 2, 400) + 2.0
    vals = np.array([transfer_f(l, alpha, beta) for l in grid])
    neg = np.nonzero(vals < 0)[0]
    if neg.size == 0:
        return None
    k = neg[-1]
    lo, hi = grid[k], grid[k + 1]
    return float(brentq(transfer_f, lo, hi, args=(alpha, beta), xtol=1e-15, rtol=1e-15))


# ------------------------------------------------------------ constructors


def _points(curve: JordanCurve, n: int, spacing: str, rng) -> np.ndarray:
    if spacing == "equispaced":
        t = curve.t_grid(n)
    elif spacing == "random":
        t = np.sort(rng.uniform(0, 2 * math.pi, n))
    else:
        raise BadParams(f"unknown spacing {spacing!r}")
    return curve.psi(t)


def random_unitary(n: int, rng) -> np.ndarray:
    """Product of n random Householder reflections (unit-norm elementary transforms)."""
    Q = np.eye(n, dtype=complex)
    for _ in range(n):
        v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v /= np.linalg.norm(v)
        Q = Q - 2.0 * np.outer(Q @ v, v.conj())
    return Q


def similar_to_normal(N: np.ndarray, kappa: float, rng, tol: float = 0.05) -> tuple[np.ndarray, np.ndarray]:
    """T = S N S^{-1} with S = Q1 diag(spread) Q2 tuned so the measured diagonalizer condition is about kappa."""
    n = N.shape[0]
    Q1, Q2 = random_unitary(n, rng), random_unitary(n, rng)

    def build(log_c):
        S = (Q1 * np.geomspace(1.0, math.exp(log_c), n)) @ Q2
        return S, S @ N @ np.linalg.solve(S, np.eye(n))

    def measured(log_c):
        return spectrum(build(log_c)[1]).diagonalizer_condition

    lo, hi = 0.0, 2 * math.log(kappa) + 1.0
    while measured(hi) < kappa and hi < 60:
        hi *= 2
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        k = measured(mid)
        if abs(math.log(k / kappa)) < tol:
            break
        lo, hi = (mid, hi) if k < kappa else (lo, mid)
    return build(mid)


def make_operator(kind: str, curve: JordanCurve | None = None, n: int = 8, params: dict | None = None,
                  seed: int = 0) -> np.ndarray:
    """Deterministic test operators by kind.

    normal   diag(psi(t_k)), params: spacing = equispaced | random
    similar  S N S^{-1}, params: kappa (target), spacing
    jordan   n x n Jordan block at psi(t0), params: t0
    shift    truncated weighted shift, params: alpha, beta (n odd)
    """
    params = dict(params or {})
    rng = np.random.default_rng(seed)
    if n < 2:
        raise BadParams(f"n must be >= 2, got {n}")
    if kind in ("normal", "similar", "jordan") and curve is None:
        raise BadParams(f"kind {kind!r} needs a curve")
    if kind == "normal":
        return np.diag(_points(curve, n, params.get("spacing", "equispaced"), rng))
    if kind == "similar":
        if "kappa" not in params:
            raise BadParams("kind 'similar' needs params['kappa']")
        kappa = float(params["kappa"])
        if kappa < 1:
            raise BadParams("kappa must be >= 1")
        N = np.diag(_points(curve, n, params.get("spacing", "random"), rng))
        return similar_to_normal(N, kappa, rng)[1]
    if kind == "jordan":
        lam = complex(curve.psi(np.array([float(params.get("t0", 0.0))]))[0])
        return lam * np.eye(n, dtype=complex) + np.diag(np.ones(n - 1, dtype=complex), 1)
    if kind == "shift":
        try:
            spec = WeightedShiftSpec(float(params["alpha"]), float(params["beta"]), n)
        except KeyError as exc:
            raise BadParams(f"kind 'shift' needs params[{exc.args[0]!r}]") from exc
        return spec.matrix()
    raise BadParams(f"unknown operator kind {kind!r}; expected one of {', '.join(KINDS)}")
