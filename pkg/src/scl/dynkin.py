"""Cauchy-Green functional calculus and transplantation to the circle.

For a pseudoanalytic extension F of f and a domain D containing the curve,

    f(T) = 1/(2 pi i) \\oint_{dD} F(l) (l - T)^{-1} dl - 1/pi \\iint_D dbar F(l) (l - T)^{-1} dA(l).

D is the annulus between gamma_in(s0) and gamma_out(s0) of two offset
families.  The contour term uses the trapezoid rule; the area term a
graded product mesh in (theta, s) that concentrates layers near the curve.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
import scipy.linalg as sla

from ._parallel import pmap, tree_sum
from .curves import (INSIDE, OUTSIDE, CircleDiffeo, CurveFamily, JordanCurve, nice_family,
                     project_many, radial_diffeo, tube_points)
from .errors import QuadratureDiverged, SingularResolvent, SpectrumOffCurve
from .linalg import as_matrix, opnorm
from .pseudoanalytic import CurveFunction, PseudoExtension, jet_extension

_CHUNK = 2048
TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class QuadratureSpec:
    contour_nodes: int = 512
    radial_layers: int = 16
    grading_exponent: float = 2.5
    s0: float = 1.0  # family parameter of the two boundary curves
    residual_ceiling: float = 0.1  # relative to max(1, ||f(T)||)
    spectrum_tol: float = 1e-6

    def validate(self) -> "QuadratureSpec":
        # checked on user input only; the half-resolution rerun may go below
        if self.contour_nodes < 64 or self.radial_layers < 8:
            raise ValueError("need contour_nodes >= 64 and radial_layers >= 8")
        if self.grading_exponent <= 1 or self.s0 <= 0:
            raise ValueError("need grading_exponent > 1 and s0 > 0")
        return self

    @property
    def inner_offset(self) -> float:
        """Family parameter of the innermost (midpoint) layer."""
        return self.s0 * (0.5 / self.radial_layers) ** self.grading_exponent

    def halved(self) -> "QuadratureSpec":
        return replace(self, contour_nodes=self.contour_nodes // 2,
                       radial_layers=self.radial_layers // 2)

    def scaled(self, factor: int) -> "QuadratureSpec":
        return replace(self, contour_nodes=self.contour_nodes * factor,
                       radial_layers=self.radial_layers * factor)

    @classmethod
    def parse(cls, text: str) -> "QuadratureSpec":
        """From the CLI form "NODES,LAYERS"."""
        nodes, layers = (int(v) for v in text.split(","))
        return cls(contour_nodes=nodes, radial_layers=layers).validate()


@dataclass(frozen=True)
class CalculusResult:
    matrix: np.ndarray
    contour_part: np.ndarray
    area_part: np.ndarray
    residual_estimate: float
    quad: QuadratureSpec = field(default_factory=QuadratureSpec)

    def to_dict(self) -> dict:
        def enc(M):
            return [[[float(v.real), float(v.imag)] for v in row] for row in M]
        return {"matrix": enc(self.matrix), "contour_part": enc(self.contour_part),
                "area_part": enc(self.area_part), "residual_estimate": self.residual_estimate,
                "quad": {"contour_nodes": self.quad.contour_nodes,
                         "radial_layers": self.quad.radial_layers,
                         "grading_exponent": self.quad.grading_exponent, "s0": self.quad.s0}}


# ------------------------------------------------------------------ nodes


def resolvent_sum(T, z, w) -> np.ndarray:
    """sum_j w_j (z_j - T)^{-1}, chunked, reduced in a fixed order."""
    T = np.asarray(T, dtype=complex)
    z = np.asarray(z, dtype=complex).ravel()
    w = np.asarray(w, dtype=complex).ravel()
    n = T.shape[0]
    step = max(1, _CHUNK // max(1, n // 8))
    eye = np.eye(n)

    def part(i):
        zz = z[i:i + step]
        inv = np.linalg.inv(zz[:, None, None] * eye - T[None])
        return np.einsum("k,kij->ij", w[i:i + step], inv)

    return tree_sum(pmap(part, range(0, z.size, step)))


def contour_nodes(fam_out: CurveFamily, fam_in: CurveFamily, quad: QuadratureSpec):
    """Trapezoid nodes and dl weights: gamma_out counterclockwise, gamma_in clockwise."""
    N = quad.contour_nodes
    zo, zto, _ = fam_out.points(quad.s0, N)
    zi, zti, _ = fam_in.points(quad.s0, N)
    h = TWO_PI / N
    return np.concatenate([zo, zi]), np.concatenate([zto * h, -zti * h])


def area_nodes(fam_out: CurveFamily, fam_in: CurveFamily, quad: QuadratureSpec):
    """Graded product nodes in (theta, s) and area weights dA on both sides.

    s = s0 u^p with midpoint nodes in u; the Jacobian is |Im(conj(z_theta) z_s)|.
    """
    N, L, p = quad.contour_nodes, quad.radial_layers, quad.grading_exponent
    u = (np.arange(L) + 0.5) / L
    s = quad.s0 * u**p
    ds = quad.s0 * p * u ** (p - 1) / L
    zs, ws = [], []
    for fam in (fam_out, fam_in):
        for sk, wk in zip(s, ds):
            z, zt, zsd = fam.points(sk, N)
            jac = np.abs(np.imag(np.conj(zt) * zsd))
            zs.append(z)
            ws.append(jac * wk * TWO_PI / N)
    return np.concatenate(zs), np.concatenate(ws)


def check_spectrum(T, curve: JordanCurve, tol: float) -> np.ndarray:
    ev = np.linalg.eigvals(T)
    d = project_many(curve, ev)[2]
    scale = max(1.0, curve.diameter)
    if d.max() > tol * scale:
        k = int(d.argmax())
        raise SpectrumOffCurve(f"eigenvalue {ev[k]:.6g} lies {d[k]:.3g} from the curve (tol {tol * scale:.3g})")
    return ev


def _apply_once(T, ext: PseudoExtension, fam_out, fam_in, quad):
    zc, wc = contour_nodes(fam_out, fam_in, quad)
    contour = resolvent_sum(T, zc, ext.evaluate(zc) * wc) / (2j * math.pi)
    za, wa = area_nodes(fam_out, fam_in, quad)
    area = resolvent_sum(T, za, ext.dbar(za) * wa) / math.pi
    return contour, area


def cauchy_green_apply(T, ext: PseudoExtension, curve: JordanCurve, fam_out: CurveFamily,
                       fam_in: CurveFamily, quad: QuadratureSpec = QuadratureSpec()) -> CalculusResult:
    """f(T) by the Cauchy-Green formula; residual from a half-resolution rerun."""
    T = as_matrix(T)
    quad.validate()
    if fam_out.side != OUTSIDE or fam_in.side != INSIDE:
        raise ValueError("fam_out must be an outside family and fam_in an inside family")
    check_spectrum(T, curve, quad.spectrum_tol)
    contour, area = _apply_once(T, ext, fam_out, fam_in, quad)
    M = contour - area
    hc, ha = _apply_once(T, ext, fam_out, fam_in, quad.halved())
    residual = opnorm(M - (hc - ha))
    ceiling = quad.residual_ceiling * max(1.0, opnorm(M))
    if not np.isfinite(residual) or residual > ceiling:
        raise QuadratureDiverged(f"refinement residual {residual:.3g} exceeds ceiling {ceiling:.3g}")
    return CalculusResult(M, contour, area, float(residual), quad)


def tube_families(diffeo: CircleDiffeo, ext: PseudoExtension, frac: float = 0.45):
    """Outside and inside families whose s = 1 curves sit within frac * delta of the curve."""
    th = TWO_PI * np.arange(1024) / 1024
    beta = frac * ext.cutoff_width / float(np.abs(diffeo.inverse_param(th, 1)).max())
    curve = diffeo.curve
    return nice_family(curve, diffeo, OUTSIDE, beta), nice_family(curve, diffeo, INSIDE, beta)


def apply_function(T, f, curve: JordanCurve, diffeo: CircleDiffeo | None = None,
                   quad: QuadratureSpec = QuadratureSpec(), m: int = 256,
                   delta: float | None = None) -> CalculusResult:
    """f(T) for a callable f (vectorised over complex arrays) or a CurveFunction."""
    diffeo = diffeo or radial_diffeo(curve)
    cf = f if isinstance(f, CurveFunction) else CurveFunction.from_callable(curve, f, m)
    ext = jet_extension(curve, cf, delta)
    fo, fi = tube_families(diffeo, ext)
    return cauchy_green_apply(T, ext, curve, fo, fi, quad)


# ---------------------------------------------------------- transplantation


def eta_extension(diffeo: CircleDiffeo, m: int | None = None, delta: float | None = None) -> PseudoExtension:
    """Jet extension of the boundary values of eta."""
    _, vals, g = diffeo.boundary_samples(m)
    cf = CurveFunction.from_samples(diffeo.curve, vals, g)
    return jet_extension(diffeo.curve, cf, delta)


def transplant(T, diffeo: CircleDiffeo, curve: JordanCurve, quad: QuadratureSpec = QuadratureSpec(),
               return_result: bool = False):
    """A = eta(T) through the calculus."""
    if diffeo.curve is not curve:
        raise ValueError("diffeomorphism belongs to a different curve")
    ext = eta_extension(diffeo)
    fo, fi = tube_families(diffeo, ext)
    res = cauchy_green_apply(T, ext, curve, fo, fi, quad)
    return res if return_result else res.matrix


@dataclass(frozen=True)
class ComparabilityReport:
    C: float
    phi_sup: float  # sup ||(A - eta(l))(T - l)^{-1}||
    psi_sup: float  # sup ||(T - l)(A - eta(l))^{-1}||
    n_lambda: int
    n_probes: int


def comparability_grid(curve: JordanCurve, ext: PseudoExtension, n_t: int = 32, n_d: int = 6,
                       d_min_frac: float = 1e-3):
    """Tube points on both sides at log-spaced distances up to half the cut-off width."""
    d_max = 0.5 * ext.cutoff_width
    return tube_points(curve, n_t, np.geomspace(d_min_frac * d_max, d_max, n_d))[0]


def comparability_check(T, A, diffeo: CircleDiffeo, curve: JordanCurve, lam_grid, probes,
                        ext: PseudoExtension | None = None) -> ComparabilityReport:
    """Smallest C >= 1 with ||R_T(l) x|| / C <= ||(A - eta(l))^{-1} x|| <= C ||R_T(l) x||."""
    T = as_matrix(T)
    A = as_matrix(A)
    ext = ext or eta_extension(diffeo)
    lam = np.asarray(lam_grid, dtype=complex).ravel()
    X = np.asarray(probes, dtype=complex)
    X = X / np.linalg.norm(X, axis=0)
    eta = ext.evaluate(lam)
    n = T.shape[0]
    eye = np.eye(n)
    C, phi, psi = 1.0, 0.0, 0.0
    floor = 1e-14 * max(opnorm(T), opnorm(A))
    for l, e in zip(lam, eta):
        lu_t = sla.lu_factor(T - l * eye)
        lu_a = sla.lu_factor(A - e * eye)
        if min(np.abs(np.diag(lu_t[0])).min(), np.abs(np.diag(lu_a[0])).min()) <= floor:
            raise SingularResolvent(f"singular factor at lambda={l:.6g}")
        rt = sla.lu_solve(lu_t, X)
        ra = sla.lu_solve(lu_a, X)
        ratio = np.linalg.norm(ra, axis=0) / np.linalg.norm(rt, axis=0)
        C = max(C, float(ratio.max()), float((1 / ratio).max()))
        Rt = sla.lu_solve(lu_t, eye)
        Ra = sla.lu_solve(lu_a, eye)
        phi = max(phi, opnorm((A - e * eye) @ Rt))
        psi = max(psi, opnorm((T - l * eye) @ Ra))
    return ComparabilityReport(C, phi, psi, lam.size, X.shape[1])


def default_probes(n: int, n_random: int = 8, seed: int = 0) -> np.ndarray:
    """Standard basis plus seeded random unit vectors, as columns."""
    rng = np.random.default_rng(seed)
    R = rng.standard_normal((n, n_random)) + 1j * rng.standard_normal((n, n_random))
    return np.hstack([np.eye(n), R / np.linalg.norm(R, axis=0)])


# --------------------------------------------------------- integral lemma


def _gauss(q: int):
    x, w = np.polynomial.legendre.leggauss(q)
    return 0.5 * (x + 1), 0.5 * w


def _graded_rule(lo: float, hi: float, q: int, levels: int, left: bool, right: bool,
                 sigma: float = 0.15):
    """Composite Gauss rule on [lo, hi], geometrically graded toward flagged ends.

    Returns (x - lo, hi - x, weights) with both offsets computed without
    cancellation, so integrands singular at an endpoint stay accurate.
    """
    if left and right:
        mid = 0.5 * (lo + hi)
        a = _graded_rule(lo, mid, q, levels, True, False, sigma)
        b = _graded_rule(mid, hi, q, levels, False, True, sigma)
        half = mid - lo
        return (np.concatenate([a[0], half + b[0]]), np.concatenate([half + a[1], b[1]]),
                np.concatenate([a[2], b[2]]))
    L = hi - lo
    if left or right:
        frac = np.concatenate([[0.0], sigma ** np.arange(levels, -1, -1)])
    else:
        frac = np.linspace(0.0, 1.0, 3)
    g, gw = _gauss(q)
    h = np.diff(frac) * L
    near = (frac[:-1, None] * L + h[:, None] * g).ravel()  # offset from the graded end
    far = ((1 - frac[1:])[:, None] * L + h[:, None] * (1 - g)).ravel()
    w = (h[:, None] * gw).ravel()
    return (far, near, w) if right else (near, far, w)


def lemma_integral(a: float, b: float, beta: float, w: complex, level: int = 6) -> float:
    """\\iint_{a <= |z| <= b} |z - w|^{-1} |1 - |z||^beta dA(z) in polar coordinates.

    Radial panels are graded toward |z| = 1 and |z| = |w|, angular panels
    toward arg w; ``level`` sets both the Gauss order and the number of
    grading levels (2 * level), so doubling it refines everything.
    """
    if not 0 < a < 1 < b:
        raise ValueError("need 0 < a < 1 < b")
    if not -1 < beta < 0:
        raise ValueError("need -1 < beta < 0")
    rho = abs(w)
    q, lev = level, 2 * level
    cuts = sorted({a, 1.0, b} | ({rho} if a < rho < b else set()))
    sing = {1.0, rho}
    r, one_minus_r, r_minus_rho, wr = [], [], [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        dl, dr, wt = _graded_rule(lo, hi, q, lev, lo in sing, hi in sing)
        x = np.where(dl < dr, lo + dl, hi - dr)
        r.append(x)
        wr.append(wt)
        one_minus_r.append(dr if hi == 1.0 else (-dl if lo == 1.0 else 1.0 - x))
        r_minus_rho.append(-dr if hi == rho else (dl if lo == rho else x - rho))
    r = np.concatenate(r)
    om = np.concatenate(one_minus_r)
    rr = np.concatenate(r_minus_rho)
    wr = np.concatenate(wr) * np.abs(om) ** beta * r
    # symmetric about arg w: integrate [0, pi] and double
    th, _, wth = _graded_rule(0.0, math.pi, q, lev, True, False)
    dist = np.sqrt(rr[:, None] ** 2 + 4 * rho * r[:, None] * np.sin(th[None, :] / 2) ** 2)
    return float(2 * wr @ (1 / dist) @ wth)


def default_w_grid(a: float, b: float, count: int = 16) -> np.ndarray:
    """count points with radii log-spaced over [a, b] and angles spread over the circle."""
    k = np.arange(count)
    return np.geomspace(a, b, count) * np.exp(2j * np.pi * k / count)


def lemma_integral_bound(a: float, b: float, beta: float, w_grid=None, level: int = 6) -> float:
    """sup over the w grid of lemma_integral."""
    w_grid = default_w_grid(a, b) if w_grid is None else np.asarray(w_grid, dtype=complex).ravel()
    rmin, rmax = np.abs(w_grid).min(), np.abs(w_grid).max()
    if rmin < a - 1e-12 or rmax > b + 1e-12:
        raise ValueError("w grid must lie in the annulus a <= |w| <= b")
    return max(lemma_integral(a, b, beta, w, level) for w in w_grid)
