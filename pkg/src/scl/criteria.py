"""Similarity criteria as measured diagnostics.

Every report is a numerical certificate on a finite grid, not a proof: it
carries the grid it was measured on so a refinement can be compared.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from ._parallel import pmap
from .curves import (INSIDE, INTERIOR, EXTERIOR, OUTSIDE, CurveFamily, JordanCurve, nice_family,
                     project_many, radial_diffeo, tube_points)
from .dynkin import check_spectrum, default_probes
from .errors import NotAContraction, SingularFactor, SingularResolvent
from .linalg import as_matrix, dist_to_set, numerical_radius_profile, opnorm, psd_sqrt, resolvent_norms, spectrum

GROWTH_CUT = 0.5
KAPPA_THRESHOLD = 1e6
RANK_TOL = 1e-10


def default_s_grid(count: int = 12) -> np.ndarray:
    return np.logspace(-3, 0, count)


def small_s_slope(s, values) -> float:
    """Least-squares slope of log(values) against log(1/s) over the smaller half of s."""
    s = np.asarray(s, dtype=float)
    v = np.asarray(values, dtype=float)
    keep = s <= math.sqrt(s.min() * s.max()) * (1 + 1e-12)
    if keep.sum() < 2:
        keep = np.ones_like(s, dtype=bool)
    return float(np.polyfit(np.log(1 / s[keep]), np.log(v[keep]), 1)[0])


# ------------------------------------------------------------- pointwise


@dataclass(frozen=True)
class ProfileGrid:
    n_t: int = 64
    n_levels: int = 12
    d_max: float | None = None  # default: half the reach
    anchors: bool = True  # add normal rays through the projections of the eigenvalues


@dataclass(frozen=True)
class ResolventProfile:
    lam: np.ndarray
    dist: np.ndarray  # to the curve
    dist_spectrum: np.ndarray
    norm: np.ndarray
    side: np.ndarray
    levels: np.ndarray
    C_inside: float
    C_outside: float
    growth_exponent: float  # slope of sup(dist * norm) per level against log(1/d)
    stampfli_candidate: bool

    @property
    def identity_defect(self) -> float:
        """max |dist(l, sigma(T)) ||R(l)|| - 1|; zero for normal T."""
        return float(np.abs(self.dist_spectrum * self.norm - 1).max())

    def level_sup(self, side=None) -> np.ndarray:
        sel = np.ones(self.lam.size, bool) if side is None else self.side == side
        prod = self.dist * self.norm
        return np.array([prod[sel & (self.dist == d)].max() for d in self.levels])

    def rows(self):
        return [(float(l.real), float(l.imag), float(d), float(n), int(s))
                for l, d, n, s in zip(self.lam, self.dist, self.norm, self.side)]

    def summary(self) -> dict:
        return {"C_inside": self.C_inside, "C_outside": self.C_outside,
                "growth_exponent": self.growth_exponent,
                "stampfli_candidate": self.stampfli_candidate,
                "identity_defect": self.identity_defect,
                "levels": self.levels.tolist(), "n_samples": int(self.lam.size)}


def resolvent_profile(T, curve: JordanCurve, grid: ProfileGrid = ProfileGrid(),
                      tol: float = 1e-6, spectrum_tol: float = 1e-6) -> ResolventProfile:
    """dist(l, curve) ||(T - l)^{-1}|| on both sides at distances d_max 2^-j."""
    T = as_matrix(T)
    ev = check_spectrum(T, curve, spectrum_tol)
    d_max = grid.d_max if grid.d_max is not None else 0.5 * min(curve.reach, curve.diameter)
    levels = d_max * 2.0 ** -np.arange(grid.n_levels)
    lam, dist, side = tube_points(curve, grid.n_t, levels)
    if grid.anchors:
        t_ev = project_many(curve, ev)[0]
        base, nrm = curve.psi(t_ev), curve.outward_normal(t_ev)
        for sgn in (INTERIOR, EXTERIOR):
            z = base[None, :] + sgn * levels[:, None] * nrm[None, :]
            lam = np.concatenate([lam, z.ravel()])
            dist = np.concatenate([dist, np.repeat(levels, ev.size)])
            side = np.concatenate([side, np.full(z.size, sgn)])
    norm = resolvent_norms(T, lam)
    prod = dist * norm
    c_in = float(prod[side == INTERIOR].max())
    c_out = float(prod[side == EXTERIOR].max())
    sup = np.array([prod[dist == d].max() for d in levels])
    growth = small_s_slope(levels, sup)
    return ResolventProfile(lam, dist, dist_to_set(lam, ev), norm, side, levels, c_in, c_out,
                            growth, max(c_in, c_out) <= 1 + tol)


# ------------------------------------------------------------ mean square


@dataclass(frozen=True)
class MeanSquareReport:
    side: str
    adjoint_flag: bool
    s: list
    per_s: list  # s * sup_x \int_{gamma_s} ||R x||^2 |dl|
    fitted_C: float
    growth_exponent: float
    nodes: list
    n_probes: int
    growth_cut: float = GROWTH_CUT

    @property
    def bounded(self) -> bool:
        return self.growth_exponent <= self.growth_cut

    def to_dict(self) -> dict:
        d = asdict(self)
        d["bounded"] = self.bounded
        return d


def _node_count(family: CurveFamily, s: float, node_factor: float, min_nodes: int) -> int:
    z, zt, _ = family.points(s, 256)
    p1 = family.diffeo.inverse_samples(256, 1)
    offset = family.beta * s * float(np.abs(p1).min())
    length = float(np.abs(zt).mean()) * 2 * math.pi
    n = max(min_nodes, int(math.ceil(node_factor * length / (2 * math.pi * offset))))
    return n + (n % 2)


def line_integrals(T, z, dl, X, chunk: int = 1024) -> np.ndarray:
    """\\int ||(T - l)^{-1} x||^2 |dl| for each probe column x, as trapezoid sums."""
    n = T.shape[0]
    eye = np.eye(n)

    def part(i):
        zz = z[i:i + chunk]
        Y = np.linalg.solve(T[None] - zz[:, None, None] * eye, np.broadcast_to(X, (zz.size,) + X.shape))
        return np.abs(dl[i:i + chunk]) @ (np.abs(Y) ** 2).sum(axis=1)

    return np.sum(pmap(part, range(0, z.size, chunk)), axis=0)


def mean_square(T, family: CurveFamily, adjoint_flag: bool = False, probes=None, s_grid=None,
                node_factor: float = 24.0, min_nodes: int = 1024, seed: int = 0,
                growth_cut: float = GROWTH_CUT) -> MeanSquareReport:
    """s * sup_x \\int_{gamma_s} ||(T - l)^{-1} x||^2 |dl| over a log grid of s.

    With adjoint_flag the integrand is ||(T^* - conj(l))^{-1} x||^2.  The
    trapezoid node count grows like 1/dist(gamma_s, curve) so the peaked
    integrand stays resolved.
    """
    T = as_matrix(T)
    n = T.shape[0]
    s_grid = default_s_grid() if s_grid is None else np.asarray(s_grid, dtype=float)
    X = default_probes(n, seed=seed) if probes is None else np.asarray(probes, dtype=complex)
    X = X / np.linalg.norm(X, axis=0)
    M = T.conj().T if adjoint_flag else T
    ev = np.linalg.eigvals(M)
    floor = 1e-12 * max(1.0, opnorm(T))
    per_s, nodes = [], []
    for s in s_grid:
        N = _node_count(family, s, node_factor, min_nodes)
        z, zt, _ = family.points(s, N)
        if adjoint_flag:
            z = z.conj()
        if dist_to_set(z, ev).min() <= floor:
            raise SingularResolvent(f"gamma_s at s={s:.3g} passes through the spectrum")
        vals = line_integrals(M, z, zt * (2 * math.pi / N), X)
        per_s.append(float(s * vals.max()))
        nodes.append(N)
    side = "outside" if family.side == OUTSIDE else "inside"
    return MeanSquareReport(side, bool(adjoint_flag), s_grid.tolist(), per_s, float(max(per_s)),
                            small_s_slope(s_grid, per_s), nodes, X.shape[1], growth_cut)


def cross_family_stability(T, family_a: CurveFamily, family_b: CurveFamily, adjoint_flag: bool = False,
                           probes=None, s_grid=None) -> float:
    """fitted_C(family_b) / fitted_C(family_a)."""
    if family_a.side != family_b.side:
        raise ValueError("families must approach from the same side")
    a = mean_square(T, family_a, adjoint_flag, probes, s_grid)
    b = mean_square(T, family_b, adjoint_flag, probes, s_grid)
    return b.fitted_C / a.fitted_C


def meansquare_implies_pointwise_check(T, family: CurveFamily, profile: ResolventProfile | None = None,
                                       report: MeanSquareReport | None = None) -> dict:
    """Empirical link constant between the mean-square bound and the pointwise bound on one side.

    link(d) = d sup_{dist(l) = d} ||R(l)|| / sqrt(fitted_C).  A bounded
    link across distance levels is what the implication predicts.
    """
    report = report or mean_square(T, family)
    if not report.bounded:
        return {"applicable": False, "reason": "mean-square bound not satisfied",
                "growth_exponent": report.growth_exponent}
    curve = family.diffeo.curve
    profile = profile or resolvent_profile(T, curve)
    side = EXTERIOR if family.side == OUTSIDE else INTERIOR
    sup = profile.level_sup(side)
    link = sup / math.sqrt(report.fitted_C)
    return {"applicable": True, "fitted_C": report.fitted_C,
            "pointwise_C": float(sup.max()), "link_constant": float(link.max()),
            "link_per_level": link.tolist(), "levels": profile.levels.tolist(),
            "link_growth": small_s_slope(profile.levels, link)}


def default_families(curve: JordanCurve, beta: float | None = None):
    """(outside, inside) families through the radial diffeomorphism, beta from the reach."""
    diffeo = radial_diffeo(curve)
    if beta is None:
        p1 = np.abs(diffeo.inverse_samples(1024, 1)).max()
        beta = 0.5 * min(curve.reach, curve.diameter) / p1
    return nice_family(curve, diffeo, OUTSIDE, beta), nice_family(curve, diffeo, INSIDE, beta)


def naboko_check(T, fam_out: CurveFamily, fam_in: CurveFamily, **kw) -> dict:
    """Mean-square bound for T on the outside and for T^* on the inside."""
    a = mean_square(T, fam_out, False, **kw)
    b = mean_square(T, fam_in, True, **kw)
    return {"outside": a.to_dict(), "inside_adjoint": b.to_dict(), "pass": a.bounded and b.bounded}


def van_casteren_check(T, curve: JordanCurve, fam_out: CurveFamily, profile_grid: ProfileGrid = ProfileGrid(),
                       **kw) -> dict:
    """Pointwise bound inside plus mean-square bounds for T and T^* outside."""
    prof = resolvent_profile(T, curve, profile_grid)
    inside_sup = prof.level_sup(INTERIOR)
    inside_growth = small_s_slope(prof.levels, inside_sup)
    a = mean_square(T, fam_out, False, **kw)
    b = mean_square(T, fam_out, True, **kw)
    ok = inside_growth <= GROWTH_CUT and a.bounded and b.bounded
    return {"C_inside": prof.C_inside, "inside_growth": inside_growth, "outside": a.to_dict(),
            "outside_adjoint": b.to_dict(), "pass": ok}


# -------------------------------------------------- characteristic function


def _defect_basis(M, tol: float):
    """Orthonormal basis of the range of the PSD matrix M, phases normalised."""
    w, U = np.linalg.eigh(0.5 * (M + M.conj().T))
    keep = w > tol * max(1.0, float(np.abs(w).max()))
    E = U[:, keep]
    if E.shape[1]:
        idx = np.abs(E).argmax(axis=0)
        ph = E[idx, np.arange(E.shape[1])]
        E = E * (np.abs(ph) / ph)
    return E


@dataclass(frozen=True, eq=False)
class DefectData:
    T: np.ndarray
    D: np.ndarray  # D_T
    D_star: np.ndarray  # D_{T^*}
    E: np.ndarray  # basis of the defect space of T
    E_star: np.ndarray

    @property
    def unitary(self) -> bool:
        return self.E.shape[1] == 0 and self.E_star.shape[1] == 0


def defect_data(T, tol: float = 1e-10, rank_tol: float = RANK_TOL) -> DefectData:
    T = as_matrix(T)
    nrm = opnorm(T)
    if nrm > 1 + tol:
        raise NotAContraction(f"||T|| = {nrm:.12g} exceeds 1")
    I = np.eye(T.shape[0])
    A = I - T.conj().T @ T
    B = I - T @ T.conj().T
    # clip tiny negative eigenvalues caused by ||T|| = 1 + O(eps)
    D = psd_sqrt(A, tol=max(tol, 1e-12))
    Ds = psd_sqrt(B, tol=max(tol, 1e-12))
    return DefectData(T, D, Ds, _defect_basis(A, rank_tol), _defect_basis(B, rank_tol))


def char_fn(T, lam: complex, data: DefectData | None = None) -> np.ndarray:
    """Theta_T(lam) = [-T + lam D_{T*} (I - lam T^*)^{-1} D_T] on the defect space, in defect bases."""
    data = data or defect_data(T)
    lam = complex(lam)
    if abs(lam) >= 1:
        raise ValueError("lambda must lie in the open unit disk")
    T = data.T
    n = T.shape[0]
    K = np.eye(n) - lam * T.conj().T
    try:
        inner = np.linalg.solve(K, data.D @ data.E)
    except np.linalg.LinAlgError as exc:
        raise SingularFactor(f"I - lambda T^* is singular at lambda={lam}") from exc
    full = -T @ data.E + lam * data.D_star @ inner
    return data.E_star.conj().T @ full


@dataclass(frozen=True)
class CharFnReport:
    grid: np.ndarray
    sup_inv_norm: float
    invertible_everywhere: bool
    defect_dim: int
    unitary: bool
    eps_edge: float

    def summary(self) -> dict:
        return {"sup_inv_norm": self.sup_inv_norm, "invertible_everywhere": self.invertible_everywhere,
                "defect_dim": self.defect_dim, "unitary": self.unitary, "eps_edge": self.eps_edge,
                "n_grid": int(self.grid.size),
                "note": "unitary: empty characteristic function" if self.unitary else ""}


def disk_grid(eps_edge: float = 1e-2, n_r: int = 24, n_theta: int = 64) -> np.ndarray:
    """Radii 1 - (1 - r) geometrically down to eps_edge, times a uniform angle grid."""
    r = 1 - np.geomspace(1.0, eps_edge, n_r)
    th = 2 * np.pi * np.arange(n_theta) / n_theta
    return (r[:, None] * np.exp(1j * th)[None, :]).ravel()


def nf_criterion(T, disk: np.ndarray | None = None, eps_edge: float = 1e-2,
                 singular_tol: float = 1e-12) -> CharFnReport:
    """sup ||Theta_T(lam)^{-1}|| over a disk grid plus the eigenvalues of T in the disk."""
    data = defect_data(T)
    grid = disk_grid(eps_edge) if disk is None else np.asarray(disk, dtype=complex).ravel()
    ev = np.linalg.eigvals(data.T)
    grid = np.concatenate([grid, ev[np.abs(ev) < 1 - eps_edge]])
    k = data.E.shape[1]
    if data.unitary:
        return CharFnReport(grid, 0.0, True, 0, True, eps_edge)
    sup, ok = 0.0, True
    for lam in grid:
        th = char_fn(data.T, lam, data)
        sv = np.linalg.svd(th, compute_uv=False)
        if th.shape[0] != th.shape[1] or sv[-1] <= singular_tol:
            ok = False
            sup = math.inf
            continue
        sup = max(sup, float(1 / sv[-1]))
    return CharFnReport(grid, sup, ok, k, False, eps_edge)


# ----------------------------------------------------- rho, powers, verdict


@dataclass(frozen=True)
class RhoReport:
    rho: float
    theta_count: int
    margin: float  # min_theta lambda_min(I - Re(e^{i theta} T)); 2-contraction iff >= 0
    two_contraction: bool
    band_radii: tuple
    band_ratio: float  # max ||R(l)|| (|l| - 1) over the band grid
    band_ok: bool


def rho_tests(T, rho: float = 2.0, theta_count: int = 64, band_grid=None, tol: float = 1e-8) -> RhoReport:
    if theta_count < 16:
        raise ValueError("theta_count must be >= 16")
    T = as_matrix(T)
    margin = float(1.0 - numerical_radius_profile(T, theta_count).max())
    band_ratio, band_ok, radii = math.nan, False, (math.nan, math.nan)
    if rho >= 2:
        upper = math.inf if rho == 2 else (rho - 1) / (rho - 2)
        if band_grid is None:
            hi = min(upper, 4.0)
            r = 1 + (hi - 1) * np.geomspace(1e-3, 1.0, 16)
            r = r[r < upper]
            th = 2 * np.pi * np.arange(64) / 64
            band_grid = (r[:, None] * np.exp(1j * th)[None, :]).ravel()
        band_grid = np.asarray(band_grid, dtype=complex).ravel()
        radii = (float(np.abs(band_grid).min()), float(np.abs(band_grid).max()))
        norms = resolvent_norms(T, band_grid)
        band_ratio = float((norms * (np.abs(band_grid) - 1)).max())
        band_ok = band_ratio <= 1 + tol
    return RhoReport(float(rho), theta_count, margin, margin >= -tol, radii, band_ratio, band_ok)


@dataclass(frozen=True)
class PowerReport:
    sup_forward: float
    sup_backward: float | None
    n_max: int
    growth_exponent: float  # slope of log ||T^n|| against log n over the second half
    aborted: bool
    bounded: bool
    norms: list = field(repr=False, default_factory=list)


def _power_norms(T, n_max: int, blowup: float):
    """||T^n||, n = 0..n_max, with the running product renormalised each step."""
    P = np.eye(T.shape[0], dtype=complex)
    logscale = 0.0
    out = [1.0]
    for _ in range(n_max):
        P = P @ T
        nrm = opnorm(P)
        if nrm == 0:
            out.extend([0.0] * (n_max + 1 - len(out)))
            break
        logscale += math.log(nrm)
        P /= nrm
        if logscale > math.log(blowup):
            return out + [math.exp(logscale)], True
        out.append(math.exp(logscale))
    return out, False


def power_bounded_check(T, n_max: int = 1000, two_sided: bool = False, blowup: float = 1e12,
                        growth_cut: float = GROWTH_CUT) -> PowerReport:
    T = as_matrix(T)
    fwd, ab = _power_norms(T, n_max, blowup)
    bwd = None
    norms = fwd
    if two_sided:
        try:
            Ti = np.linalg.inv(T)
        except np.linalg.LinAlgError as exc:
            raise SingularResolvent("T is not invertible") from exc
        b, ab2 = _power_norms(Ti, n_max, blowup)
        ab = ab or ab2
        bwd = float(max(b))
        norms = [max(x, y) for x, y in zip(fwd, b)]
    k = np.arange(len(norms))
    half = k >= max(1, len(norms) // 2)
    vals = np.maximum(np.asarray(norms)[half], 1e-300)
    growth = float(np.polyfit(np.log(k[half]), np.log(vals), 1)[0]) if half.sum() >= 2 else 0.0
    bounded = (not ab) and growth <= growth_cut
    return PowerReport(float(max(fwd)), bwd, n_max, growth, ab, bounded, [float(v) for v in norms])


@dataclass(frozen=True)
class SimilarityReport:
    verdict: str  # normal | similar-to-normal | non-diagonalizable | ill-conditioned-similar
    normality_defect: float
    diagonalizer_condition: float
    eigenvalues: np.ndarray = field(repr=False)


def similarity_diagnostic(T, kappa_threshold: float = KAPPA_THRESHOLD,
                          normal_tol: float = 1e-10) -> SimilarityReport:
    sp = spectrum(T, normal_tol=normal_tol)
    scale = max(1.0, opnorm(T)) ** 2
    if sp.normality_defect <= normal_tol * scale:
        verdict = "normal"
    elif not sp.diagonalizable:
        verdict = "non-diagonalizable"
    elif sp.diagonalizer_condition > kappa_threshold:
        verdict = "ill-conditioned-similar"
    else:
        verdict = "similar-to-normal"
    return SimilarityReport(verdict, sp.normality_defect, sp.diagonalizer_condition, sp.eigenvalues)
