"""Smooth Jordan curves given by trigonometric polynomials.

A curve is psi(t) = sum_k c_k exp(i k t), t in [0, 2*pi), always stored
counterclockwise so that the interior is the region of winding number 1.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from ._fourier import TrigSeries, spectral_derivative
from .errors import AmbiguousProjection, BadCurve, BetaTooLarge, InputError, NotStarShaped

TWO_PI = 2.0 * math.pi
INTERIOR, ON_CURVE, EXTERIOR = -1, 0, 1
SIDE_NAMES = {INTERIOR: "interior", ON_CURVE: "on-curve", EXTERIOR: "exterior"}


@dataclass(frozen=True, eq=False)
class JordanCurve:
    series: TrigSeries
    center: complex
    grid_density: float = 64.0
    name: str = ""

    # -- construction -------------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs, center=None, grid_density: float = 64.0, name: str = "",
                    max_degree: int = 64) -> "JordanCurve":
        """Build from ``{k: c_k}`` or an iterable of ``(k, c_k)`` pairs.

        Clockwise input is reparametrised by t -> -t.
        """
        items = coeffs.items() if isinstance(coeffs, dict) else coeffs
        ks, cs = [], []
        for k, c in items:
            ks.append(int(k))
            cs.append(complex(c))
        if not ks:
            raise BadCurve("no Fourier coefficients")
        if max(abs(k) for k in ks) > max_degree:
            raise BadCurve(f"degree exceeds {max_degree}")
        series = TrigSeries(ks, cs)
        m = max(1024, 32 * series.degree)
        z = series.sample(m)
        dz = series.sample(m, deriv=1)
        area = 0.5 * np.sum(np.imag(np.conj(z) * dz)) * TWO_PI / m
        if area < 0:
            series = TrigSeries(-series.ks, series.cs)
        if center is None:
            center = complex(np.mean(series.sample(m)))
        curve = cls(series, complex(center), float(grid_density), name)
        curve._validate()
        return curve

    def _validate(self) -> None:
        dz = self.dpsi(self.fine_t)
        if np.abs(dz).min() <= 1e-12 * np.abs(dz).max():
            raise BadCurve("psi' vanishes on the sampling grid")
        if _polyline_self_intersects(self.psi(self.t_grid(512))):
            raise BadCurve("curve self-intersects")

    # -- evaluation ---------------------------------------------------------

    @property
    def degree(self) -> int:
        return self.series.degree

    def psi(self, t):
        return self.series(t)

    def dpsi(self, t):
        return self.series(t, deriv=1)

    def d2psi(self, t):
        return self.series(t, deriv=2)

    @staticmethod
    def t_grid(m: int) -> np.ndarray:
        return TWO_PI * np.arange(m) / m

    @cached_property
    def fine_t(self) -> np.ndarray:
        return self.t_grid(max(1024, 32 * self.degree))

    @cached_property
    def length(self) -> float:
        m = self.fine_t.size
        return float(np.abs(self.series.sample(m, 1)).sum() * TWO_PI / m)

    @cached_property
    def diameter(self) -> float:
        z = self.series.sample(512)
        return float(np.abs(z[:, None] - z[None, :]).max())

    def curvature(self, t):
        d1, d2 = self.dpsi(t), self.d2psi(t)
        return np.imag(np.conj(d1) * d2) / np.abs(d1) ** 3

    def outward_normal(self, t):
        d1 = self.dpsi(t)
        return -1j * d1 / np.abs(d1)

    @cached_property
    def reach_sides(self) -> tuple[float, float]:
        """(interior reach, exterior reach) by Federer's pair formula.

        reach = inf |y - x|^2 / (2 |<y - x, n_x>|) over pairs of curve
        points, split by which side of the tangent line at x the point y is.
        """
        m = 512
        t = self.t_grid(m)
        z = self.psi(t)
        n = self.outward_normal(t)
        diff = z[None, :] - z[:, None]
        normal = np.real(np.conj(n)[:, None] * diff)
        sq = np.abs(diff) ** 2
        np.fill_diagonal(normal, 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = sq / (2 * np.abs(normal))
        inner = np.where(normal < 0, ratio, np.inf)
        outer = np.where(normal > 0, ratio, np.inf)
        # adjacent samples resolve curvature exactly in the limit; add it
        kappa = self.curvature(self.fine_t)
        kin = kappa.max()
        kout = -kappa.min()
        r_in = min(float(inner.min()), 1 / kin if kin > 0 else math.inf)
        r_out = min(float(outer.min()), 1 / kout if kout > 0 else math.inf)
        return r_in, r_out

    @property
    def reach(self) -> float:
        return min(self.reach_sides)

    def to_json(self) -> str:
        coeffs = [[int(k), float(c.real), float(c.imag)] for k, c in zip(self.series.ks, self.series.cs)]
        return json.dumps({"coeffs": coeffs, "center": [self.center.real, self.center.imag]})

    def describe(self) -> dict:
        return {"name": self.name, "degree": self.degree, "length": self.length,
                "center": [self.center.real, self.center.imag]}


# ------------------------------------------------------------------ builders


def circle(r: float = 1.0, center: complex = 0.0) -> JordanCurve:
    return JordanCurve.from_coeffs({0: center, 1: r}, center=center, name=f"circle:{r:g}")


def ellipse(a: float, b: float, center: complex = 0.0) -> JordanCurve:
    # a cos t + i b sin t
    return JordanCurve.from_coeffs({0: center, 1: (a + b) / 2, -1: (a - b) / 2}, center=center,
                                   name=f"ellipse:{a:g}:{b:g}")


def blob(seed: int, degree: int = 8, amplitude: float = 0.05) -> JordanCurve:
    """Random smooth perturbation of the unit circle, |c_k| <= amplitude / k^2."""
    rng = np.random.default_rng(seed)
    coeffs = {1: 1.0 + 0j}
    for k in range(-degree, degree + 1):
        if k in (0, 1):
            continue
        mag = amplitude / k**2 * rng.uniform(0.2, 1.0)
        coeffs[k] = mag * np.exp(1j * rng.uniform(0, TWO_PI))
    return JordanCurve.from_coeffs(coeffs, center=0.0, name=f"blob:{seed}")


def parse_curve(spec: str) -> JordanCurve:
    """Named built-in (circle, circle:r, ellipse:a:b, blob:seed) or a JSON file."""
    parts = spec.split(":")
    try:
        if parts[0] == "circle" and len(parts) <= 2:
            return circle(float(parts[1]) if len(parts) == 2 else 1.0)
        if parts[0] == "ellipse" and len(parts) == 3:
            return ellipse(float(parts[1]), float(parts[2]))
        if parts[0] == "blob" and len(parts) == 2:
            return blob(int(parts[1]))
    except ValueError as exc:
        raise InputError(f"bad curve spec {spec!r}: {exc}") from exc
    try:
        with open(spec) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"curve {spec!r} is neither a built-in nor a readable file") from exc
    return curve_from_json(text, name=spec)


def curve_from_json(text: str, name: str = "") -> JordanCurve:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"curve JSON: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    if "coeffs" not in obj:
        raise InputError('curve JSON needs a "coeffs" field')
    coeffs = []
    for i, row in enumerate(obj["coeffs"]):
        if len(row) != 3:
            raise InputError(f'curve JSON field "coeffs"[{i}]: expected [k, re, im]')
        coeffs.append((int(row[0]), complex(float(row[1]), float(row[2]))))
    center = obj.get("center")
    if center is not None:
        center = complex(float(center[0]), float(center[1]))
    return JordanCurve.from_coeffs(coeffs, center=center, name=name)


# ---------------------------------------------------------------- projection


@dataclass(frozen=True)
class Projection:
    point: complex
    parameter: float
    distance: float
    side: str
    ambiguous: bool = False


def _refine(curve: JordanCurve, z, t0, h):
    """Newton on |psi(t) - z|^2 inside [t0 - h, t0 + h], golden section fallback."""
    t = t0.copy()
    lo, hi = t0 - h, t0 + h
    done = np.zeros(t.shape, dtype=bool)
    for _ in range(30):
        act = ~done
        if not act.any():
            break
        ta = t[act]
        r = curve.psi(ta) - z[act]
        d1 = curve.dpsi(ta)
        d2 = curve.d2psi(ta)
        g = np.real(np.conj(r) * d1)
        H = np.abs(d1) ** 2 + np.real(np.conj(r) * d2)
        step = np.where(H > 0, g / np.where(H > 0, H, 1.0), np.sign(g) * h[act] / 4)
        tn = np.clip(ta - step, lo[act], hi[act])
        conv = np.abs(tn - ta) <= 4e-16 * TWO_PI
        t[act] = tn
        idx = np.flatnonzero(act)
        done[idx[conv]] = True
    # golden section where Newton stalled
    bad = ~done
    if bad.any():
        a, b = lo[bad].copy(), hi[bad].copy()
        zb = z[bad]
        gr = (math.sqrt(5) - 1) / 2
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        fc = np.abs(curve.psi(c) - zb)
        fd = np.abs(curve.psi(d) - zb)
        for _ in range(80):
            left = fc < fd
            b = np.where(left, d, b)
            a = np.where(left, a, c)
            c_new = b - gr * (b - a)
            d_new = a + gr * (b - a)
            c, d = c_new, d_new
            fc = np.abs(curve.psi(c) - zb)
            fd = np.abs(curve.psi(d) - zb)
        tg = 0.5 * (a + b)
        # keep the Newton iterate if it is at least as good
        better = np.abs(curve.psi(tg) - zb) < np.abs(curve.psi(t[bad]) - zb)
        t[bad] = np.where(better, tg, t[bad])
    return np.mod(t, TWO_PI)


def project_many(curve: JordanCurve, z, amb_tol: float = 1e-9):
    """Vectorised nearest-point projection.

    Returns arrays (t, p, d, side, ambiguous) shaped like z.  side is
    -1 interior, +1 exterior, 0 on the curve.
    """
    z = np.asarray(z, dtype=complex)
    shape = z.shape
    zf = z.ravel()
    mc = max(16 * curve.degree, 64)
    tc = curve.t_grid(mc)
    pc = curve.psi(tc)
    h = np.full(zf.size, 1.5 * TWO_PI / mc)
    t_best = np.empty(zf.size)
    t_second = np.empty(zf.size)
    step = max(1, (1 << 20) // mc)
    for s in range(0, zf.size, step):
        D = np.abs(zf[s:s + step, None] - pc[None, :])
        i0 = D.argmin(axis=1)
        locmin = (D <= np.roll(D, 1, axis=1)) & (D <= np.roll(D, -1, axis=1))
        rows = np.arange(D.shape[0])
        locmin[rows, i0] = False
        locmin[rows, (i0 + 1) % mc] = False
        locmin[rows, (i0 - 1) % mc] = False
        D2 = np.where(locmin, D, np.inf)
        i1 = D2.argmin(axis=1)
        i1 = np.where(np.isfinite(D2[rows, i1]), i1, i0)
        t_best[s:s + step] = tc[i0]
        t_second[s:s + step] = tc[i1]
    ta = _refine(curve, zf, t_best, h)
    tb = _refine(curve, zf, t_second, h)
    da = np.abs(curve.psi(ta) - zf)
    db = np.abs(curve.psi(tb) - zf)
    scale = max(1.0, curve.diameter)
    close = np.abs(da - db) <= amb_tol * scale
    # deterministic tie-break: smaller parameter wins
    pick_b = np.where(close, tb < ta, db < da)
    t = np.where(pick_b, tb, ta)
    p = curve.psi(t)
    d = np.abs(zf - p)
    amb = close & (np.abs(curve.psi(ta) - curve.psi(tb)) > 1e-6 * curve.length)
    side_val = np.imag(np.conj(curve.dpsi(t)) * (zf - p))
    side = np.where(side_val > 0, INTERIOR, EXTERIOR)
    side = np.where(d <= 1e-14 * scale, ON_CURVE, side)
    return (t.reshape(shape), p.reshape(shape), d.reshape(shape),
            side.reshape(shape), amb.reshape(shape))


def project(curve: JordanCurve, z: complex, strict: bool = False) -> Projection:
    """Nearest point of the curve to z.

    Near the medial axis two distinct nearest points may exist; the one with
    smaller parameter is returned and flagged ``ambiguous``.  With
    ``strict=True`` that case raises AmbiguousProjection instead.
    """
    t, p, d, side, amb = project_many(curve, np.array([z]))
    proj = Projection(complex(p[0]), float(t[0]), float(d[0]), SIDE_NAMES[int(side[0])], bool(amb[0]))
    if strict and proj.ambiguous:
        raise AmbiguousProjection(f"{z} is equidistant from separated curve points", proj)
    return proj


def distance(curve: JordanCurve, z) -> np.ndarray:
    return project_many(curve, z)[2]


def tube_points(curve: JordanCurve, n_t: int, distances, sides=(INTERIOR, EXTERIOR)):
    """Points psi(t_j) +- d n(t_j) for every (side, d, t_j); returns (z, d, side) flat.

    Offsets along the normal realise distance exactly d while d stays below
    the reach of that side.
    """
    t = curve.t_grid(n_t)
    base = curve.psi(t)
    nrm = curve.outward_normal(t)
    ds = np.asarray(distances, dtype=float)
    zs, dd, ss = [], [], []
    for side in sides:
        z = base[None, :] + side * ds[:, None] * nrm[None, :]
        zs.append(z.ravel())
        dd.append(np.repeat(ds, n_t))
        ss.append(np.full(z.size, side))
    return np.concatenate(zs), np.concatenate(dd), np.concatenate(ss)


def winding_number(curve: JordanCurve, z, m: int = 4096) -> np.ndarray:
    """Winding number of the sampled polygon around z (reliable away from the curve)."""
    w = curve.psi(curve.t_grid(m))
    z = np.asarray(z, dtype=complex)
    v = w[None, :] - z.ravel()[:, None]
    turn = np.angle(np.roll(v, -1, axis=1) / v).sum(axis=1)
    return np.rint(turn / TWO_PI).astype(int).reshape(z.shape)


# ------------------------------------------------------------ diffeomorphism


@dataclass(frozen=True, eq=False)
class CircleDiffeo:
    """Radial map eta(z) = (z - z0)/|z - z0| from a star-shaped curve to the circle.

    ``radius`` is the trigonometric interpolant of r(theta), so the inverse
    is theta -> z0 + r(theta) e^{i theta}.
    """

    curve: JordanCurve
    center: complex
    radius: TrigSeries
    _bv: TrigSeries = field(repr=False)
    m: int = 256

    def boundary_values(self, t):
        v = self.curve.psi(t) - self.center
        return v / np.abs(v)

    def tangential_derivative(self, t):
        """Complex derivative of eta along the curve, d eta(psi(t))/dt / psi'(t)."""
        return self._bv(t, deriv=1) / self.curve.dpsi(t)

    def boundary_samples(self, m: int | None = None):
        """(t_j, eta values, tangential derivative) on a uniform grid."""
        m = m or self.m
        t = self.curve.t_grid(m)
        vals = self.boundary_values(t)
        g = spectral_derivative(vals) / self.curve.dpsi(t)
        return t, vals, g

    def inverse(self, w):
        """Unit-circle point (or any nonzero w, via its argument) to the curve."""
        theta = np.angle(np.asarray(w, dtype=complex))
        return self.inverse_param(theta)

    def inverse_param(self, theta, deriv: int = 0):
        theta = np.asarray(theta, dtype=float)
        return self._inverse(theta, deriv, lambda k: self.radius(theta, k).real)

    def inverse_samples(self, m: int, deriv: int = 0):
        """inverse_param on the uniform grid of m angles, by FFT."""
        theta = TWO_PI * np.arange(m) / m
        return self._inverse(theta, deriv, lambda k: self.radius.sample(m, k).real)

    def _inverse(self, theta, deriv, radius):
        e = np.exp(1j * theta)
        r = radius(0)
        if deriv == 0:
            return self.center + r * e
        r1 = radius(1)
        if deriv == 1:
            return (r1 + 1j * r) * e
        r2 = radius(2)
        if deriv == 2:
            return (r2 + 2j * r1 - r) * e
        raise ValueError("deriv must be 0, 1 or 2")

    def bilipschitz_constants(self, m: int = 400) -> tuple[float, float]:
        """(c, C) with c|z - w| <= |eta(z) - eta(w)| <= C|z - w| over curve sample pairs."""
        t = self.curve.t_grid(m)
        z = self.curve.psi(t)
        e = self.boundary_values(t)
        iu = np.triu_indices(m, 1)
        ratio = np.abs(e[:, None] - e[None, :])[iu] / np.abs(z[:, None] - z[None, :])[iu]
        return float(ratio.min()), float(ratio.max())


def radial_diffeo(curve: JordanCurve, center: complex | None = None, m: int = 256) -> CircleDiffeo:
    z0 = curve.center if center is None else complex(center)
    tf = curve.fine_t
    v = curve.psi(tf) - z0
    dth = np.imag(curve.dpsi(tf) / v)
    if np.any(np.abs(v) < 1e-12) or dth.min() <= 0:
        raise NotStarShaped(f"argument of psi - z0 is not monotone about z0={z0}")
    # theta(t) on the fine grid, then invert theta_j -> t_j by Newton
    theta_f = np.unwrap(np.angle(v))
    targets = TWO_PI * np.arange(m) / m
    base = theta_f[0]
    tt = np.concatenate([tf, [TWO_PI]])
    th = np.concatenate([theta_f, [theta_f[0] + TWO_PI]]) - base
    goal = np.mod(targets - base, TWO_PI)
    t = np.interp(goal, th, tt)
    for _ in range(50):
        w = curve.psi(t) - z0
        ang = np.angle(w)
        err = np.angle(np.exp(1j * (ang - targets)))
        slope = np.imag(curve.dpsi(t) / w)
        dt = err / slope
        t = t - dt
        if np.abs(dt).max() < 1e-15:
            break
    r = np.abs(curve.psi(t) - z0)
    radius = TrigSeries.from_samples(r, rel_cut=1e-18)
    tg = curve.t_grid(m)
    bv = TrigSeries.from_samples((curve.psi(tg) - z0) / np.abs(curve.psi(tg) - z0))
    return CircleDiffeo(curve, z0, radius, bv, m)


# -------------------------------------------------------------- curve family


OUTSIDE, INSIDE = 1, -1


@dataclass(frozen=True, eq=False)
class CurveFamily:
    """s -> gamma_s, the first-order jet of eta^{-1} applied to (1 +- beta s) e^{i theta}.

    gamma_s(theta) = psi~(theta) - i sigma psi~'(theta), sigma = +-beta*s, where
    psi~ = eta^{-1} on the circle.
    """

    diffeo: CircleDiffeo
    side: int
    beta: float

    def sigma(self, s):
        return self.side * self.beta * np.asarray(s, dtype=float)

    def points(self, s, m: int):
        """Vertices, d/dtheta and d/ds of gamma_s on m uniform theta nodes."""
        sig = self.sigma(s)
        p0, p1, p2 = (self.diffeo.inverse_samples(m, k) for k in range(3))
        return self._assemble(sig, p0, p1, p2)

    def at(self, theta, s):
        sig = self.sigma(s)
        p0 = self.diffeo.inverse_param(theta)
        p1 = self.diffeo.inverse_param(theta, 1)
        p2 = self.diffeo.inverse_param(theta, 2)
        return self._assemble(sig, p0, p1, p2)

    def _assemble(self, sig, p0, p1, p2):
        z = p0 - 1j * sig * p1
        z_theta = p1 - 1j * sig * p2
        z_s = -1j * self.side * self.beta * p1 * np.ones_like(sig)
        return z, z_theta, z_s

    def generator(self, s, m: int = 512):
        z, zt, _ = self.points(s, m)
        return z, zt

    def niceness(self, s_grid=None, m: int = 512) -> dict:
        """Measured constants of conditions (a)-(c) of a nicely tending family."""
        curve = self.diffeo.curve
        s_grid = np.logspace(-3, 0, 8) if s_grid is None else np.asarray(s_grid, dtype=float)
        gamma = curve.psi(curve.t_grid(m))
        hd, cb = [], 1.0
        wrong_side = False
        for s in s_grid:
            z, _, _ = self.points(s, m)
            _, _, d, side, _ = project_many(curve, z)
            wrong_side |= bool(np.any(side != self.side))
            back = polyline_distance(z, gamma).max()
            hd.append(max(float(d.max()), float(back)))
            cb = max(cb, float(np.max(d / s)), float(np.max(s / d)))
        return {
            "s": s_grid.tolist(),
            "hausdorff": hd,
            "C_distance": cb,
            "ahlfors": ahlfors_constant(self, s_grid=s_grid, m=m),
            "wrong_side": wrong_side,
        }


def nice_family(curve: JordanCurve, diffeo: CircleDiffeo, side, beta: float) -> CurveFamily:
    side = _parse_side(side)
    if beta <= 0:
        raise BetaTooLarge("beta must be positive")
    fam = CurveFamily(diffeo, side, float(beta))
    th = TWO_PI * np.arange(1024) / 1024
    p1 = diffeo.inverse_param(th, 1)
    p2 = diffeo.inverse_param(th, 2)
    sig = side * beta
    # Jacobian of (theta, s) -> gamma_s stays positive up to s = 1
    margin = np.real(np.conj(p1) * (p1 - 1j * sig * p2)) / np.abs(p1) ** 2
    if margin.min() <= 0.05:
        raise BetaTooLarge(f"offset map folds (Jacobian margin {margin.min():.3g})")
    reach = curve.reach_sides[0 if side == INSIDE else 1]
    offset = beta * np.abs(p1).max()
    if offset >= reach:
        raise BetaTooLarge(f"offset {offset:.3g} leaves the tube of width {reach:.3g}")
    z, _, _ = fam.points(1.0, 512)
    if _polyline_self_intersects(z):
        raise BetaTooLarge("gamma_1 self-intersects")
    return fam


def _parse_side(side) -> int:
    if side in (OUTSIDE, "outside", "out", "+", "exterior"):
        return OUTSIDE
    if side in (INSIDE, "inside", "in", "-", "interior"):
        return INSIDE
    raise ValueError(f"unknown side {side!r}")


# ------------------------------------------------------------ Ahlfors-David


def polyline_ball_length(z, x, r):
    """length(closed polyline z  intersect  closed disk B(x, r)), vectorised over x and r."""
    a = np.asarray(z, dtype=complex)
    b = np.roll(a, -1)
    d = b - a
    x = np.asarray(x, dtype=complex)[..., None]
    r = np.asarray(r, dtype=float)[..., None]
    f = a - x
    qa = np.abs(d) ** 2
    qb = 2 * np.real(np.conj(f) * d)
    qc = np.abs(f) ** 2 - r**2
    disc = qb**2 - 4 * qa * qc
    sq = np.sqrt(np.clip(disc, 0, None))
    u1 = (-qb - sq) / (2 * qa)
    u2 = (-qb + sq) / (2 * qa)
    lo = np.clip(u1, 0, 1)
    hi = np.clip(u2, 0, 1)
    seg = np.where(disc > 0, np.clip(hi - lo, 0, None), 0.0) * np.sqrt(qa)
    return seg.sum(axis=-1)


def polyline_distance(z, x):
    """Distance from each point x to the closed polyline z."""
    a = np.asarray(z, dtype=complex)
    d = np.roll(a, -1) - a
    x = np.asarray(x, dtype=complex)[..., None]
    u = np.clip(np.real(np.conj(d) * (x - a)) / np.abs(d) ** 2, 0, 1)
    return np.abs(a + u * d - x).min(axis=-1)


def ahlfors_constant(family: CurveFamily, s_grid=None, m: int = 512, n_centers: int = 64) -> float:
    """sup of length(gamma_s  intersect  B(x, r)) / r over sampled s, x and dyadic r.

    Radii run from half the diameter of gamma_s down by factors of 2 until
    they reach four vertex spacings.
    """
    s_grid = np.logspace(-3, 0, 8) if s_grid is None else np.asarray(s_grid, dtype=float)
    best = 0.0
    for s in s_grid:
        z, _, _ = family.points(s, m)
        best = max(best, ahlfors_polyline(z, n_centers))
    return best


def ahlfors_polyline(z, n_centers: int = 64) -> float:
    m = z.size
    seg = np.abs(np.roll(z, -1) - z)
    sub = z[:: max(1, m // 2048)]
    diam = float(np.abs(sub[:, None] - sub[None, :]).max())
    radii = []
    r = diam / 2
    while r >= 4 * seg.max():
        radii.append(r)
        r /= 2
    if not radii:
        return 0.0
    radii = np.array(radii)
    centers = z[:: max(1, m // n_centers)]
    L = polyline_ball_length(z, centers[:, None], radii[None, :])
    return float((L / radii[None, :]).max())


def _polyline_self_intersects(z) -> bool:
    a = np.asarray(z, dtype=complex)
    b = np.roll(a, -1)
    m = a.size

    def cross(u, v):
        return np.real(u) * np.imag(v) - np.imag(u) * np.real(v)

    d = b - a
    # segment i vs segment j, proper intersection test
    o1 = cross(d[:, None], a[None, :] - a[:, None])
    o2 = cross(d[:, None], b[None, :] - a[:, None])
    o3 = cross(d[None, :], a[:, None] - a[None, :])
    o4 = cross(d[None, :], b[:, None] - a[None, :])
    hit = (o1 * o2 < 0) & (o3 * o4 < 0)
    i, j = np.triu_indices(m, 2)
    keep = ~((i == 0) & (j == m - 1))
    return bool(hit[i[keep], j[keep]].any())
