"""Pseudoanalytic extension of smooth boundary data by a cut-off first-order jet.

For f on the curve with complex tangential derivative g,

    F(z) = chi(d(z)/delta) * [f(p(z)) + g(p(z)) (z - p(z))],

where p is the nearest-point projection, d = |z - p| and chi a smoothstep
cut-off.  dbar F vanishes on the curve and grows like dist near it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._fourier import TrigSeries, spectral_derivative
from .curves import JordanCurve, project_many
from .errors import TubeTooWide

DEFAULT_ALPHA = 0.9


@dataclass(frozen=True, eq=False)
class CurveFunction:
    """Samples of f(psi(t)) and g(t) = (d/dt f(psi(t))) / psi'(t) on t_j = 2*pi*j/m."""

    curve: JordanCurve
    values: np.ndarray
    complex_derivative: np.ndarray

    @classmethod
    def from_samples(cls, curve: JordanCurve, values, complex_derivative=None) -> "CurveFunction":
        values = np.asarray(values, dtype=complex)
        if complex_derivative is None:
            t = curve.t_grid(values.size)
            complex_derivative = spectral_derivative(values) / curve.dpsi(t)
        return cls(curve, values, np.asarray(complex_derivative, dtype=complex))

    @classmethod
    def from_callable(cls, curve: JordanCurve, f, m: int = 256) -> "CurveFunction":
        t = curve.t_grid(m)
        return cls.from_samples(curve, f(curve.psi(t)))

    @property
    def m(self) -> int:
        return self.values.size

    def _series(self):
        # cached on first use; frozen dataclass so go through __dict__
        cache = self.__dict__.get("_cache")
        if cache is None:
            fs = TrigSeries.from_samples(self.values)
            gs = TrigSeries.from_samples(self.complex_derivative)
            cache = (fs, fs.derivative(), gs, gs.derivative())
            self.__dict__["_cache"] = cache
        return cache

    def value_at(self, t):
        return self._series()[0](t)

    def dt_at(self, t):
        return self._series()[1](t)

    def deriv_at(self, t):
        return self._series()[2](t)

    def deriv_dt_at(self, t):
        return self._series()[3](t)

    def holder_norm(self, alpha: float = DEFAULT_ALPHA, m: int = 512) -> float:
        """Sample estimate of ||f||_{C^{1+alpha}} with respect to psi."""
        t = self.curve.t_grid(m)
        h = self.dt_at(t)
        z = np.exp(1j * t)
        iu = np.triu_indices(m, 1)
        hold = (np.abs(h[:, None] - h[None, :])[iu] / np.abs(z[:, None] - z[None, :])[iu] ** alpha).max()
        return float(np.abs(self.value_at(t)).max() + np.abs(h).max() + hold)

    def __add__(self, other: "CurveFunction") -> "CurveFunction":
        return CurveFunction(self.curve, self.values + other.values,
                             self.complex_derivative + other.complex_derivative)

    def __rmul__(self, a: complex) -> "CurveFunction":
        return CurveFunction(self.curve, a * self.values, a * self.complex_derivative)


def cutoff(x):
    """1 on [0, 1/2], 0 on [1, inf), quintic smoothstep in between."""
    x = np.asarray(x, dtype=float)
    u = np.clip(2 * x - 1, 0.0, 1.0)
    return 1.0 - u**3 * (10 - 15 * u + 6 * u**2)


def cutoff_derivative(x):
    x = np.asarray(x, dtype=float)
    u = np.clip(2 * x - 1, 0.0, 1.0)
    return -2.0 * 30 * u**2 * (1 - u) ** 2


@dataclass(frozen=True, eq=False)
class PseudoExtension:
    curve: JordanCurve
    func: CurveFunction
    cutoff_width: float
    holder_exponent: float = DEFAULT_ALPHA

    def evaluate(self, z):
        return self.evaluate_with_dbar(z, want_dbar=False)[0]

    def dbar(self, z):
        """dF/dz-bar by the chain rule through the projection parameter t(z)."""
        return self.evaluate_with_dbar(z)[1]

    def evaluate_with_dbar(self, z, want_dbar: bool = True):
        z = np.asarray(z, dtype=complex)
        t, p, d, _, _ = project_many(self.curve, z)
        delta = self.cutoff_width
        x = d / delta
        inside = x < 1.0
        F = np.zeros(z.shape, dtype=complex)
        dF = np.zeros(z.shape, dtype=complex) if want_dbar else None
        if not inside.any():
            return F, dF
        ti, zi, pi, di, xi = t[inside], z[inside], p[inside], d[inside], x[inside]
        f = self.func.value_at(ti)
        g = self.func.deriv_at(ti)
        jet = f + g * (zi - pi)
        chi = cutoff(xi)
        F[inside] = chi * jet
        if want_dbar:
            d1 = self.curve.dpsi(ti)
            d2 = self.curve.d2psi(ti)
            w = zi - pi
            # t(z) solves Re(conj(psi'(t)) (z - psi(t))) = 0
            dt_dzbar = 0.5 * d1 / (np.abs(d1) ** 2 - np.real(np.conj(d2) * w))
            djet = (self.func.dt_at(ti) + self.func.deriv_dt_at(ti) * w - g * d1) * dt_dzbar
            dchi = cutoff_derivative(xi) / delta
            safe = np.where(di > 0, di, 1.0)
            dd_dzbar = np.where(di > 0, 0.5 * w / safe, 0.0)
            dF[inside] = dchi * dd_dzbar * jet + chi * djet
        return F, dF

    def dbar_fd(self, z, h=None):
        """Central differences, step min(1e-6, dist/100) unless h is given."""
        z = np.asarray(z, dtype=complex)
        if h is None:
            d = project_many(self.curve, z)[2]
            h = np.minimum(1e-6, np.maximum(d / 100, 1e-9))
        h = np.asarray(h, dtype=float)
        dx = self.evaluate(z + h) - self.evaluate(z - h)
        dy = self.evaluate(z + 1j * h) - self.evaluate(z - 1j * h)
        return (dx + 1j * dy) / (4 * h)


def jet_extension(curve: JordanCurve, f: CurveFunction, delta: float | None = None,
                  alpha: float = DEFAULT_ALPHA) -> PseudoExtension:
    if not 0 < alpha < 1:
        raise ValueError("alpha must lie in (0, 1)")
    reach = curve.reach
    if delta is None:
        delta = 0.4 * reach
    if delta > 0.5 * reach:
        raise TubeTooWide(f"delta={delta:.4g} exceeds half the measured reach {reach:.4g}")
    if f.curve is not curve:
        raise ValueError("curve function lives on a different curve")
    return PseudoExtension(curve, f, float(delta), float(alpha))


@dataclass(frozen=True)
class ExtensionSampling:
    n_t: int = 64
    n_d: int = 12
    d_min_frac: float = 1e-4  # smallest distance as a fraction of delta
    region: str = "half"  # "half": dist <= delta/2 (chi == 1); "full": whole tube

    def refined(self) -> "ExtensionSampling":
        return ExtensionSampling(2 * self.n_t, 2 * self.n_d, self.d_min_frac, self.region)


def extension_samples(ext: PseudoExtension, curve: JordanCurve, spec: ExtensionSampling = ExtensionSampling()):
    """Sampled (dist, |dbar F|) pairs on both sides of the curve."""
    delta = ext.cutoff_width
    d_max = 0.5 * delta if spec.region == "half" else 0.999 * delta
    ds = np.geomspace(spec.d_min_frac * delta, d_max, spec.n_d)
    t = curve.t_grid(spec.n_t)
    base = curve.psi(t)
    nrm = curve.outward_normal(t)
    z = np.concatenate([(base[None, :] + sgn * ds[:, None] * nrm[None, :]).ravel() for sgn in (1, -1)])
    dist = project_many(curve, z)[2]
    return dist, np.abs(ext.dbar(z))


def verify_extension(ext: PseudoExtension, curve: JordanCurve,
                     spec: ExtensionSampling = ExtensionSampling()) -> float:
    """sup |dbar F(z)| / dist(z, curve)^alpha over the sampled tube."""
    dist, db = extension_samples(ext, curve, spec)
    return float((db / dist**ext.holder_exponent).max())
