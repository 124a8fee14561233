"""Trigonometric series helpers shared by curves and curve functions."""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 21  # max entries of a (points x modes) block


def fft_modes(m: int) -> np.ndarray:
    return np.fft.fftfreq(m, d=1.0 / m).astype(int)


def spectral_derivative(values: np.ndarray, order: int = 1) -> np.ndarray:
    """d^order/dt^order of periodic samples on the uniform grid 2*pi*j/m."""
    values = np.asarray(values, dtype=complex)
    m = values.shape[-1]
    k = fft_modes(m).astype(float)
    if m % 2 == 0 and order % 2 == 1:
        k[m // 2] = 0.0
    return np.fft.ifft(np.fft.fft(values, axis=-1) * (1j * k) ** order, axis=-1)


class TrigSeries:
    """The periodic function t -> sum_k c_k exp(i k t)."""

    def __init__(self, ks, cs):
        ks = np.asarray(ks, dtype=int)
        cs = np.asarray(cs, dtype=complex)
        if ks.shape != cs.shape or ks.ndim != 1:
            raise ValueError("ks and cs must be 1-d arrays of equal length")
        order = np.argsort(ks, kind="stable")
        self.ks = ks[order]
        self.cs = cs[order]

    @classmethod
    def from_samples(cls, values, rel_cut: float = 0.0) -> "TrigSeries":
        """Trigonometric interpolant of samples at t_j = 2*pi*j/m.

        The Nyquist mode of an even-length grid is split evenly between
        +m/2 and -m/2 so the interpolant of real data stays real.
        Modes below ``rel_cut * max|c_k|`` are dropped.
        """
        values = np.asarray(values, dtype=complex)
        m = values.size
        c = np.fft.fft(values) / m
        k = fft_modes(m)
        if m % 2 == 0:
            nyq = m // 2
            c = np.append(c, c[nyq] / 2)
            c[nyq] /= 2
            k = np.append(k, nyq)
            k[m // 2] = -nyq
        if rel_cut > 0:
            keep = np.abs(c) > rel_cut * np.abs(c).max()
            k, c = k[keep], c[keep]
        return cls(k, c)

    @property
    def degree(self) -> int:
        return int(np.abs(self.ks).max()) if self.ks.size else 0

    def derivative(self, order: int = 1) -> "TrigSeries":
        return TrigSeries(self.ks, self.cs * (1j * self.ks) ** order)

    def __call__(self, t, deriv: int = 0):
        t = np.asarray(t, dtype=float)
        shape = t.shape
        flat = t.ravel()
        c = self.cs * (1j * self.ks) ** deriv if deriv else self.cs
        out = np.empty(flat.size, dtype=complex)
        step = max(1, _CHUNK // max(1, self.ks.size))
        for start in range(0, flat.size, step):
            tt = flat[start:start + step]
            out[start:start + step] = np.exp(1j * np.outer(tt, self.ks)) @ c
        return out.reshape(shape)

    def sample(self, m: int, deriv: int = 0) -> np.ndarray:
        """Values on the uniform grid of m points (exact when m > 2*degree)."""
        if m <= 2 * self.degree:
            return self(2 * np.pi * np.arange(m) / m, deriv)
        c = self.cs * (1j * self.ks) ** deriv if deriv else self.cs
        buf = np.zeros(m, dtype=complex)
        np.add.at(buf, self.ks % m, c)
        return np.fft.ifft(buf) * m
