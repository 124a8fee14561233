"""Dense complex linear algebra: spectra, resolvent norms, numerical radius.

Matrices are plain ``numpy`` arrays of dtype complex128.  Eigenvalues come
from LAPACK's Hessenberg + shifted-QR path (``scipy.linalg.schur`` /
``scipy.linalg.eig``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg as sla

from .errors import ConvergenceFailure, InputError, NotPSD, SingularResolvent

RESOLVENT_FLOOR = 1e-14
DEFECTIVE_TOL = 1e-10
NORMAL_TOL = 1e-10


def as_matrix(T) -> np.ndarray:
    """Validate and convert to a square, finite complex array."""
    A = np.array(T, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InputError(f"expected a non-empty square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise InputError("matrix has non-finite entries")
    return A


def opnorm(A) -> float:
    return float(np.linalg.norm(A, 2))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    diagonalizer_condition: float  # inf when non-diagonalizable
    diagonalizable: bool
    normality_defect: float
    eigenvectors: np.ndarray | None = None

    @property
    def n(self) -> int:
        return self.eigenvalues.size


def normality_defect(T) -> float:
    T = np.asarray(T, dtype=complex)
    H = T.conj().T
    return opnorm(H @ T - T @ H)


def spectrum(T, defective_tol: float = DEFECTIVE_TOL, normal_tol: float = NORMAL_TOL) -> Spectrum:
    """Eigenvalues plus a conditioning certificate for the diagonalizer.

    The diagonalizer condition is cond(V) with V the eigenvector matrix,
    columns scaled to unit length.  Normal matrices use the unitary Schur
    factor, so their condition is exactly 1 even with repeated eigenvalues.
    """
    T = as_matrix(T)
    scale = max(opnorm(T), 1.0)
    defect = normality_defect(T)
    try:
        R, Z = sla.schur(T, output="complex")
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(f"Schur iteration failed: {exc}") from exc
    evals = np.diag(R).copy()
    if defect <= normal_tol * scale**2:
        return Spectrum(evals, 1.0, True, defect, Z)
    try:
        w, V = sla.eig(T)
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise ConvergenceFailure(f"eigen iteration failed: {exc}") from exc
    V = V / np.linalg.norm(V, axis=0)
    sv = np.linalg.svd(V, compute_uv=False)
    if sv[-1] < defective_tol * sv[0]:
        return Spectrum(w, math.inf, False, defect, V)
    return Spectrum(w, float(sv[0] / sv[-1]), True, defect, V)


def resolvent_norm(T, lam: complex, floor: float | None = None) -> float:
    """||(T - lam I)^{-1}|| as 1 / smallest singular value of T - lam I."""
    T = as_matrix(T)
    return float(resolvent_norms(T, np.array([lam]), floor)[0])


def resolvent_norms(T, lams, floor: float | None = None) -> np.ndarray:
    """Vectorised resolvent_norm over an array of points."""
    T = np.asarray(T, dtype=complex)
    lams = np.asarray(lams, dtype=complex).ravel()
    n = T.shape[0]
    if floor is None:
        floor = RESOLVENT_FLOOR * opnorm(T)
    out = np.empty(lams.size)
    eye = np.eye(n)
    step = max(1, 4096 // max(1, n))
    for i in range(0, lams.size, step):
        batch = T[None] - lams[i:i + step, None, None] * eye
        smin = np.linalg.svd(batch, compute_uv=False)[:, -1]
        bad = smin <= floor
        if np.any(bad):
            lam = lams[i:i + step][bad][0]
            raise SingularResolvent(
                f"T - lam is numerically singular at lam={lam:.6g} "
                f"(sigma_min {smin[bad][0]:.3g} <= floor {floor:.3g})")
        out[i:i + step] = 1.0 / smin
    return out


def numerical_radius(T, theta_count: int = 64) -> float:
    """max over a uniform angle grid of lambda_max(Re(e^{i theta} T))."""
    if theta_count < 8:
        raise ValueError("theta_count must be >= 8")
    return float(numerical_radius_profile(T, theta_count).max())


def numerical_radius_profile(T, theta_count: int) -> np.ndarray:
    T = as_matrix(T)
    thetas = 2 * np.pi * np.arange(theta_count) / theta_count
    rot = np.exp(1j * thetas)[:, None, None] * T[None]
    herm = 0.5 * (rot + rot.conj().transpose(0, 2, 1))
    try:
        return np.linalg.eigvalsh(herm)[:, -1]
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc


def psd_sqrt(M, tol: float = 1e-10) -> np.ndarray:
    """Hermitian PSD square root via the spectral decomposition."""
    M = as_matrix(M)
    H = 0.5 * (M + M.conj().T)
    w, U = np.linalg.eigh(H)
    scale = max(1.0, float(np.abs(w).max()))
    if w.min() < -tol * scale:
        raise NotPSD(f"matrix has eigenvalue {w.min():.3g} < 0")
    w = np.clip(w, 0.0, None)
    return (U * np.sqrt(w)) @ U.conj().T


def hausdorff(a, b) -> float:
    """Hausdorff distance between two finite point sets in the plane."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    D = np.abs(a[:, None] - b[None, :])
    return float(max(D.min(axis=1).max(), D.min(axis=0).max()))


def dist_to_set(z, pts) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    pts = np.asarray(pts, dtype=complex).ravel()
    return np.abs(z[..., None] - pts).min(axis=-1)


# ---------------------------------------------------------------- exchange


def matrix_to_json(T) -> str:
    T = as_matrix(T)
    entries = [[float(v.real), float(v.imag)] for v in T.ravel()]
    return json.dumps({"n": T.shape[0], "entries": entries})


def matrix_from_json(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"matrix JSON: line {exc.lineno} col {exc.colno}: {exc.msg}") from exc
    if not isinstance(obj, dict) or "n" not in obj or "entries" not in obj:
        raise InputError('matrix JSON must be an object with "n" and "entries"')
    n = obj["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError(f'matrix JSON field "n": expected positive int, got {n!r}')
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != n * n:
        raise InputError(f'matrix JSON field "entries": expected {n * n} [re, im] pairs')
    vals = []
    for i, e in enumerate(entries):
        if not (isinstance(e, (list, tuple)) and len(e) == 2):
            raise InputError(f'matrix JSON field "entries"[{i}]: expected [re, im], got {e!r}')
        try:
            vals.append(complex(float(e[0]), float(e[1])))
        except (TypeError, ValueError) as exc:
            raise InputError(f'matrix JSON field "entries"[{i}]: {exc}') from exc
    return as_matrix(np.array(vals).reshape(n, n))


def _fmt_cell(v: complex) -> str:
    im = repr(float(v.imag))
    sign = "" if im.startswith("-") else "+"
    return f"{float(v.real)!r}{sign}{im}i"


def _parse_cell(cell: str, where: str) -> complex:
    s = cell.strip().replace(" ", "")
    if s.endswith("i"):
        s = s[:-1] + "j"
    try:
        return complex(s)
    except ValueError as exc:
        raise InputError(f"matrix CSV {where}: cannot parse {cell!r}") from exc


def matrix_to_csv(T) -> str:
    T = as_matrix(T)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for row in T:
        w.writerow([_fmt_cell(v) for v in row])
    return buf.getvalue()


def matrix_from_csv(text: str) -> np.ndarray:
    rows = [r for r in csv.reader(io.StringIO(text)) if r]
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for i, r in enumerate(rows):
        if len(r) != n:
            raise InputError(f"matrix CSV line {i + 1}: expected {n} cells, got {len(r)}")
        for j, cell in enumerate(r):
            out[i, j] = _parse_cell(cell, f"line {i + 1} col {j + 1}")
    return as_matrix(out)


def load_matrix(path) -> np.ndarray:
    path = str(path)
    with open(path) as fh:
        text = fh.read()
    if path.endswith(".csv"):
        return matrix_from_csv(text)
    return matrix_from_json(text)


def save_matrix(T, path) -> None:
    path = str(path)
    text = matrix_to_csv(T) if path.endswith(".csv") else matrix_to_json(T)
    with open(path, "w") as fh:
        fh.write(text)
