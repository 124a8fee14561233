import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from scl.errors import InputError, NotPSD, SingularResolvent
from scl.linalg import (hausdorff, matrix_from_csv, matrix_from_json, matrix_to_csv, matrix_to_json,
                        numerical_radius, psd_sqrt, resolvent_norm, resolvent_norms, spectrum)

finite = st.floats(-10, 10, allow_nan=False, allow_infinity=False)


def test_normal_spectrum_has_unit_condition():
    T = np.diag([1, 1j, -1, -1j, 1])  # repeated eigenvalue is fine for normal T
    sp = spectrum(T)
    assert sp.diagonalizer_condition == 1.0
    assert sp.diagonalizable
    assert np.allclose(np.sort_complex(sp.eigenvalues), np.sort_complex(np.diag(T)))


def test_jordan_block_is_not_diagonalizable():
    sp = spectrum(np.array([[1.0, 1.0], [0.0, 1.0]]))
    assert not sp.diagonalizable
    assert sp.diagonalizer_condition == np.inf


def test_similar_condition_bounded_by_kappa(rng):
    n = 6
    S = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    N = np.diag(np.exp(2j * np.pi * np.arange(n) / n))
    sp = spectrum(S @ N @ np.linalg.inv(S))
    assert 1.0 <= sp.diagonalizer_condition <= np.linalg.cond(S) * n


def test_resolvent_norm_of_diagonal_matches_distance():
    ev = np.array([1, 1j, -1, -1j])
    for lam in (0.3, 1.5 + 0.2j, -0.1j):
        assert resolvent_norm(np.diag(ev), lam) == pytest.approx(1 / np.abs(ev - lam).min(), rel=1e-13)


def test_resolvent_norm_jordan_closed_form():
    # (J - l)^{-1} = -[[1/d, 1/d^2], [0, 1/d]] with d = l - 1
    d = 1e-2
    J = np.array([[1.0, 1.0], [0.0, 1.0]])
    M = -np.array([[1 / d, 1 / d**2], [0, 1 / d]])
    assert resolvent_norm(J, 1 + d) == pytest.approx(np.linalg.norm(M, 2), rel=1e-12)


def test_singular_resolvent_raises():
    with pytest.raises(SingularResolvent):
        resolvent_norm(np.diag([1.0, 2.0]), 2.0)


def test_resolvent_norms_batch_agrees(rng):
    T = rng.standard_normal((5, 5))
    lams = rng.standard_normal(30) * 3 + 1j * rng.standard_normal(30) * 3
    batch = resolvent_norms(T, lams)
    single = [resolvent_norm(T, l) for l in lams]
    assert np.allclose(batch, single, rtol=1e-12)


def test_numerical_radius_nilpotent():
    assert numerical_radius(np.array([[0.0, 2.0], [0.0, 0.0]]), 64) == pytest.approx(1.0, abs=1e-12)


@given(arrays(float, (4, 4), elements=finite))
def test_numerical_radius_between_bounds(A):
    w = numerical_radius(A, 128)
    nrm = np.linalg.norm(A, 2)
    rho = np.abs(np.linalg.eigvals(A)).max()
    # the theta grid can only undershoot the true radius, by at most a factor cos(pi/128)
    assert w <= nrm + 1e-9
    assert w >= np.cos(np.pi / 128) * max(rho, nrm / 2) - 1e-9


def test_numerical_radius_rejects_coarse_grid():
    with pytest.raises(ValueError):
        numerical_radius(np.eye(2), 4)


@given(arrays(float, (5, 5), elements=finite))
def test_psd_sqrt_squares_back(B):
    M = B @ B.T
    R = psd_sqrt(M)
    assert np.allclose(R @ R, M, atol=1e-8 * max(1.0, np.abs(M).max()))
    assert np.allclose(R, R.conj().T)


def test_psd_sqrt_rejects_indefinite():
    with pytest.raises(NotPSD):
        psd_sqrt(np.diag([1.0, -0.5]))


def test_hausdorff_simple():
    assert hausdorff([0, 1], [0, 1, 3]) == pytest.approx(2.0)
    assert hausdorff([1j], [1j]) == 0.0


@given(arrays(complex, (3, 3), elements=st.complex_numbers(max_magnitude=1e6, allow_nan=False,
                                                              allow_infinity=False)))
def test_matrix_exchange_round_trips(A):
    assert np.array_equal(matrix_from_json(matrix_to_json(A)), A)
    assert np.array_equal(matrix_from_csv(matrix_to_csv(A)), A)


def test_matrix_json_errors_carry_field_context():
    with pytest.raises(InputError, match='"entries"'):
        matrix_from_json(json.dumps({"n": 2, "entries": [[1, 0]] * 3}))
    with pytest.raises(InputError, match="line 1"):
        matrix_from_json("{bad")


def test_matrix_csv_errors_carry_line_context():
    with pytest.raises(InputError, match="line 2 col 1"):
        matrix_from_csv("1+0i,0+0i\nabc,1+0i\n")


def test_non_square_rejected():
    with pytest.raises(InputError):
        spectrum(np.ones((2, 3)))
