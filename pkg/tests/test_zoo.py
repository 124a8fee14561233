import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scl.curves import circle, ellipse
from scl.errors import BadParams, DomainError
from scl.linalg import hausdorff, spectrum
from scl.zoo import (TransferMatrix, WeightedShiftSpec, make_operator, real_part_point_eigenvalue,
                     recursion_y_minus1, shift_f, shift_real_part_top_eig, transfer_f, transfer_product,
                     u_pm)

R2 = math.sqrt(2)


def test_u_pm_exact():
    assert u_pm(2.5) == (2.0, 0.5)
    with pytest.raises(DomainError):
        u_pm(2.0)


@given(st.floats(2.0 + 1e-9, 1e3))
def test_u_pm_vieta(lam):
    up, um = u_pm(lam)
    assert up >= um > 0
    assert up * um == pytest.approx(1, abs=1e-14)
    assert up + um == pytest.approx(lam, rel=1e-14)
    for u in (up, um):
        assert abs(u * u - lam * u + 1) <= 1e-13 * max(1.0, lam * u)


def test_u_pm_near_two_no_cancellation():
    from decimal import Decimal, getcontext
    getcontext().prec = 50
    lam = 2 + 1e-8
    L = Decimal(lam)
    ref = (L + (L * L - 4).sqrt()) / 2
    up, um = u_pm(lam)
    assert up == pytest.approx(float(ref), rel=1e-14)
    assert um == pytest.approx(float(1 / ref), rel=1e-14)


def test_shift_f_closed_values():
    assert shift_f(2.5, R2, R2) == pytest.approx(12.5, rel=1e-14)
    assert shift_f(2.5, 1, 1) == pytest.approx(22.5, rel=1e-14)
    up = (3 + math.sqrt(5)) / 2
    assert shift_f(3, 1, 1) == pytest.approx(3 * (7 * up + 1 / up), rel=1e-14)
    lam = np.linspace(2, 10, 51)[1:]
    assert min(shift_f(l, R2, R2) for l in lam) > 0


def test_transfer_matrix_steps():
    M = TransferMatrix.step(1.5, 0.7, 2.3)
    assert M.det == pytest.approx(1.5 * 0.7)
    P = transfer_product(0.0, 1.3, 0.8)
    assert np.all(np.isfinite(P.entries))
    assert P.det == pytest.approx(1.3 * 0.8 * 1.3 * 0.8)


@settings(max_examples=50)
@given(st.floats(2.01, 6), st.floats(0.2, 2.0), st.floats(0.2, 2.0))
def test_mobius_action_matches_recursion(lam, a, b):
    _, um = u_pm(lam)
    y = transfer_product(lam, a, b).act(um)
    assert y == pytest.approx(recursion_y_minus1(lam, a, b), rel=1e-10)


@settings(max_examples=50)
@given(st.floats(2.01, 6), st.floats(0.2, 2.0), st.floats(0.2, 2.0))
def test_eigen_condition_gap_to_closed_form(lam, a, b):
    # the eigen-condition and the displayed closed form differ by 2 lam^2 - (a^2 + b^2)
    gap = transfer_f(lam, a, b) - shift_f(lam, a, b)
    assert gap == pytest.approx(-(2 * lam**2 - (a * a + b * b)), rel=1e-9, abs=1e-9)


def test_point_eigenvalue_of_infinite_real_part():
    lam = real_part_point_eigenvalue(R2, R2)
    assert lam == pytest.approx(4 / math.sqrt(3), rel=1e-12)
    assert real_part_point_eigenvalue(1.0, 1.0) is None
    # truncations converge to it from below (interlacing)
    tops = [shift_real_part_top_eig(WeightedShiftSpec(R2, R2, n)) for n in (21, 101, 401)]
    assert tops[0] <= tops[1] <= tops[2] <= lam + 1e-12
    assert tops[2] == pytest.approx(lam, abs=1e-10)


def test_free_jacobi_top_eigenvalue():
    assert shift_real_part_top_eig(WeightedShiftSpec(1, 1, 101)) == pytest.approx(2 * math.cos(math.pi / 102), abs=1e-12)


def test_shift_weights_and_columns():
    spec = WeightedShiftSpec(R2, R2, 7)
    assert np.allclose(spec.weights(), [1, 1, R2, R2, 1, 1])
    T = WeightedShiftSpec(1, 1, 9).matrix()
    assert np.allclose(np.linalg.norm(T[:, :-1], axis=0), 1)
    assert not WeightedShiftSpec(1, 1).in_regime and WeightedShiftSpec(R2, R2).in_regime
    with pytest.raises(BadParams):
        WeightedShiftSpec(1, 1, 8)
    with pytest.raises(BadParams):
        WeightedShiftSpec(-1, 1)


@pytest.mark.parametrize("kappa", [2.0, 10.0, 20.0])
def test_similar_operator_spectrum_and_kappa(kappa):
    c = ellipse(1.2, 1.0)
    N = make_operator("normal", c, 12, {"spacing": "random"}, seed=5)
    T = make_operator("similar", c, 12, {"kappa": kappa}, seed=5)
    assert hausdorff(np.linalg.eigvals(T), np.diag(N)) <= 1e-8
    assert spectrum(T).diagonalizer_condition == pytest.approx(kappa, rel=0.1)


def test_make_operator_determinism_and_errors():
    c = circle()
    a = make_operator("similar", c, 6, {"kappa": 5}, seed=1)
    b = make_operator("similar", c, 6, {"kappa": 5}, seed=1)
    assert np.array_equal(a, b)
    J = make_operator("jordan", c, 3, {"t0": math.pi})
    assert np.allclose(np.diag(J), -1) and np.allclose(np.diag(J, 1), 1)
    for kind, params in [("similar", {}), ("shift", {"alpha": 1}), ("bogus", {})]:
        with pytest.raises(BadParams):
            make_operator(kind, c, 5, params)
    with pytest.raises(BadParams):
        make_operator("normal", None, 5)
