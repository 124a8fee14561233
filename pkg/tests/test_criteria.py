import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from scl.criteria import (ProfileGrid, char_fn, cross_family_stability, default_families, defect_data,
                          disk_grid, mean_square, meansquare_implies_pointwise_check, naboko_check,
                          nf_criterion, power_bounded_check, resolvent_profile, rho_tests,
                          similarity_diagnostic, small_s_slope)
from scl.curves import EXTERIOR, circle, ellipse
from scl.errors import NotAContraction, SpectrumOffCurve
from scl.zoo import make_operator

U4 = np.diag([1, 1j, -1, -1j]).astype(complex)
J2 = np.array([[1, 1], [0, 1]], dtype=complex)


def test_small_s_slope_recovers_power():
    s = np.logspace(-3, 0, 12)
    # exponent of growth in 1/s
    assert small_s_slope(s, 3 * s**-1.5) == pytest.approx(1.5)


@pytest.mark.parametrize("curve", [circle(), ellipse(1.2, 1.0)])
def test_normal_profile_is_exactly_one(curve):
    T = make_operator("normal", curve, 10, {"spacing": "random"}, seed=2)
    p = resolvent_profile(T, curve)
    assert p.identity_defect <= 1e-10
    assert p.stampfli_candidate
    assert abs(p.growth_exponent) <= 1e-6


def test_profile_on_circle_has_C_one():
    p = resolvent_profile(U4, circle())
    assert p.C_inside == pytest.approx(1, abs=1e-8)
    assert p.C_outside == pytest.approx(1, abs=1e-8)


def test_jordan_profile_grows():
    p = resolvent_profile(J2, circle(), ProfileGrid(n_levels=14))
    d = p.levels[-1]
    assert p.level_sup()[-1] >= 0.5 / d
    assert p.growth_exponent >= 0.8
    assert not p.stampfli_candidate


def test_profile_rejects_spectrum_off_curve():
    with pytest.raises(SpectrumOffCurve):
        resolvent_profile(np.diag([0.3, 1.0]), circle())


def test_unitary_mean_square_closed_form():
    fo, _ = default_families(circle())
    rep = mean_square(U4, fo, probes=np.eye(4))
    for s, v in zip(rep.s, rep.per_s):
        # one probe e_k: \int_{|l| = r} |l - e^{i t}|^-2 |dl| = 2 pi r / (r^2 - 1)
        r = 1 + float(fo.sigma(s))
        assert v == pytest.approx(s * 2 * math.pi * r / (r * r - 1), rel=1e-4)
    assert abs(rep.growth_exponent) <= 0.02
    assert rep.bounded
    assert rep.fitted_C >= max(rep.per_s)
    assert all(v > 0 for v in rep.per_s)


def test_jordan_mean_square_fails():
    fo, fi = default_families(circle())
    rep = mean_square(J2, fo)
    assert rep.growth_exponent >= 0.8 and not rep.bounded
    assert not naboko_check(J2, fo, fi)["pass"]
    assert meansquare_implies_pointwise_check(J2, fo, report=rep) == {
        "applicable": False, "reason": "mean-square bound not satisfied",
        "growth_exponent": rep.growth_exponent}


def test_naboko_passes_for_unitary_and_link_is_bounded():
    fo, fi = default_families(circle())
    assert naboko_check(U4, fo, fi)["pass"]
    link = meansquare_implies_pointwise_check(U4, fo)
    assert link["applicable"] and math.isfinite(link["link_constant"])
    assert abs(link["link_growth"]) <= 0.1


def test_cross_family_stability_is_finite():
    c = ellipse(1.2, 1.0)
    T = make_operator("similar", c, 6, {"kappa": 4}, seed=3)
    fa, _ = default_families(c)
    fb, _ = default_families(c, beta=0.5 * fa.beta)
    ratio = cross_family_stability(T, fa, fb)
    assert 0.2 < ratio < 5


def test_char_fn_scalar_mobius():
    t = 0.5
    for lam in disk_grid(0.1, 4, 5):
        th = char_fn(np.array([[t]]), lam)
        assert th[0, 0] == pytest.approx((lam - t) / (1 - t * lam), abs=1e-12)
    assert char_fn(np.array([[0.5]]), 0.25)[0, 0] == pytest.approx(-2 / 7, abs=1e-14)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 8))
def test_char_fn_at_zero_is_minus_T(seed, n):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    T = 0.9 * A / np.linalg.norm(A, 2)
    d = defect_data(T)
    assert np.allclose(char_fn(T, 0, d), -(d.E_star.conj().T @ T @ d.E), atol=1e-12)


def test_nf_criterion_cases():
    assert nf_criterion(U4).unitary
    assert nf_criterion(np.array([[0.5]])).sup_inv_norm == math.inf
    with pytest.raises(NotAContraction):
        nf_criterion(2 * U4)
    # a strict contraction with eigenvalues bounded away from the disk has finite sup
    T = np.array([[0.0, 0.5], [0.0, 0.0]])
    rep = nf_criterion(T)
    assert not rep.invertible_everywhere  # eigenvalue 0 is inside the disk


def test_rho_tests():
    assert rho_tests(U4).two_contraction
    assert rho_tests(np.array([[0, 2], [0, 0]])).margin == pytest.approx(0, abs=1e-12)
    r = rho_tests(1.5 * np.eye(2))
    assert r.margin == pytest.approx(-0.5) and not r.two_contraction
    assert rho_tests(U4).band_ok
    with pytest.raises(ValueError):
        rho_tests(U4, theta_count=4)


def test_power_bounded():
    assert power_bounded_check(U4, two_sided=True).bounded
    rep = power_bounded_check(J2, n_max=200)
    assert not rep.bounded and rep.growth_exponent == pytest.approx(1, abs=0.05)
    assert power_bounded_check(2 * U4).aborted


def test_similarity_verdicts():
    c = ellipse(1.2, 1.0)
    assert similarity_diagnostic(U4).verdict == "normal"
    assert similarity_diagnostic(J2).verdict == "non-diagonalizable"
    assert similarity_diagnostic(make_operator("similar", c, 6, {"kappa": 10}, seed=0)).verdict == "similar-to-normal"
