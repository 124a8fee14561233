import json

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy.optimize import minimize_scalar

from scl.curves import (EXTERIOR, INTERIOR, INSIDE, OUTSIDE, ahlfors_polyline, blob, circle,
                        curve_from_json, ellipse, nice_family, parse_curve, project, project_many,
                        radial_diffeo, tube_points, winding_number)
from scl.errors import AmbiguousProjection, BadCurve, BetaTooLarge, InputError, NotStarShaped


def brute_projection(curve, z, m=4096):
    """Grid search followed by a bounded scalar minimisation around the best node."""
    t = curve.t_grid(m)
    k = np.abs(curve.psi(t) - z).argmin()
    h = 2 * np.pi / m
    res = minimize_scalar(lambda s: abs(curve.psi(np.array([s]))[0] - z), bounds=(t[k] - h, t[k] + h),
                          method="bounded", options={"xatol": 1e-14})
    return res.fun


def test_clockwise_input_is_reoriented():
    c = JordanCurve_cw = circle()
    cw = type(c).from_coeffs({-1: 1.0})
    assert winding_number(cw, np.array([0.0]))[0] == 1
    assert np.allclose(cw.psi(np.array([0.3])), np.exp(0.3j))
    assert JordanCurve_cw.length == pytest.approx(2 * np.pi, rel=1e-12)


def test_self_intersecting_rejected():
    with pytest.raises(BadCurve):
        type(circle()).from_coeffs({1: 1.0, 2: 1.0})


@pytest.mark.parametrize("curve", [circle(), ellipse(1.2, 1.0), blob(3)], ids=["circle", "ellipse", "blob"])
def test_projection_matches_brute_force(curve, rng):
    z = rng.uniform(-1.5, 1.5, 40) + 1j * rng.uniform(-1.5, 1.5, 40)
    z = z[np.abs(z - curve.center) > 0.2]
    d = project_many(curve, z)[2]
    ref = np.array([brute_projection(curve, zz) for zz in z])
    assert np.allclose(d, ref, atol=1e-10)


def test_projection_side_agrees_with_winding(rng):
    c = blob(7)
    z = rng.uniform(-1.4, 1.4, 200) + 1j * rng.uniform(-1.4, 1.4, 200)
    side = project_many(c, z)[3]
    w = winding_number(c, z)
    far = project_many(c, z)[2] > 1e-6
    assert np.all((side[far] == INTERIOR) == (w[far] == 1))


def test_circle_center_is_ambiguous():
    p = project(circle(), 0.0)
    assert p.ambiguous
    with pytest.raises(AmbiguousProjection) as info:
        project(circle(), 0.0, strict=True)
    assert info.value.projection is not None


def test_ellipse_projection_tie_break_is_deterministic():
    c = ellipse(2.0, 1.0)
    a = project(c, 0.1)
    b = project(c, 0.1)
    assert a == b


@pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
def test_circle_reach(r):
    rin, rout = circle(r).reach_sides
    assert rin == pytest.approx(r, rel=1e-6)
    assert rout == np.inf


def test_ellipse_reach_is_min_curvature_radius():
    a, b = 1.2, 1.0
    assert ellipse(a, b).reach == pytest.approx(b**2 / a, rel=1e-6)


def test_curve_json_round_trip():
    c = blob(2)
    c2 = curve_from_json(c.to_json())
    t = c.t_grid(64)
    assert np.allclose(c.psi(t), c2.psi(t), atol=1e-15)


def test_parse_curve_errors():
    with pytest.raises(InputError):
        parse_curve("ellipse:1")
    with pytest.raises(InputError):
        parse_curve("ellipse:a:b")
    with pytest.raises(InputError, match="line 1"):
        curve_from_json("{oops")


def test_radial_diffeo_circle_is_identity():
    d = radial_diffeo(circle())
    t = np.linspace(0, 6, 17)
    assert np.allclose(d.boundary_values(t), np.exp(1j * t))
    assert np.allclose(d.tangential_derivative(t), 1.0)
    assert np.allclose(d.bilipschitz_constants(), (1.0, 1.0), atol=1e-3)


@given(st.integers(0, 50))
def test_radial_diffeo_inverse_round_trip(seed):
    c = blob(seed)
    d = radial_diffeo(c)
    t = c.t_grid(37)
    z = c.psi(t)
    assert np.allclose(d.inverse(d.boundary_values(t)), z, atol=1e-10)


def test_not_star_shaped_center():
    with pytest.raises(NotStarShaped):
        radial_diffeo(circle(), center=5.0)


def test_circle_family_is_concentric():
    d = radial_diffeo(circle())
    fam = nice_family(circle(), d, OUTSIDE, 1.0)
    z, zt, zs = fam.points(0.3, 64)
    assert np.allclose(np.abs(z), 1.3)
    assert np.allclose(zs, z / np.abs(z))


@pytest.mark.parametrize("side", [OUTSIDE, INSIDE])
def test_ellipse_family_tends_nicely(side):
    c = ellipse(1.2, 1.0)
    fam = nice_family(c, radial_diffeo(c), side, 0.2)
    info = fam.niceness()
    assert not info["wrong_side"]
    assert info["hausdorff"][0] < 1e-3 and info["hausdorff"] == sorted(info["hausdorff"])
    assert info["C_distance"] < 10
    assert info["ahlfors"] < 4


def test_family_beta_too_large():
    c = circle()
    with pytest.raises(BetaTooLarge):
        nice_family(c, radial_diffeo(c), INSIDE, 1.0)


def test_ahlfors_constant_of_circle():
    z = np.exp(2j * np.pi * np.arange(4096) / 4096)
    # the largest dyadic radius is the radius itself: arc = 4 arcsin(1/2) r
    assert ahlfors_polyline(z) == pytest.approx(4 * np.arcsin(0.5), rel=1e-4)


def test_tube_points_distances_exact():
    c = ellipse(1.2, 1.0)
    z, d, side = tube_points(c, 16, [1e-3, 0.1])
    _, _, dd, ss, _ = project_many(c, z)
    assert np.allclose(dd, d, rtol=1e-9)
    assert np.array_equal(ss, side)
    assert set(side) == {INTERIOR, EXTERIOR}
