import math

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from desitter_rotor import (Linear, Power, RadiusFunction, RadiusMode, SurfaceFamily,
                            log_radius_derivative, radius, radius_closed_form, radius_quadrature)
from desitter_rotor.errors import DegenerateAt, DegenerateRelation, DomainError, SingularPath, UnsupportedSpec
from desitter_rotor.profile import radius_base, radius_exponent, radius_local
from desitter_rotor.relations import Custom

F = SurfaceFamily
Q = RadiusMode.QUADRATURE
DELTA_FAMILIES = [F.SPHERICAL, F.HYPERBOLIC_FIRST, F.PARABOLIC]


@pytest.mark.parametrize("fam, eps, rel, c, lam, expected", [
    (F.SPHERICAL, 1, Linear(-1, 2), 1.0, 0.0, 1 / math.sqrt(2)),
    (F.SPHERICAL, 1, Power(3, -1), 2.0, 2.0, 2.0),
    (F.HYPERBOLIC_SECOND, -1, Linear(1, 2), 1.0, 0.0, 1 / math.sqrt(2)),
    (F.HYPERBOLIC_SECOND, -1, Power(3, -1), 1.0, 1.0, 0.5),
])
def test_closed_form_examples(fam, eps, rel, c, lam, expected):
    assert radius_closed_form(RadiusFunction(fam, eps, rel, c), lam) == pytest.approx(expected, rel=1e-15)


def test_closed_form_matches_corollary_radii():
    # CMC: c / sqrt(2 (H - lam)); constant Gauss: c / sqrt(lam^2 - eps*a)
    H, a, c = 1.3, 0.7, 1.6
    for fam in DELTA_FAMILIES:
        for eps in (1, -1):
            rf = RadiusFunction(fam, eps, Linear(-eps, 2 * eps * H), c)
            lam = np.linspace(-3, 1.2, 9)
            np.testing.assert_allclose(radius(rf, lam), c / np.sqrt(2 * (H - lam)), rtol=1e-14)
            rf = RadiusFunction(fam, eps, Power(a, -1), c)
            lam = np.linspace(1.0, 4, 9)
            np.testing.assert_allclose(radius(rf, lam), c / np.sqrt(lam**2 - eps * a), rtol=1e-14)


def test_log_derivative_examples():
    assert log_radius_derivative(RadiusFunction(F.SPHERICAL, 1, Linear(-1, 2), 1.0), 0.0) == 0.5
    assert log_radius_derivative(RadiusFunction(F.HYPERBOLIC_SECOND, -1, Linear(1, 0), 1.0), 1.0) == -0.5
    with pytest.raises(DegenerateAt):
        log_radius_derivative(RadiusFunction(F.SPHERICAL, 1, Power(4, -1), 1.0), 2.0)


def test_log_derivative_matches_closed_form_power():
    # at lam with lam^(1-m) = eps*a + 1 the base S equals 1
    for eps in (1, -1):
        a, m = 0.8, 3.0
        rf = RadiusFunction(F.SPHERICAL, eps, Power(a, m), 1.0)
        lam = (eps * a + 1) ** (1 / (1 - m))
        assert radius_base(rf, lam) == pytest.approx(1.0)
        h = 1e-5
        fd = (math.log(radius(rf, lam + h)) - math.log(radius(rf, lam - h))) / (2 * h)
        assert fd == pytest.approx(log_radius_derivative(rf, lam), abs=1e-7)


def test_degenerate_exponents():
    with pytest.raises(DegenerateRelation):
        radius_exponent(RadiusFunction(F.SPHERICAL, 1, Linear(1, 0), 1.0))
    with pytest.raises(DegenerateRelation):
        radius_exponent(RadiusFunction(F.HYPERBOLIC_SECOND, -1, Linear(-1, 0), 1.0))
    with pytest.raises(DegenerateRelation):
        radius_exponent(RadiusFunction(F.PARABOLIC, -1, Power(2, 1), 1.0))
    # m = -1 is fine for the second kind
    assert radius_exponent(RadiusFunction(F.HYPERBOLIC_SECOND, -1, Power(2, -1), 1.0)) == -0.5
    with pytest.raises(UnsupportedSpec):
        RadiusFunction(F.SPHERICAL, 1, Custom(math.sin), 1.0)


def test_domain_handling():
    rf = RadiusFunction(F.SPHERICAL, 1, Linear(-1, 2), 1.0)  # base 2(1 - lam)
    with pytest.raises(DomainError):
        radius(rf, 1.0)
    out = radius(rf, np.array([0.0, 1.0, 2.0]))
    assert np.isfinite(out[0]) and np.isnan(out[1:]).all()


def test_quadrature_reference_value_and_singular_path():
    rf = RadiusFunction(F.SPHERICAL, 1, Linear(-1, 2), 0.7, Q, lambda_ref=0.0)
    assert radius_quadrature(rf, 0.0) == 0.7
    with pytest.raises(SingularPath):
        radius_quadrature(rf, 2.0)
    out = radius_quadrature(rf, np.array([-1.0, 0.0, 0.5, 2.0]))
    assert np.isnan(out[3]) and out[1] == 0.7


def _normalised_pair(fam, eps, rel, lam_ref):
    closed = RadiusFunction(fam, eps, rel, 1.3)
    c_ref = radius_closed_form(closed, lam_ref)
    return closed, RadiusFunction(fam, eps, rel, c_ref, Q, lambda_ref=lam_ref)


@pytest.mark.parametrize("fam, eps, rel, lo, hi", [
    (F.SPHERICAL, 1, Linear(-1, 4), -3.0, 1.9),
    (F.SPHERICAL, 1, Power(2, -1), 1.5, 5.0),
    (F.HYPERBOLIC_FIRST, -1, Linear(0.5, 1), -4.0, -0.8),
    (F.PARABOLIC, 1, Power(1.5, 2.5), 0.1, 0.7),
    (F.HYPERBOLIC_SECOND, -1, Linear(1, 4), -1.9, 3.0),
    (F.HYPERBOLIC_SECOND, -1, Power(2, -1), 0.3, 4.0),
])
def test_quadrature_agrees_with_closed_form(fam, eps, rel, lo, hi):
    lam = np.linspace(lo, hi, 20)
    lam_ref = lam[7]
    closed, quad = _normalised_pair(fam, eps, rel, lam_ref)
    exact = radius(closed, lam)
    np.testing.assert_allclose(radius(quad, lam), exact, rtol=1e-9)
    for t in lam[::4]:
        assert radius(quad, float(t)) == pytest.approx(radius(closed, float(t)), rel=1e-9)


def test_mp_quadrature_and_local_step():
    closed, quad = _normalised_pair(F.SPHERICAL, 1, Linear(-1, 4), 0.0)
    with mpmath.workdps(30):
        r = radius_quadrature(quad, mpmath.mpf("0.8"))
        exact = radius_closed_form(closed, mpmath.mpf("0.8"))
        assert abs(r - exact) < mpmath.mpf("1e-25")
        r0 = radius(quad, 0.5)
        step = radius_local(quad, mpmath.mpf(r0), mpmath.mpf(0.5), mpmath.mpf(0.5) + mpmath.mpf("1e-4"))
        assert abs(step - radius_closed_form(closed, mpmath.mpf(0.5) + mpmath.mpf("1e-4"))) < 1e-15


linear_params = st.tuples(st.sampled_from(DELTA_FAMILIES), st.sampled_from([1, -1]),
                          st.floats(-3, 3), st.floats(-3, 3), st.floats(0.2, 3), st.floats(-5, 5))


@settings(max_examples=200, deadline=None)
@given(linear_params)
def test_ode_residual_linear(params):
    fam, eps, a, b, c, lam = params
    assume(abs(eps * a - 1) > 0.1)
    rf = RadiusFunction(fam, eps, Linear(a, b), c)
    h = 1e-5 * max(1.0, abs(lam))
    base = radius_base(rf, np.array([lam - 2 * h, lam + 2 * h]))
    # keep the finite-difference truncation error (h / base)^2 small
    assume(np.all(base > 0.1))
    r = radius(rf, lam)
    assert r > 0
    fd = (math.log(radius(rf, lam + h)) - math.log(radius(rf, lam - h))) / (2 * h)
    exact = log_radius_derivative(rf, lam)
    assert fd == pytest.approx(exact, abs=1e-6 * max(1.0, abs(exact)))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([1, -1]), st.floats(-3, 3), st.sampled_from([-2.0, -1.0, 0.0, 0.5, 2.0, 3.0]),
       st.floats(0.2, 3), st.floats(0.1, 4))
def test_bernoulli_equation(eps, a, m, c, lam):
    # d lam / d r + lam / r = eps * a * lam**m / r along the closed-form radius
    rf = RadiusFunction(F.SPHERICAL, eps, Power(a, m), c)
    h = 1e-5 * max(1.0, lam)
    base = radius_base(rf, np.array([lam - h, lam, lam + h]))
    assume(np.all(base > 1e-2) and lam - h > 0)
    r = radius(rf, lam)
    assume(1e-3 < r < 1e3)
    dr = (radius(rf, lam + h) - radius(rf, lam - h)) / (2 * h)
    assume(abs(dr) > 1e-6)
    lhs = 1 / dr + lam / r
    rhs = eps * a * lam**m / r
    assert lhs == pytest.approx(rhs, rel=1e-6, abs=1e-6)
