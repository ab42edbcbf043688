import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from desitter_rotor import (AmbientForm, Linear, LocalChart, SurfaceFamily, SurfaceSpec, bilinear, embed,
                            embed_grid, profile_point, quadric_residual, tangent_frame)
from desitter_rotor.errors import RegimeMismatch, StepOutsideAdmissible
from desitter_rotor.surface import profile_coords, profile_identity, profile_samples
from specs import BY_ID, GT, LT, SPEC_IDS, interior_samples, reference_interval

F = SurfaceFamily
PAR_SPEC = BY_ID["par+_cmc"]


@given(st.floats(0.01, 100), st.floats(-50, 50))
def test_parabolic_identity_by_construction(z, phi):
    x, z2, w = profile_coords(PAR_SPEC, z, phi)
    # exact up to rounding of the two terms, which grow like x^2
    assert 2 * z2 * w + x * x == pytest.approx(1, abs=1e-15 * max(1.0, x * x))


def test_spherical_profile_at_zero_angle():
    spec = BY_ID["sph+_cmc"]
    y = 0.3
    assert profile_coords(spec, y, 0.0) == (y, math.sqrt(1 - y * y), 0.0)


def test_spherical_cmc_profile_point():
    p = profile_point(BY_ID["sph+_cmc"], 0.0)
    assert p.radius == pytest.approx(0.5, rel=1e-15)
    y, z, w = p.coords
    assert y == p.radius and z * z - w * w == pytest.approx(0.75, abs=1e-14)
    assert p.as_dict()["y"] == y
    assert abs(p.identity_residual) <= 1e-12


def test_embed_at_zero_rotation():
    spec = BY_ID["sph+_cmc"]
    p = profile_point(spec, 0.4)
    np.testing.assert_array_equal(embed(spec, 0.4, 0.0), [0.0, *p.coords])
    p = profile_point(PAR_SPEC, 1.6)
    x, z, w = p.coords
    np.testing.assert_array_equal(embed(PAR_SPEC, 1.6, 0.0), [x, 0.0, z, w])


def test_regime_mismatch():
    spec = SurfaceSpec(F.SPHERICAL, 1, Linear(-1, 4), 1.0, spherical_regime=GT)
    with pytest.raises(RegimeMismatch):
        profile_point(spec, 0.0)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SPEC_IDS), st.floats(0.02, 0.98), st.floats(0, 2 * math.pi))
def test_quadric_membership(name, s, v):
    spec = BY_ID[name]
    lo, hi = reference_interval(spec)
    lam = lo + s * (hi - lo)
    p = profile_point(spec, lam)
    assert abs(p.identity_residual) <= 1e-9
    assert abs(quadric_residual(spec.form, embed(spec, lam, v))) <= 1e-9


@pytest.mark.parametrize("name", SPEC_IDS)
def test_tangent_frame(name):
    spec = BY_ID[name]
    eps = spec.eps
    for lam in interior_samples(spec, 4):
        v = 0.7
        r = embed(spec, lam, v)
        r_lam, r_v = tangent_frame(spec, lam, v, 1e-5)
        g = lambda a, b: bilinear(spec.form, a, b)
        assert abs(g(r, r_lam)) <= 1e-6
        assert abs(g(r, r_v)) <= 1e-12
        assert abs(g(r_lam, r_v)) <= 1e-6
        p = profile_point(spec, lam)
        if spec.family is F.HYPERBOLIC_SECOND:
            assert g(r_v, r_v) == pytest.approx(-p.radius**2, rel=1e-12)
            assert g(r_lam, r_lam) > 0
        else:
            assert g(r_v, r_v) == pytest.approx(p.radius**2, rel=1e-12)
            assert np.sign(g(r_lam, r_lam)) == eps


def _rotation(family, d):
    """Linear map taking embed(lam, v) to embed(lam, v + d)."""
    m = np.eye(4)
    c, s = math.cos(d), math.sin(d)
    ch, sh = math.cosh(d), math.sinh(d)
    if family is F.SPHERICAL:
        m[:2, :2] = [[c, s], [-s, c]]
    elif family in (F.HYPERBOLIC_FIRST, F.HYPERBOLIC_SECOND):
        m[2:, 2:] = [[ch, sh], [sh, ch]]
    else:
        m[1] = [0, 1, d, 0]
        m[3] = [0, -d, -d * d / 2, 1]
    return m


@pytest.mark.parametrize("name", ["sph+_cmc", "hyp1-_gauss", "hyp2_cmc", "par+_cmc"])
@settings(max_examples=20, deadline=None)
@given(v=st.floats(0, 3), d=st.floats(-1, 1))
def test_rotational_symmetry(name, v, d):
    spec = BY_ID[name]
    lam = interior_samples(spec, 3)[1]
    m = _rotation(spec.family, d)
    np.testing.assert_allclose(m @ embed(spec, lam, v), embed(spec, lam, v + d), atol=1e-12)
    assert abs(bilinear(spec.form, m[:, 0], m[:, 1]) - spec.form.gram[0, 1]) < 1e-12
    np.testing.assert_allclose(m.T @ spec.form.gram @ m, spec.form.gram, atol=1e-12)


@pytest.mark.parametrize("name", SPEC_IDS)
def test_samples_match_pointwise(name):
    spec = BY_ID[name].with_(phi0=0.1)
    lams = interior_samples(spec, 7)
    r, phi = profile_samples(spec, lams)
    for lam, rr, pp in zip(lams, r, phi):
        p = profile_point(spec, lam)
        assert rr == pytest.approx(p.radius, rel=1e-12)
        assert pp == pytest.approx(p.phi, abs=1e-10)


def test_embed_grid_shape_and_residual():
    spec = BY_ID["hyp1+_cube"]
    grid = embed_grid(spec, interior_samples(spec, 5), np.linspace(-1, 1, 3))
    assert grid.shape == (5, 3, 4)
    assert np.max(np.abs(quadric_residual(spec.form, np.moveaxis(grid, -1, 0)))) <= 1e-9


@pytest.mark.parametrize("name", ["sph+_gauss", "par+_cube", "hyp2_cmc"])
def test_local_chart_matches_float_pipeline(name):
    spec = BY_ID[name]
    lam = interior_samples(spec, 3)[1]
    chart = LocalChart(spec, lam)
    for d in (-1e-3, 0.0, 2e-3):
        got = np.array([float(x) for x in chart.point(d, 0.5)])
        np.testing.assert_allclose(got, embed(spec, lam + d, 0.5), atol=1e-10)


def test_step_outside_admissible():
    spec = BY_ID["sph+_cmc"]  # admissible for lam < 1.5
    with pytest.raises(StepOutsideAdmissible):
        tangent_frame(spec, 1.5 - 1e-6, 0.2, 1e-5)


def test_profile_identity_residuals():
    assert profile_identity(F.SPHERICAL, (1.0, 0.0, 0.0)) == 0
    assert profile_identity(F.HYPERBOLIC_SECOND, (0.6, 0.0, 0.8)) == pytest.approx(0)
    assert profile_identity(F.PARABOLIC, (1.0, 2.0, 0.0)) == 0
