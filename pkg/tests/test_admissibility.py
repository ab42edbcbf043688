import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from desitter_rotor import (ConstraintSet, Linear, Power, SurfaceFamily, SurfaceSpec,
                            admissible_intervals, corollary_cases, corollary_intervals, oracle_diff)
from desitter_rotor.admissibility import AdmissibleInterval, ROOT_RTOL, radicand
from desitter_rotor.errors import UnsupportedSpec
from specs import BY_ID, GT, LT, SPEC_IDS

F = SurfaceFamily
W = (-50.0, 50.0)


def ends(intervals):
    return [(iv.lo, iv.hi) for iv in intervals]


def test_spherical_cmc_unit_radius_bound():
    spec = SurfaceSpec(F.SPHERICAL, 1, Linear(-1, 2), 1.0, spherical_regime=LT)
    (iv,) = admissible_intervals(spec, W)
    assert iv.lo == -50 and iv.binding_lo == "window"
    assert iv.hi == pytest.approx(0.5, abs=1e-12)
    assert iv.binding_hi == "regime"


def test_cmc_radicand_roots():
    # c^2 lam^2 - 2 lam + 2H - c^2 at H = 2, c = 2 is 4 lam^2 - 2 lam: roots 0 and 1/2
    H, c = 2.0, 2.0
    q = math.sqrt(1 - 2 * H * c * c + c**4)
    roots = ((1 - q) / c**2, (1 + q) / c**2)
    assert roots == (0.0, 0.5)
    spec = SurfaceSpec(F.SPHERICAL, 1, Linear(-1, 2 * H), c, spherical_regime=GT)
    rf = spec.radius_function()
    from desitter_rotor import radius
    for lam in roots:
        assert abs(radicand(spec, lam, radius(rf, lam))) <= 1e-10


def test_constant_gauss_hyperbolic_first():
    spec = SurfaceSpec(F.HYPERBOLIC_FIRST, 1, Power(2, -1), 2.0)
    got = admissible_intervals(spec, W)
    s2 = math.sqrt(2)
    assert len(got) == 2
    np.testing.assert_allclose(ends(got), [(-50, -s2), (s2, 50)], atol=1e-11)


def test_quadrature_mode_binding_names():
    (iv,) = admissible_intervals(BY_ID["sph+_cube"], (-20, 20), 40_000)
    assert iv.binding_lo == "regime" and iv.binding_hi == "denominator"
    assert iv.hi == pytest.approx(1.0, abs=1e-12)
    (iv,) = admissible_intervals(BY_ID["hyp2_cmc"], (-20, 20), 40_000)
    assert (iv.binding_lo, iv.binding_hi) == ("radicand", "radicand")
    np.testing.assert_allclose((iv.lo, iv.hi), (-1, 3), atol=1e-12)


def test_validation():
    spec = BY_ID["sph+_cmc"]
    with pytest.raises(ValueError):
        admissible_intervals(spec, (1, -1))
    with pytest.raises(ValueError):
        admissible_intervals(spec, (-1, math.inf))
    with pytest.raises(ValueError):
        admissible_intervals(spec, W, grid=10)
    with pytest.raises(ValueError):
        AdmissibleInterval(1.0, 1.0, "a", "b")


def test_empty_result():
    # y > 1 never holds together with a positive radicand here
    spec = SurfaceSpec(F.SPHERICAL, 1, Power(-1.14, -1), 0.77, spherical_regime=GT)
    assert admissible_intervals(spec, W) == []


def _soundness(spec, intervals, rng):
    cs = ConstraintSet(spec)
    for iv in intervals:
        pts = np.concatenate([[0.5 * (iv.lo + iv.hi)], rng.uniform(iv.lo, iv.hi, 10)])
        assert cs.satisfied(pts).all(), (iv, pts)


def _maximality(spec, intervals, window):
    cs = ConstraintSet(spec)
    by_name = {c.name: c for c in cs}
    for iv in intervals:
        for x, name in ((iv.lo, iv.binding_lo), (iv.hi, iv.binding_hi)):
            if name == "window":
                assert x in window
                continue
            d = 10 * ROOT_RTOL * max(1.0, abs(x))
            pts = np.array([x - d, x + d])
            vals = cs.values(pts)[name]
            state = by_name[name].state(vals)
            assert state[0] != state[1], (name, x, vals)


@pytest.mark.parametrize("name", SPEC_IDS)
def test_soundness_and_maximality_on_shared_specs(name):
    spec = BY_ID[name]
    window = (-20.0, 20.0)
    got = admissible_intervals(spec, window, 40_000)
    assert got
    _soundness(spec, got, np.random.default_rng(3))
    _maximality(spec, got, window)


family_eps = st.sampled_from([(F.SPHERICAL, 1, LT), (F.SPHERICAL, 1, GT), (F.SPHERICAL, -1, LT),
                              (F.SPHERICAL, -1, GT), (F.HYPERBOLIC_FIRST, 1, None),
                              (F.HYPERBOLIC_FIRST, -1, None), (F.PARABOLIC, 1, None),
                              (F.PARABOLIC, -1, None), (F.HYPERBOLIC_SECOND, None, None)])


@settings(max_examples=40, deadline=None)
@given(family_eps, st.booleans(), st.floats(-3, 3), st.floats(0.3, 3), st.floats(-5, 5).filter(lambda a: abs(a) > 1e-3))
def test_soundness_and_maximality_random(fe, cmc, H, c, a):
    fam, eps, reg = fe
    e = -1 if eps is None else eps
    if cmc:
        rel = Linear(1, 2 * H) if eps is None else Linear(-e, 2 * e * H)
    else:
        rel = Power(a, -1)
    spec = SurfaceSpec(fam, eps, rel, c, spherical_regime=reg)
    window = (-20.0, 20.0)
    got = admissible_intervals(spec, window, 20_000)
    _soundness(spec, got, np.random.default_rng(5))
    _maximality(spec, got, window)
    for left, right in zip(got[:-1], got[1:]):
        assert left.hi <= right.lo


# ---- corollary tables ----

def test_timelike_cmc_first_kind_table():
    for H, c in ((2.0, 1.0), (-1.3, 0.4)):
        spec = SurfaceSpec(F.HYPERBOLIC_FIRST, -1, Linear(1, -2 * H), c)
        assert ends(corollary_intervals(spec, W)) == [(-50, H)]


def test_timelike_gauss_first_kind_nonnegative_a():
    spec = SurfaceSpec(F.HYPERBOLIC_FIRST, -1, Power(1, -1), 1.0)
    cases = {k.case_id: k for k in corollary_cases(spec)}
    assert cases["2-ii"].active
    # the whole line minus the pole of f at lam = 0
    assert ends(corollary_intervals(spec, W)) == [(-50, 0.0), (0.0, 50)]


def test_second_kind_gauss_table_case_ii():
    spec = SurfaceSpec(F.HYPERBOLIC_SECOND, None, Power(4, -1), math.sqrt(2))
    cases = {k.case_id: k for k in corollary_cases(spec)}
    assert cases["ii"].active
    got = ends(corollary_intervals(spec, W))
    np.testing.assert_allclose(got, [(-math.sqrt(2), 0), (0, math.sqrt(2))], atol=1e-15)


def test_second_kind_cmc_endpoints():
    H, c = 1.0, 1.0
    spec = SurfaceSpec(F.HYPERBOLIC_SECOND, None, Linear(1, 2 * H), c)
    rep = oracle_diff(spec, W)
    assert rep.match
    np.testing.assert_allclose(ends(rep.table), [(1 - math.sqrt(2), 1 + math.sqrt(2))], atol=1e-15)
    for lam in (rep.numeric[0].lo, rep.numeric[0].hi):
        assert abs(2 * (H + lam) - (lam * lam + 1) * c * c) <= 1e-10


def test_empty_tables_agree():
    spec = SurfaceSpec(F.SPHERICAL, 1, Power(-1.14, -1), 0.77, spherical_regime=GT)
    rep = oracle_diff(spec, W)
    assert rep.table == [] and rep.numeric == [] and rep.match


def test_spacelike_cmc_spherical_random_draws():
    rng = np.random.default_rng(11)
    for _ in range(100):
        H, c = rng.uniform(-3, 3), rng.uniform(0.3, 3)
        spec = SurfaceSpec(F.SPHERICAL, 1, Linear(-1, 2 * H), c, spherical_regime=LT)
        rep = oracle_diff(spec, W)
        assert rep.match and rep.max_endpoint_diff <= 1e-8
        assert rep.symmetric_difference <= 1e-7


def test_unsupported_relations():
    with pytest.raises(UnsupportedSpec):
        corollary_cases(SurfaceSpec(F.PARABOLIC, 1, Linear(0.5, 1), 1.0))
    with pytest.raises(UnsupportedSpec):
        corollary_cases(BY_ID["sph+_cube"])


def test_report_serialises():
    import json
    rep = oracle_diff(BY_ID["sph+_cmc"], W)
    doc = json.loads(json.dumps(rep.to_dict()))
    assert doc["match"] is True and doc["active_cases"] == ["1a"]
