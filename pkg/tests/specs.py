"""Shared surface specs and sampling helpers for the test suite."""

import numpy as np

from desitter_rotor import (Custom, Linear, Power, RadiusMode, SphericalRegime, SurfaceFamily,
                            SurfaceSpec, admissible_intervals)
from desitter_rotor.admissibility import interval_containing

F = SurfaceFamily
LT, GT = SphericalRegime.Y_LESS_ONE, SphericalRegime.Y_GREATER_ONE
Q = RadiusMode.QUADRATURE


def cube(lam):
    return lam**3


CUBE = Custom(cube, "lambda**3")

# (id, spec); the relation kinds are "cmc" (kappa = -eps*lam + 2*eps*H, or
# lam + 2H for the second kind), "gauss" (kappa = a/lam) and "cube"
SPECS = [
    ("sph+_cmc", SurfaceSpec(F.SPHERICAL, 1, Linear(-1, 4), 1.0, spherical_regime=LT)),
    ("sph+_gauss", SurfaceSpec(F.SPHERICAL, 1, Power(2, -1), 1.0, spherical_regime=LT, lambda_ref=3.0)),
    ("sph+_cube", SurfaceSpec(F.SPHERICAL, 1, CUBE, 0.5, spherical_regime=LT, lambda_ref=0.5,
                              radius_mode=Q)),
    ("sph-_cmc", SurfaceSpec(F.SPHERICAL, -1, Linear(1, -4), 1.0, spherical_regime=GT, lambda_ref=1.75)),
    ("sph-_gauss", SurfaceSpec(F.SPHERICAL, -1, Power(2, -1), 2.0, spherical_regime=GT, lambda_ref=0.7)),
    ("sph-_cube", SurfaceSpec(F.SPHERICAL, -1, CUBE, 2.0, spherical_regime=GT, lambda_ref=0.5,
                              radius_mode=Q)),
    ("hyp1+_cmc", SurfaceSpec(F.HYPERBOLIC_FIRST, 1, Linear(-1, 4), 1.0, lambda_ref=1.7)),
    ("hyp1+_gauss", SurfaceSpec(F.HYPERBOLIC_FIRST, 1, Power(2, -1), 1.0, lambda_ref=3.0)),
    ("hyp1+_cube", SurfaceSpec(F.HYPERBOLIC_FIRST, 1, CUBE, 0.5, lambda_ref=3.0, radius_mode=Q)),
    ("hyp1-_cmc", SurfaceSpec(F.HYPERBOLIC_FIRST, -1, Linear(1, -4), 1.0)),
    ("hyp1-_gauss", SurfaceSpec(F.HYPERBOLIC_FIRST, -1, Power(2, -1), 1.0, lambda_ref=1.0)),
    ("hyp1-_cube", SurfaceSpec(F.HYPERBOLIC_FIRST, -1, CUBE, 0.5, lambda_ref=0.5, radius_mode=Q)),
    ("par+_cmc", SurfaceSpec(F.PARABOLIC, 1, Linear(-1, 4), 1.0, lambda_ref=1.5)),
    ("par+_gauss", SurfaceSpec(F.PARABOLIC, 1, Power(2, -1), 1.0, lambda_ref=3.0)),
    ("par+_cube", SurfaceSpec(F.PARABOLIC, 1, CUBE, 0.5, lambda_ref=2.0, radius_mode=Q)),
    ("par-_cmc", SurfaceSpec(F.PARABOLIC, -1, Linear(1, -4), 1.0)),
    ("par-_gauss", SurfaceSpec(F.PARABOLIC, -1, Power(2, -1), 1.0, lambda_ref=1.0)),
    ("par-_cube", SurfaceSpec(F.PARABOLIC, -1, CUBE, 0.5, lambda_ref=0.5, radius_mode=Q)),
    ("hyp2_cmc", SurfaceSpec(F.HYPERBOLIC_SECOND, None, Linear(1, 4), 1.0)),
    ("hyp2_gauss", SurfaceSpec(F.HYPERBOLIC_SECOND, None, Power(2, -1), 1.0, lambda_ref=1.0)),
    ("hyp2_cube", SurfaceSpec(F.HYPERBOLIC_SECOND, None, CUBE, 0.5, lambda_ref=0.5, radius_mode=Q)),
]

SPEC_IDS = [name for name, _ in SPECS]
BY_ID = dict(SPECS)
CMC_IDS = [n for n in SPEC_IDS if n.endswith("_cmc")]
GAUSS_IDS = [n for n in SPEC_IDS if n.endswith("_gauss")]
CLOSED_IDS = CMC_IDS + GAUSS_IDS

# one spec per family for the angle-integral checks
FAMILY_IDS = ["sph+_cmc", "hyp1-_gauss", "par+_cmc", "hyp2_cmc"]

_interval_cache = {}


def reference_interval(spec, window=(-20.0, 20.0), grid=40_000):
    """Admissible interval around lambda_ref, clipped to lambda_ref +- 3."""
    key = (id(spec), window, grid)
    hit = _interval_cache.get(key)
    if hit is None or hit[0] is not spec:
        iv = interval_containing(admissible_intervals(spec, window, grid), spec.lambda_ref)
        assert iv is not None, "lambda_ref must lie in an admissible interval"
        hit = _interval_cache[key] = (spec, (max(iv.lo, spec.lambda_ref - 3),
                                             min(iv.hi, spec.lambda_ref + 3)))
    return hit[1]


def interior_samples(spec, n, margin=0.1):
    lo, hi = reference_interval(spec)
    trim = margin * (hi - lo)
    return np.linspace(lo + trim, hi - trim, n)
