"""The angle function phi(lam) of the profile curve.

phi(lam) = phi0 + branch * int_{lambda_ref}^{lam} g(t) dt with the integrand

    spherical           t r^2 / ((r^2 - 1) D sqrt((t^2 - eps) r^2 + eps))
    hyperbolic, first   t r^2 / ((1 + r^2) D sqrt((t^2 - eps) r^2 - eps))
    hyperbolic, second  t r^2 / ((1 - r^2)(f + t) sqrt(1 - (t^2 + 1) r^2))
    parabolic           t / (r D sqrt(t^2 - eps))

where r is the radius and D = eps*f(t) - t.  The radicands vanish like the
square root of the distance to an interval endpoint, so the integrand has
integrable inverse-square-root singularities there.

``closed_family_integrand`` holds the same integrands with the closed-form
radius substituted and simplified (linear and power relations); it is an
independent route to the same numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from ._backend import is_scalar, lib
from .admissibility import ConstraintSet
from .errors import (DomainError, OutsideAdmissible, PathCrossesSingularity, SingularPath,
                     UnsupportedSpec)
from .profile import RadiusMode, SurfaceFamily, _lam_power, radius, radius_denominator
from .quadrature import QuadratureConfig, QuadratureResult, gauss_kronrod, tanh_sinh
from .relations import Linear, Power
from .spec import SurfaceSpec

SCHEMES = ("gauss_kronrod", "tanh_sinh")


@dataclass(frozen=True)
class AngleIntegral:
    """The angle integral of one surface spec."""

    spec: SurfaceSpec

    @property
    def family(self):
        return self.spec.family

    @property
    def eps(self):
        return self.spec.eps

    @property
    def delta(self):
        return self.spec.delta

    @property
    def branch(self):
        return self.spec.branch

    @property
    def phi0(self):
        return self.spec.phi0

    @property
    def lambda_ref(self):
        return self.spec.lambda_ref

    @cached_property
    def rf(self):
        return self.spec.radius_function()

    @cached_property
    def constraints(self):
        return ConstraintSet(self.spec)


def integrand_from_radius(spec: SurfaceSpec, lam, r):
    """Angle integrand given the radius r at lam (no domain checks)."""
    L = lib(lam)
    rf = spec.radius_function()
    d = radius_denominator(rf, lam)
    eps, fam = spec.eps, spec.family
    if fam is SurfaceFamily.SPHERICAL:
        return lam * r * r / ((r * r - 1) * d * L.sqrt((lam * lam - eps) * r * r + eps))
    if fam is SurfaceFamily.HYPERBOLIC_FIRST:
        return lam * r * r / ((1 + r * r) * d * L.sqrt((lam * lam - eps) * r * r - eps))
    if fam is SurfaceFamily.HYPERBOLIC_SECOND:
        return lam * r * r / ((1 - r * r) * d * L.sqrt(1 - (lam * lam + 1) * r * r))
    return lam / (r * d * L.sqrt(lam * lam - eps))


def _scalar_radius(ai: AngleIntegral, lam):
    try:
        return radius(ai.rf, lam)
    except (DomainError, SingularPath) as exc:
        name = "radius" if ai.spec.radius_mode is RadiusMode.QUADRATURE else "radius_base"
        raise OutsideAdmissible(lam, name, str(exc)) from exc


def _checked(ai: AngleIntegral, lam, formula):
    """Evaluate formula(lam, r): scalars raise outside the admissible set,
    arrays get NaN there."""
    if is_scalar(lam):
        r = _scalar_radius(ai, lam)
        bad = ai.constraints.first_violation(float(lam), float(r))
        if bad is not None:
            raise OutsideAdmissible(lam, bad)
        return formula(lam, r)
    lam = np.asarray(lam, dtype=float)
    r = ai.constraints.radius(lam).reshape(lam.shape)
    ok = ai.constraints.satisfied(lam.ravel(), r.ravel()).reshape(lam.shape)
    with np.errstate(all="ignore"):
        out = formula(lam, r)
    return np.where(ok, out, np.nan)


def phi_integrand(ai: AngleIntegral, lam):
    """Pointwise angle integrand; OutsideAdmissible (scalar) or NaN (array) off-domain."""
    return _checked(ai, lam, lambda t, r: integrand_from_radius(ai.spec, t, r))


# ---- simplified integrands for the closed-form radii ----

def _pw(x, p):
    return lib(x).exp(p * lib(x).log(x))


def _closed_family_formula(spec: SurfaceSpec):
    rel, eps, delta, c = spec.rel, spec.eps, spec.delta, spec.c
    c2 = c * c
    if spec.radius_mode is not RadiusMode.CLOSED_FORM or not isinstance(rel, (Linear, Power)):
        raise UnsupportedSpec("simplified integrands need a closed-form linear or power radius")
    second = spec.family is SurfaceFamily.HYPERBOLIC_SECOND

    if isinstance(rel, Linear) and not second and rel.a == -eps:
        H = eps * rel.b / 2

        def g(t):
            sq = lib(t).sqrt
            u = H - t
            return (c2 / math.sqrt(2)) * t / (
                sq(u) * (c2 - 2 * delta * u) * sq((t * t - eps) * c2 + 2 * eps * delta * u))
        return g

    if isinstance(rel, Linear) and not second:
        k = eps * rel.a - 1

        def g(t):
            w = k * t + eps * rel.b
            w2 = _pw(w, 2 / k)
            return c2 * t * _pw(w, (3 - eps * rel.a) / k) / (
                (c2 * w2 - delta) * lib(t).sqrt(c2 * (t * t - eps) * w2 + delta * eps))
        return g

    if isinstance(rel, Power) and not second and rel.m == -1:
        def g(t):
            sq = lib(t).sqrt
            s = t * t - eps * rel.a
            return -c2 * t * t / (sq(s) * (c2 - delta * s) * sq((t * t - eps) * c2 + eps * delta * s))
        return g

    if isinstance(rel, Power) and not second:
        m = rel.m

        def g(t):
            s = _lam_power(t, 1 - m) - eps * rel.a
            s2 = _pw(s, 2 / (m - 1))
            return -c2 * _lam_power(t, 1 - m) * _pw(s, (3 - m) / (m - 1)) / (
                (c2 * s2 - delta) * lib(t).sqrt((t * t - eps) * c2 * s2 + delta * eps))
        return g

    if isinstance(rel, Linear) and rel.a == 1:
        H = rel.b / 2

        def g(t):
            sq = lib(t).sqrt
            u = H + t
            return (c2 / math.sqrt(2)) * t / (sq(u) * (2 * u - c2) * sq(2 * u - (t * t + 1) * c2))
        return g

    if isinstance(rel, Linear):
        k = rel.a + 1

        def g(t):
            w = k * t + rel.b
            w2 = _pw(w, -2 / k)
            return c2 * t * _pw(w, -(3 + rel.a) / k) / (
                (1 - c2 * w2) * lib(t).sqrt(1 - (t * t + 1) * c2 * w2))
        return g

    if rel.m == -1:
        a = rel.a

        def g(t):
            sq = lib(t).sqrt
            return c2 * t * t / ((t * t + a - c2) * sq(t * t + a) * sq((1 - c2) * t * t + a - c2))
        return g

    m = rel.m

    def g(t):
        s = _lam_power(t, 1 - m) + rel.a
        s2 = _pw(s, 2 / (m - 1))
        return c2 * _lam_power(t, 1 - m) * _pw(s, (3 - m) / (m - 1)) / (
            (1 - c2 * s2) * lib(t).sqrt(1 - c2 * (1 + t * t) * s2))
    return g


def closed_family_integrand(ai: AngleIntegral, lam):
    """Simplified integrand (CMC / constant-Gauss / general linear and power)."""
    g = _closed_family_formula(ai.spec)
    return _checked(ai, lam, lambda t, r: g(t))


# ---- integration ----

def _check_path(ai: AngleIntegral, lam, samples: int = 513):
    cs = ai.constraints
    for x in (ai.lambda_ref, lam):
        r = _scalar_radius(ai, x)
        bad = cs.first_violation(x, r)
        if bad is not None:
            raise OutsideAdmissible(x, bad)
    t = np.linspace(ai.lambda_ref, lam, samples)
    vals = cs.values(t)
    for c in cs:
        if not np.all(c.satisfied(vals[c.name])):
            raise PathCrossesSingularity(
                lam, c.name,
                f"lambda_ref={ai.lambda_ref!r} and lambda={lam!r} are separated by a "
                f"zero of constraint {c.name!r}")


def _integrate(g, a, b, cfg: QuadratureConfig, scheme: str) -> QuadratureResult:
    if scheme == "gauss_kronrod":
        return gauss_kronrod(g, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
    if scheme == "tanh_sinh":
        return tanh_sinh(g, a, b, cfg.abs_tol, cfg.rel_tol)
    raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")


def integrate_phi_result(ai: AngleIntegral, cfg: QuadratureConfig, lam,
                         scheme: str = "gauss_kronrod", simplified: bool = False):
    """(phi, QuadratureResult of the bare integral)."""
    lam = float(lam)
    if lam == ai.lambda_ref:
        return float(ai.phi0), QuadratureResult(0.0, 0.0, 0, 0)
    _check_path(ai, lam)
    if simplified:
        formula = _closed_family_formula(ai.spec)
        g = lambda t: np.asarray(formula(t), dtype=float)
    else:
        g = lambda t: phi_integrand(ai, t)
    with np.errstate(all="ignore"):
        res = _integrate(g, ai.lambda_ref, lam, cfg, scheme)
    return ai.phi0 + ai.branch * res.value, res


def integrate_phi(ai: AngleIntegral, cfg: QuadratureConfig, lam, scheme: str = "gauss_kronrod"):
    """phi0 + branch * int_{lambda_ref}^{lam} phi_integrand."""
    return integrate_phi_result(ai, cfg, lam, scheme)[0]


def phi_closed_family(ai: AngleIntegral, cfg: QuadratureConfig, lam, scheme: str = "gauss_kronrod"):
    """As integrate_phi, through the simplified closed-form integrand."""
    return integrate_phi_result(ai, cfg, lam, scheme, simplified=True)[0]


def integrate_phi_to_endpoint(ai: AngleIntegral, cfg: QuadratureConfig, endpoint,
                              scheme: str = "gauss_kronrod"):
    """Improper angle integral up to an interval endpoint where the radicand vanishes.

    The quadrature stops ``cfg.endpoint_inset`` of the path length short of the
    endpoint; the remaining tail is extrapolated from g(t) ~ C/sqrt(distance)
    as 2*g*d.  Returns (phi, tail, tail_error), where tail_error compares the
    extrapolation taken from two distances.  Endpoints where the integrand
    diverges faster (a pole of the (r^2 - 1) or (1 - r^2) factor, or of the
    denominator) are rejected.
    """
    endpoint = float(endpoint)
    span = endpoint - ai.lambda_ref
    d = cfg.endpoint_inset * span
    x1, x2 = endpoint - d, endpoint - 2 * d
    vals = ai.constraints.values(np.array([endpoint]))
    for name in ("denominator", "regime"):
        if name in vals and abs(vals[name][0]) <= 1e-8:
            raise OutsideAdmissible(endpoint, name, f"angle integral diverges at the {name} boundary")
    phi_in, _ = integrate_phi_result(ai, cfg, x1, scheme)
    g1 = float(phi_integrand(ai, x1))
    g2 = float(phi_integrand(ai, x2))
    tail = 2.0 * g1 * d
    tail_error = abs(2.0 * g2 * 2 * d / math.sqrt(2) - tail)
    return phi_in + ai.branch * tail, ai.branch * tail, tail_error
