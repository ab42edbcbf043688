"""Profile curve reconstruction and the embedding r(lam, v) into Minkowski 4-space.

Profile coordinates per family (r is the radius, phi the angle function)::

    spherical, y < 1    (y, sqrt(1 - y^2) cosh phi, sqrt(1 - y^2) sinh phi)
    spherical, y > 1    (y, sqrt(y^2 - 1) sinh phi, sqrt(y^2 - 1) cosh phi)
    hyperbolic, first   (sqrt(1 + w^2) cos phi, sqrt(1 + w^2) sin phi, w)
    hyperbolic, second  (sqrt(1 - w^2) cos phi, sqrt(1 - w^2) sin phi, w)
    parabolic           (x = phi z, z, w = (1 - x^2) / (2 z))

Embeddings::

    spherical           (y sin v, y cos v, z, w)
    hyperbolic, first   (x, y, w sinh v, w cosh v)
    hyperbolic, second  (x, y, w cosh v, w sinh v)
    parabolic           (x, v z, z, -v^2 z / 2 + w)

``LocalChart`` re-evaluates the profile on a small stencil around one lambda in
extended precision, for finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from ._backend import gauss_legendre, lib
from .errors import OutsideAdmissible, RegimeMismatch, StepOutsideAdmissible
from .phi import AngleIntegral, integrand_from_radius, integrate_phi, phi_integrand
from .profile import RadiusMode, SurfaceFamily, radius, radius_closed_form, radius_local
from .quadrature import QuadratureConfig, gauss_kronrod
from .spec import SphericalRegime, SurfaceSpec

PROFILE_NAMES = {
    SurfaceFamily.SPHERICAL: ("y", "z", "w"),
    SurfaceFamily.HYPERBOLIC_FIRST: ("x", "y", "w"),
    SurfaceFamily.HYPERBOLIC_SECOND: ("x", "y", "w"),
    SurfaceFamily.PARABOLIC: ("x", "z", "w"),
}


@dataclass(frozen=True)
class ProfilePoint:
    lam: float
    family: SurfaceFamily
    coords: tuple
    radius: float
    phi: float

    def as_dict(self) -> dict:
        return dict(zip(PROFILE_NAMES[self.family], self.coords))

    @property
    def identity_residual(self) -> float:
        return profile_identity(self.family, self.coords)


def profile_identity(family: SurfaceFamily, coords):
    """Left side minus right side of the family's profile identity."""
    a, b, c = coords
    if family is SurfaceFamily.SPHERICAL:
        return a * a + b * b - c * c - 1
    if family is SurfaceFamily.HYPERBOLIC_FIRST:
        return a * a + b * b - c * c - 1
    if family is SurfaceFamily.HYPERBOLIC_SECOND:
        return a * a + b * b + c * c - 1
    return 2 * b * c + a * a - 1


def profile_coords(spec: SurfaceSpec, r, phi):
    """Profile triple from radius and angle; works on floats, arrays and mpf."""
    L = lib(r)
    fam = spec.family
    if fam is SurfaceFamily.SPHERICAL:
        if spec.spherical_regime is SphericalRegime.Y_LESS_ONE:
            s = L.sqrt(1 - r * r)
            return r, s * L.cosh(phi), s * L.sinh(phi)
        s = L.sqrt(r * r - 1)
        return r, s * L.sinh(phi), s * L.cosh(phi)
    if fam is SurfaceFamily.HYPERBOLIC_FIRST:
        s = L.sqrt(1 + r * r)
        return s * L.cos(phi), s * L.sin(phi), r
    if fam is SurfaceFamily.HYPERBOLIC_SECOND:
        s = L.sqrt(1 - r * r)
        return s * L.cos(phi), s * L.sin(phi), r
    x = phi * r
    return x, r, (1 - x * x) / (2 * r)


def embed_coords(family: SurfaceFamily, coords, v):
    """4-point from profile triple and rotation parameter v."""
    a, b, c = coords
    L = lib(v) if not isinstance(a, mpmath.mpf) else lib(a)
    if family is SurfaceFamily.SPHERICAL:
        return [a * L.sin(v), a * L.cos(v), b, c]
    if family is SurfaceFamily.HYPERBOLIC_FIRST:
        return [a, b, c * L.sinh(v), c * L.cosh(v)]
    if family is SurfaceFamily.HYPERBOLIC_SECOND:
        return [a, b, c * L.cosh(v), c * L.sinh(v)]
    x, z, w = a, b, c
    return [x, v * z, z, -v * v * z / 2 + w]


def rotation_derivatives(family: SurfaceFamily, coords, v):
    """(r_v, r_vv), exact for every family."""
    a, b, c = coords
    L = lib(a) if isinstance(a, mpmath.mpf) else lib(v)
    zero = 0 * a
    if family is SurfaceFamily.SPHERICAL:
        sv, cv = L.sin(v), L.cos(v)
        return [a * cv, -a * sv, zero, zero], [-a * sv, -a * cv, zero, zero]
    if family is SurfaceFamily.HYPERBOLIC_FIRST:
        sh, ch = L.sinh(v), L.cosh(v)
        return [zero, zero, c * ch, c * sh], [zero, zero, c * sh, c * ch]
    if family is SurfaceFamily.HYPERBOLIC_SECOND:
        sh, ch = L.sinh(v), L.cosh(v)
        return [zero, zero, c * sh, c * ch], [zero, zero, c * ch, c * sh]
    z = b
    return [zero, z, zero, -v * z], [zero, zero, zero, -z]


def _check_regime(spec: SurfaceSpec, lam, r):
    if spec.family is SurfaceFamily.SPHERICAL:
        less = spec.spherical_regime is SphericalRegime.Y_LESS_ONE
        if (less and not r < 1) or (not less and not r > 1):
            raise RegimeMismatch(
                f"radius y={float(r)!r} at lambda={float(lam)!r} does not match regime "
                f"{spec.spherical_regime.value}")
    elif spec.family is SurfaceFamily.HYPERBOLIC_SECOND and not 0 < r < 1:
        raise RegimeMismatch(f"second-kind radius w={float(r)!r} at lambda={float(lam)!r} is not in (0, 1)")


def profile_point(spec: SurfaceSpec, lam: float, cfg: QuadratureConfig | None = None) -> ProfilePoint:
    cfg = cfg or spec.quadrature
    ai = AngleIntegral(spec)
    lam = float(lam)
    try:
        r = float(radius(ai.rf, lam))
    except Exception as exc:
        raise OutsideAdmissible(lam, "radius", str(exc)) from exc
    _check_regime(spec, lam, r)
    phi = integrate_phi(ai, cfg, lam)
    coords = tuple(float(x) for x in profile_coords(spec, r, phi))
    return ProfilePoint(lam, spec.family, coords, r, phi)


def embed(spec: SurfaceSpec, lam: float, v: float, cfg: QuadratureConfig | None = None) -> np.ndarray:
    p = profile_point(spec, lam, cfg)
    return np.array(embed_coords(spec.family, p.coords, float(v)), dtype=float)


def profile_samples(spec: SurfaceSpec, lams, cfg: QuadratureConfig | None = None):
    """(radius, phi) at many lambda values of the interval containing lambda_ref.

    phi is accumulated gap by gap outward from lambda_ref, so each piece of the
    path is integrated once.
    """
    cfg = cfg or spec.quadrature
    ai = AngleIntegral(spec)
    lams = np.asarray(lams, dtype=float)
    flat = lams.ravel()
    lo = min(flat.min(), spec.lambda_ref)
    hi = max(flat.max(), spec.lambda_ref)
    probe = np.concatenate([np.linspace(lo, hi, 4097), flat, [spec.lambda_ref]])
    ok = ai.constraints.satisfied(probe)
    if not np.all(ok):
        bad = probe[~ok][0]
        raise OutsideAdmissible(bad, ai.constraints.first_violation(bad))
    pts = np.unique(np.concatenate([flat, [spec.lambda_ref]]))
    iref = int(np.searchsorted(pts, spec.lambda_ref))
    g = lambda t: phi_integrand(ai, t)

    def piece(a, b):
        with np.errstate(all="ignore"):
            return gauss_kronrod(g, a, b, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions).value

    acc = np.zeros(pts.shape)
    for k in range(iref + 1, pts.size):
        acc[k] = acc[k - 1] + piece(pts[k - 1], pts[k])
    for k in range(iref - 1, -1, -1):
        acc[k] = acc[k + 1] - piece(pts[k], pts[k + 1])
    idx = np.searchsorted(pts, flat)
    phi = (spec.phi0 + spec.branch * acc[idx]).reshape(lams.shape)
    r = ai.constraints.radius(flat).reshape(lams.shape)
    return r, phi


def embed_grid(spec: SurfaceSpec, lams, vs, cfg: QuadratureConfig | None = None) -> np.ndarray:
    """Array of shape (len(lams), len(vs), 4)."""
    lams = np.asarray(lams, dtype=float)
    vs = np.asarray(vs, dtype=float)
    r, phi = profile_samples(spec, lams, cfg)
    coords = profile_coords(spec, r[:, None], phi[:, None])
    pts = embed_coords(spec.family, coords, vs[None, :])
    return np.stack([np.broadcast_to(p, (lams.size, vs.size)) for p in pts], axis=-1)


class LocalChart:
    """The surface near one lambda in mpmath precision.

    Radius and angle at the centre come from the float pipeline (an error there
    only shifts c and phi0, which leaves local geometry intact); offsets are
    integrated from the centre with fixed Gauss-Legendre rules at ``dps``
    digits so that finite-difference round-off stays negligible.
    """

    def __init__(self, spec: SurfaceSpec, lam0: float, phi_at: float | None = None,
                 cfg: QuadratureConfig | None = None, dps: int = 30, nodes: int = 20):
        self.spec = spec
        self.ai = AngleIntegral(spec)
        self.rf = self.ai.rf
        self.lam0 = float(lam0)
        self.dps = dps
        self.nodes = nodes
        cfg = cfg or spec.quadrature
        r0 = float(radius(self.rf, self.lam0))
        _check_regime(spec, self.lam0, r0)
        self.phi_center = float(integrate_phi(self.ai, cfg, self.lam0)) if phi_at is None else float(phi_at)
        with mpmath.workdps(dps):
            self._lam0 = mpmath.mpf(self.lam0)
            self._r0 = mpmath.mpf(r0)
            self._phi0 = mpmath.mpf(self.phi_center)

    def check_step(self, offsets):
        for k in offsets:
            lam = self.lam0 + float(k)
            bad = self.ai.constraints.first_violation(lam)
            if bad is not None:
                raise StepOutsideAdmissible(lam, bad)

    def _radius(self, t):
        if self.rf.mode is RadiusMode.CLOSED_FORM:
            return radius_closed_form(self.rf, t)
        return radius_local(self.rf, self._r0, self._lam0, t, self.nodes)

    def profile(self, dlam):
        """(radius, phi) at lam0 + dlam, as mpf."""
        with mpmath.workdps(self.dps):
            t = self._lam0 + mpmath.mpf(dlam)
            r = self._radius(t)
            if dlam == 0:
                return r, self._phi0
            g = lambda s: integrand_from_radius(self.spec, s, self._radius(s))
            phi = self._phi0 + self.spec.branch * gauss_legendre(g, self._lam0, t, self.nodes)
            return r, phi

    def coords(self, dlam):
        with mpmath.workdps(self.dps):
            r, phi = self.profile(dlam)
            return profile_coords(self.spec, r, phi)

    def point(self, dlam, v):
        with mpmath.workdps(self.dps):
            return embed_coords(self.spec.family, self.coords(dlam), mpmath.mpf(v))


def tangent_frame(spec: SurfaceSpec, lam: float, v: float, h: float, chart: LocalChart | None = None):
    """(r_lambda, r_v) as float arrays; r_lambda by central difference."""
    chart = chart or LocalChart(spec, lam)
    chart.check_step([-h, h])
    with mpmath.workdps(chart.dps):
        hp = mpmath.mpf(h)
        plus, minus = chart.point(hp, v), chart.point(-hp, v)
        r_lam = [(p - m) / (2 * hp) for p, m in zip(plus, minus)]
        r_v, _ = rotation_derivatives(spec.family, chart.coords(0), mpmath.mpf(v))
        return (np.array([float(x) for x in r_lam]), np.array([float(x) for x in r_v]))
