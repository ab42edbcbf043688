"""Radius functions of the profile curve, parameterised by the principal curvature.

The radius is y (spherical), w (both hyperbolic kinds) or z (parabolic).  It
solves d(ln r)/d lam = 1/D(lam) where D = eps*f(lam) - lam for the three
delta-families and D = -(f(lam) + lam) for the second hyperbolic kind.

Closed forms exist for the two built-in relations::

    delta-family, Linear   r = c * W**(1/(eps*a - 1)),  W = (eps*a - 1)*lam + eps*b
    delta-family, Power    r = c * S**(1/(m - 1)),      S = lam**(1-m) - eps*a
    second kind,  Linear   r = c * Wbar**(-1/(a + 1)),  Wbar = (a + 1)*lam + b
    second kind,  Power    r = c * Sbar**(1/(m - 1)),   Sbar = lam**(1-m) + a

Quadrature mode integrates 1/D from ``lambda_ref`` instead, with r(lambda_ref) = c.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from ._backend import gauss_legendre, is_mp, is_scalar, lib
from .errors import DegenerateAt, DegenerateRelation, DomainError, QuadratureFailure, SingularPath, UnsupportedSpec
from .minkowski import AmbientForm
from .quadrature import QuadratureConfig, gauss_kronrod
from .relations import Custom, DenominatorKind, Linear, Power, WeingartenRelation, denominator


class SurfaceFamily(enum.Enum):
    SPHERICAL = "spherical"
    HYPERBOLIC_FIRST = "hyperbolic_first"
    HYPERBOLIC_SECOND = "hyperbolic_second"
    PARABOLIC = "parabolic"

    @property
    def delta(self):
        """1, -1, 0 for the delta-families; None for the second hyperbolic kind."""
        return {"spherical": 1, "hyperbolic_first": -1, "parabolic": 0}.get(self.value)

    @property
    def form(self) -> AmbientForm:
        return AmbientForm.PARABOLIC if self is SurfaceFamily.PARABOLIC else AmbientForm.STANDARD

    @property
    def denominator_kind(self) -> DenominatorKind:
        if self is SurfaceFamily.HYPERBOLIC_SECOND:
            return DenominatorKind.F_PLUS_LAMBDA
        return DenominatorKind.EPS_F_MINUS_LAMBDA


class RadiusMode(enum.Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


@dataclass(frozen=True)
class RadiusFunction:
    family: SurfaceFamily
    eps: int
    rel: WeingartenRelation
    c: float
    mode: RadiusMode = RadiusMode.CLOSED_FORM
    lambda_ref: float = 0.0
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ValueError(f"c must be positive and finite, got {self.c!r}")
        if self.eps not in (1, -1):
            raise ValueError(f"eps must be +1 or -1, got {self.eps!r}")
        if self.mode is RadiusMode.CLOSED_FORM and isinstance(self.rel, Custom):
            raise UnsupportedSpec("closed-form radius needs a Linear or Power relation")

    @property
    def second_kind(self) -> bool:
        return self.family is SurfaceFamily.HYPERBOLIC_SECOND


def log_radius_sign(family: SurfaceFamily) -> int:
    """Sign in front of the radius integral: -1 only for the second kind."""
    return -1 if family is SurfaceFamily.HYPERBOLIC_SECOND else 1


def radius_denominator(rf: RadiusFunction, lam):
    return denominator(rf.rel, rf.family.denominator_kind, rf.eps, lam)


def radius_exponent(rf: RadiusFunction) -> float:
    """p in r = c * base**p.  Raises DegenerateRelation where p is undefined."""
    rel = rf.rel
    if isinstance(rel, Linear):
        if rf.second_kind:
            if rel.a + 1 == 0:
                raise DegenerateRelation("second-kind linear radius needs a != -1")
            return -1.0 / (rel.a + 1)
        if rf.eps * rel.a - 1 == 0:
            raise DegenerateRelation("linear radius needs a != eps")
        return 1.0 / (rf.eps * rel.a - 1)
    if isinstance(rel, Power):
        if rel.m == 1:
            raise DegenerateRelation("power radius needs m != 1")
        return 1.0 / (rel.m - 1)
    raise UnsupportedSpec("no closed-form radius for a custom relation")


def _lam_power(lam, e: float):
    """lam**e; NaN (arrays) or DomainError (scalars) off the real domain."""
    integer = float(e).is_integer()
    if is_scalar(lam):
        if not integer and not lam > 0:
            raise DomainError(f"lambda**{e} needs lambda > 0 (got {float(lam)!r})")
        if e < 0 and lam == 0:
            raise DomainError(f"lambda**{e} is singular at lambda = 0")
        return lam ** int(e) if integer else lam**e
    lam = np.asarray(lam, dtype=float)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.power(lam, e)
    bad = ~np.isfinite(out)
    if not integer:
        bad |= lam <= 0
    return np.where(bad, np.nan, out)


def radius_base(rf: RadiusFunction, lam):
    """W, S, Wbar or Sbar at lam; the closed-form radius needs it positive."""
    rel = rf.rel
    if isinstance(rel, Linear):
        if rf.second_kind:
            return (rel.a + 1) * lam + rel.b
        return (rf.eps * rel.a - 1) * lam + rf.eps * rel.b
    if isinstance(rel, Power):
        lp = _lam_power(lam, 1 - rel.m)
        return lp + rel.a if rf.second_kind else lp - rf.eps * rel.a
    raise UnsupportedSpec("no closed-form radius for a custom relation")


def radius_closed_form(rf: RadiusFunction, lam):
    p = radius_exponent(rf)
    base = radius_base(rf, lam)
    if is_scalar(base):
        if not base > 0:
            raise DomainError(f"radius base {float(base)!r} <= 0 at lambda={float(lam)!r}")
        L = lib(base)
        return rf.c * L.exp(p * L.log(base))
    with np.errstate(invalid="ignore", divide="ignore"):
        out = rf.c * np.exp(p * np.log(base))
    return np.where(base > 0, out, np.nan)


def _check_path(rf: RadiusFunction, a: float, b: float, samples: int = 65):
    t = np.linspace(a, b, samples)
    d = np.asarray(radius_denominator(rf, t), dtype=float)
    if not np.all(np.isfinite(d)) or not (np.all(d > 0) or np.all(d < 0)):
        raise SingularPath(
            f"radius integrand is singular between lambda={a!r} and lambda={b!r}")


def _log_radius_scalar(rf: RadiusFunction, lam):
    sign = log_radius_sign(rf.family)
    if is_mp(lam):
        ref = mpmath.mpf(rf.lambda_ref)
        if lam == ref:
            return mpmath.mpf(0)
        _check_path(rf, float(ref), float(lam))
        return sign * mpmath.quad(lambda t: 1 / radius_denominator(rf, t), [ref, lam])
    lam = float(lam)
    if lam == rf.lambda_ref:
        return 0.0
    _check_path(rf, rf.lambda_ref, lam)
    q = rf.quadrature
    res = gauss_kronrod(lambda t: 1.0 / radius_denominator(rf, t), rf.lambda_ref, lam,
                        abs_tol=q.abs_tol, rel_tol=q.rel_tol,
                        max_subdivisions=q.max_subdivisions)
    return sign * res.value


def _log_radius_array(rf: RadiusFunction, lam: np.ndarray) -> np.ndarray:
    """Cumulative integration outward from lambda_ref over the sorted points.

    Each gap is integrated with 8- and 16-point Gauss-Legendre; gaps where the
    two disagree fall back to adaptive Gauss-Kronrod.  Points past the first
    gap where the denominator changes sign (or fails) are NaN.
    """
    ref = float(rf.lambda_ref)
    flat = lam.ravel()
    finite = np.isfinite(flat)
    pts = np.unique(np.concatenate([flat[finite], [ref]]))
    iref = int(np.searchsorted(pts, ref))
    d_ref = float(radius_denominator(rf, np.array([ref]))[0])
    out_sorted = np.full(pts.shape, np.nan)
    if not (np.isfinite(d_ref) and d_ref != 0):
        return np.full(lam.shape, np.nan)
    out_sorted[iref] = 0.0
    q = rf.quadrature
    inv_d = lambda t: 1.0 / np.asarray(radius_denominator(rf, t), dtype=float)
    x16, w16 = np.polynomial.legendre.leggauss(16)
    x8, w8 = np.polynomial.legendre.leggauss(8)

    def gap_integrals(lo, hi):
        half = 0.5 * (hi - lo)[:, None]
        mid = 0.5 * (hi + lo)[:, None]
        with np.errstate(all="ignore"):
            d16 = np.asarray(radius_denominator(rf, mid + half * x16), dtype=float)
            d8 = np.asarray(radius_denominator(rf, mid + half * x8), dtype=float)
            d_ends = np.asarray(radius_denominator(rf, np.stack([lo, hi], axis=1)), dtype=float)
            ok = (np.all(np.isfinite(d16), axis=1) & np.all(np.sign(d16) == np.sign(d_ref), axis=1)
                  & np.all(np.sign(d_ends) == np.sign(d_ref), axis=1))
            g16 = half[:, 0] * ((1.0 / d16) @ w16)
            g8 = half[:, 0] * ((1.0 / d8) @ w8)
        tol = np.maximum(q.abs_tol, q.rel_tol * np.abs(g16))
        for i in np.flatnonzero(ok & ~(np.abs(g16 - g8) <= tol)):
            try:
                g16[i] = gauss_kronrod(inv_d, lo[i], hi[i], abs_tol=q.abs_tol, rel_tol=q.rel_tol,
                                       max_subdivisions=q.max_subdivisions).value
            except QuadratureFailure:
                ok[i] = False
        return np.where(ok, g16, np.nan)

    sign = log_radius_sign(rf.family)
    if iref + 1 < pts.size:
        up = gap_integrals(pts[iref:-1], pts[iref + 1:])
        out_sorted[iref + 1:] = sign * np.cumsum(up)  # NaN propagates past a bad gap
    if iref > 0:
        down = gap_integrals(pts[:iref], pts[1:iref + 1])[::-1]
        out_sorted[:iref] = (-sign * np.cumsum(down))[::-1]
    out = np.full(flat.shape, np.nan)
    out[finite] = out_sorted[np.searchsorted(pts, flat[finite])]
    return out.reshape(lam.shape)


def radius_quadrature(rf: RadiusFunction, lam):
    """c * exp(+-int_{lambda_ref}^{lam} dt / D(t)).

    Scalars raise SingularPath when D vanishes or changes sign on the path;
    arrays return NaN at such points.
    """
    if is_scalar(lam):
        return rf.c * lib(lam).exp(_log_radius_scalar(rf, lam))
    return rf.c * np.exp(_log_radius_array(rf, np.asarray(lam, dtype=float)))


def radius(rf: RadiusFunction, lam):
    """Radius in the function's own evaluation mode."""
    if rf.mode is RadiusMode.QUADRATURE:
        return radius_quadrature(rf, lam)
    return radius_closed_form(rf, lam)


def radius_local(rf: RadiusFunction, r0, lam0, lam, n: int = 24):
    """Radius at ``lam`` given its value ``r0`` at a nearby ``lam0``.

    Integrates 1/D over the short step with a fixed Gauss-Legendre rule, in
    whatever precision the arguments carry.  Used by finite-difference stencils.
    """
    if rf.mode is RadiusMode.CLOSED_FORM:
        return radius_closed_form(rf, lam)
    if lam == lam0:
        return r0
    step = gauss_legendre(lambda t: 1 / radius_denominator(rf, t), lam0, lam, n)
    return r0 * lib(lam).exp(log_radius_sign(rf.family) * step)


def log_radius_derivative(rf: RadiusFunction, lam):
    """d(ln r)/d lam = 1/(eps*f - lam), or -1/(f + lam) for the second kind."""
    d = radius_denominator(rf, lam)
    if is_scalar(d):
        if d == 0:
            raise DegenerateAt(lam)
        return log_radius_sign(rf.family) / d
    with np.errstate(divide="ignore", invalid="ignore"):
        out = log_radius_sign(rf.family) / np.asarray(d, dtype=float)
    return np.where(d == 0, np.nan, out)
