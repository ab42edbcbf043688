"""Independent curvature check of an assembled surface.

Fundamental forms come from central differences of the embedding (evaluated
in mpmath precision through :class:`LocalChart`) and the exact rotation
derivatives.  The coordinates are curvature-line coordinates, so the shape
operator is diagonal and its entries are the principal curvatures::

    kappa_profile  = s * L / |E|
    kappa_rotation = s * N / |G|

i.e. the normal curvatures along unit tangent vectors.  The normal sign s and
the assignment of (profile, rotation) to (kappa, lambda) are calibrated once
per spec at lambda_ref and then frozen.  The derived mean curvature is half the
trace of the shape operator, s * (L/E + N/G) / 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np

from .errors import DegenerateFrame, NonDiagonal
from .minkowski import bilinear, quadric_residual
from .profile import SurfaceFamily
from .relations import Linear, Power, eval_f
from .spec import SurfaceSpec
from .surface import LocalChart, embed_coords, profile_samples, rotation_derivatives

DEFAULT_V = 0.3
COND_LIMIT = 1e12


def default_step(lam: float) -> float:
    return 1e-5 * max(1.0, abs(lam))


@dataclass(frozen=True)
class FundamentalForms:
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    normal_sign: int = 1


@dataclass(frozen=True)
class Tolerances:
    param: float = 1e-4
    weingarten: float = 1e-4
    cross: float = 1e-6
    H: float = 2e-4
    K: float = 2e-4
    quadric: float = 1e-9


@dataclass(frozen=True)
class Calibration:
    """Frozen orientation choices for one spec.

    ``swap`` False means the rotation direction carries lambda and the profile
    direction carries kappa.  ``h_sign`` relates the derived mean curvature to
    the H of the relation.
    """

    normal_sign: int = 1
    swap: bool = False
    h_sign: int = 1


@dataclass(frozen=True)
class CurvatureReport:
    lam_input: float
    v: float
    kappa_measured: float
    lambda_measured: float
    weingarten_residual: float
    parameter_residual: float
    H_derived: float
    K_ext_derived: float
    F: float
    M: float
    quadric_residual: float

    def within(self, tol: Tolerances, h: float) -> bool:
        bound = max(tol.param, 1e3 * h * h)
        return abs(self.parameter_residual) <= bound and abs(self.weingarten_residual) <= max(tol.weingarten, 1e3 * h * h)


def _mp_vec(x):
    return [mpmath.mpf(c) if not isinstance(c, mpmath.mpf) else c for c in x]


@dataclass
class _Stencil:
    R: list
    r_lam: list
    r_v: list
    r_ll: list
    r_lv: list
    r_vv: list


def _stencil(chart: LocalChart, v: float, h: float) -> _Stencil:
    fam = chart.spec.family
    chart.check_step([-2 * h, 2 * h])
    with mpmath.workdps(chart.dps):
        hp, vp = mpmath.mpf(h), mpmath.mpf(v)
        c0, cp, cm = chart.coords(0), chart.coords(hp), chart.coords(-hp)
        P0, Pp, Pm = (embed_coords(fam, c, vp) for c in (c0, cp, cm))
        r_lam = [(a - b) / (2 * hp) for a, b in zip(Pp, Pm)]
        r_ll = [(a - 2 * b + c) / (hp * hp) for a, b, c in zip(Pp, P0, Pm)]
        r_v, r_vv = rotation_derivatives(fam, c0, vp)
        rv_p, _ = rotation_derivatives(fam, cp, vp)
        rv_m, _ = rotation_derivatives(fam, cm, vp)
        r_lv = [(a - b) / (2 * hp) for a, b in zip(rv_p, rv_m)]
        return _Stencil(_mp_vec(P0), r_lam, _mp_vec(r_v), r_ll, r_lv, _mp_vec(r_vv))


def _normal(form, R, r_lam, r_v):
    """Cofactor solution of g(xi, R) = g(xi, r_lam) = g(xi, r_v) = 0, normalised."""
    gram = form.gram
    rows = [[sum(vec[i] * gram[i][j] for i in range(4)) for j in range(4)] for vec in (R, r_lam, r_v)]
    fl = np.array([[float(x) for x in row] for row in rows])
    scale = np.linalg.norm(fl, axis=1)
    if np.any(scale == 0) or np.linalg.cond(fl / scale[:, None]) > COND_LIMIT:
        raise DegenerateFrame("position and tangent vectors are nearly dependent")
    xi = []
    for j in range(4):
        cols = [k for k in range(4) if k != j]
        m = mpmath.matrix([[rows[i][k] for k in cols] for i in range(3)])
        xi.append((-1) ** j * mpmath.det(m))
    nn = bilinear(form, xi, xi)
    size = max(abs(x) for x in xi)
    if abs(nn) <= 1e-12 * size * size:
        raise DegenerateFrame("normal vector is null")
    norm = mpmath.sqrt(abs(nn))
    return [x / norm for x in xi]


def unit_normal(spec: SurfaceSpec, lam: float, v: float, h: float | None = None,
                chart: LocalChart | None = None, normal_sign: int = 1) -> np.ndarray:
    h = default_step(lam) if h is None else h
    chart = chart or LocalChart(spec, lam)
    st = _stencil(chart, v, h)
    with mpmath.workdps(chart.dps):
        xi = _normal(spec.form, st.R, st.r_lam, st.r_v)
    return normal_sign * np.array([float(x) for x in xi])


def _forms_mp(spec, st: _Stencil):
    # L, M, N use the raw cofactor normal; the calibrated sign is applied by
    # the consumers of FundamentalForms.normal_sign
    form = spec.form
    xi = _normal(form, st.R, st.r_lam, st.r_v)
    g = lambda a, b: bilinear(form, a, b)
    return (g(st.r_lam, st.r_lam), g(st.r_lam, st.r_v), g(st.r_v, st.r_v),
            g(st.r_ll, xi), g(st.r_lv, xi), g(st.r_vv, xi))


def fundamental_forms(spec: SurfaceSpec, lam: float, v: float, h: float | None = None,
                      chart: LocalChart | None = None, normal_sign: int = 1) -> FundamentalForms:
    h = default_step(lam) if h is None else h
    chart = chart or LocalChart(spec, lam)
    st = _stencil(chart, v, h)
    with mpmath.workdps(chart.dps):
        vals = _forms_mp(spec, st)
    return FundamentalForms(*(float(x) for x in vals), normal_sign=normal_sign)


def principal_curvatures(ff: FundamentalForms, cross_tol: float = 1e-6):
    """(kappa_profile, kappa_rotation) = (s L/|E|, s N/|G|)."""
    det = abs(ff.E * ff.G)
    if det == 0:
        raise DegenerateFrame("degenerate first fundamental form")
    root = math.sqrt(det)
    k_prof = ff.normal_sign * ff.L / abs(ff.E)
    k_rot = ff.normal_sign * ff.N / abs(ff.G)
    if abs(ff.F) / root > cross_tol or abs(ff.M) / root > cross_tol * max(1.0, abs(k_prof), abs(k_rot)):
        raise NonDiagonal(f"cross terms F={ff.F:.3e}, M={ff.M:.3e} exceed tolerance")
    return k_prof, k_rot


def half_trace(ff: FundamentalForms) -> float:
    """Derived mean curvature: half the trace of the shape operator."""
    return 0.5 * ff.normal_sign * (ff.L / ff.E + ff.N / ff.G)


def relation_mean_curvature(spec: SurfaceSpec):
    """H for the constant-mean-curvature relations, else None.

    kappa = -lam + 2H (spacelike), kappa = lam - 2H (timelike delta-families),
    kappa = lam + 2H (second kind).
    """
    rel = spec.rel
    if not isinstance(rel, Linear):
        return None
    if spec.family is SurfaceFamily.HYPERBOLIC_SECOND:
        return rel.b / 2 if rel.a == 1 else None
    if rel.a == -spec.eps:
        return spec.eps * rel.b / 2
    return None


def relation_gauss_constant(spec: SurfaceSpec):
    rel = spec.rel
    if isinstance(rel, Power) and rel.m == -1:
        return rel.a
    return None


def _assign(ff: FundamentalForms, swap: bool):
    k_prof = ff.normal_sign * ff.L / abs(ff.E)
    k_rot = ff.normal_sign * ff.N / abs(ff.G)
    return (k_rot, k_prof) if swap else (k_prof, k_rot)  # (kappa, lambda)


def calibrate(spec: SurfaceSpec, v: float = DEFAULT_V, h: float | None = None,
              chart: LocalChart | None = None) -> Calibration:
    """Choose normal sign and direction assignment at lambda_ref.

    The pair minimising |lambda_meas - lambda_ref| + |kappa_meas - f(lambda_ref)|
    wins.  The kappa term breaks the tie when lambda_ref = 0.
    """
    lam = spec.lambda_ref
    h = default_step(lam) if h is None else h
    chart = chart or LocalChart(spec, lam)
    base = fundamental_forms(spec, lam, v, h, chart)
    f_ref = float(eval_f(spec.rel, lam))
    best = None
    for s in (1, -1):
        ff = FundamentalForms(base.E, base.F, base.G, base.L, base.M, base.N, s)
        for swap in (False, True):
            kappa, lam_m = _assign(ff, swap)
            score = abs(lam_m - lam) + abs(kappa - f_ref)
            if best is None or score < best[0]:
                best = (score, s, swap, ff)
    _, s, swap, ff = best
    H = relation_mean_curvature(spec)
    h_sign = 1
    if H is not None and H != 0:
        h_sign = 1 if half_trace(ff) * H >= 0 else -1
    return Calibration(s, swap, h_sign)


def verify_point(spec: SurfaceSpec, lam: float, v: float = DEFAULT_V, h: float | None = None,
                 tolerances: Tolerances = Tolerances(), calibration: Calibration | None = None,
                 chart: LocalChart | None = None) -> CurvatureReport:
    h = default_step(lam) if h is None else h
    calibration = calibration or calibrate(spec, v)
    chart = chart or LocalChart(spec, lam)
    ff = fundamental_forms(spec, lam, v, h, chart, calibration.normal_sign)
    principal_curvatures(ff, tolerances.cross)
    kappa, lam_m = _assign(ff, calibration.swap)
    f_meas = float(eval_f(spec.rel, lam_m))
    with mpmath.workdps(chart.dps):
        q = float(quadric_residual(spec.form, chart.point(0, v)))
    return CurvatureReport(
        lam_input=float(lam), v=float(v), kappa_measured=kappa, lambda_measured=lam_m,
        weingarten_residual=kappa - f_meas, parameter_residual=lam_m - lam,
        H_derived=calibration.h_sign * half_trace(ff), K_ext_derived=kappa * lam_m,
        F=ff.F, M=ff.M, quadric_residual=q)


@dataclass
class SweepSummary:
    reports: list = field(default_factory=list)
    max_quadric: float = 0.0
    max_param: float = 0.0
    max_weingarten: float = 0.0
    max_H_spread: float | None = None
    max_K_spread: float | None = None
    H_mean: float | None = None

    def to_dict(self) -> dict:
        out = {"max_quadric": self.max_quadric, "max_param": self.max_param,
               "max_weingarten": self.max_weingarten}
        if self.max_H_spread is not None:
            out["max_H_spread"] = self.max_H_spread
            out["H_mean"] = self.H_mean
        if self.max_K_spread is not None:
            out["max_K_spread"] = self.max_K_spread
        return out


def verify_sweep(spec: SurfaceSpec, lams, v: float = DEFAULT_V, h: float | None = None,
                 tolerances: Tolerances = Tolerances(), dps: int = 30) -> SweepSummary:
    """verify_point over many lambda values with one calibration.

    ``h`` None uses default_step(lam) per point.  The constant-curvature spread
    is the largest deviation from the relation's H (|H_derived| vs |H|) or a.
    """
    lams = np.asarray(lams, dtype=float)
    _, phis = profile_samples(spec, lams)
    cal = calibrate(spec, v, h, LocalChart(spec, spec.lambda_ref, dps=dps))
    reports = []
    for lam, phi in zip(lams, phis):
        chart = LocalChart(spec, lam, phi_at=phi, dps=dps)
        reports.append(verify_point(spec, lam, v, h, tolerances, cal, chart))
    out = SweepSummary(reports)
    out.max_quadric = max(abs(r.quadric_residual) for r in reports)
    out.max_param = max(abs(r.parameter_residual) for r in reports)
    out.max_weingarten = max(abs(r.weingarten_residual) for r in reports)
    H = relation_mean_curvature(spec)
    if H is not None:
        vals = np.array([r.H_derived for r in reports])
        out.H_mean = float(vals.mean())
        out.max_H_spread = float(max(vals.max() - vals.min(), np.max(np.abs(np.abs(vals) - abs(H)))))
    a = relation_gauss_constant(spec)
    if a is not None:
        vals = np.array([r.K_ext_derived for r in reports])
        out.max_K_spread = float(np.max(np.abs(vals - a)))
    return out
