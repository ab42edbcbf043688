"""Strict sign constraints on lambda and the maximal open intervals where all hold.

Constraint ids:

``denominator``  eps*f - lam (or f + lam) must not vanish; a sign change is a
                 boundary even when it happens through a pole of f.
``radius_base``  W, S, Wbar or Sbar > 0 (closed-form radius only).
``radius``       the quadrature radius exists, i.e. lam is reachable from
                 lambda_ref without crossing a zero of the denominator.
``regime``       y < 1 or y > 1 (spherical, as selected); w < 1 (second kind).
``radicand``     the square root in the angle integrand is real and nonzero.
``window``       artificial: the search window edge.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .profile import (RadiusMode, SurfaceFamily, radius, radius_base, radius_denominator,
                      radius_local)
from .spec import SphericalRegime, SurfaceSpec

POSITIVE = "positive"
NONZERO = "nonzero"


@dataclass(frozen=True)
class Constraint:
    name: str
    kind: str
    uses_radius: bool
    fn: Callable  # (lam, r) -> value, float arrays in and out

    def state(self, values):
        """Comparable state per point: 1/0 (positive kind) or sign (nonzero kind).

        NaN counts as violated.  A boundary lies wherever the state changes.
        """
        v = np.asarray(values, dtype=float)
        if self.kind == POSITIVE:
            return np.where(v > 0, 1, 0)
        return np.where(np.isfinite(v), np.sign(v), 0).astype(int)

    def satisfied(self, values):
        v = np.asarray(values, dtype=float)
        if self.kind == POSITIVE:
            return v > 0
        return np.isfinite(v) & (v != 0)


class ConstraintSet:
    """All constraints of one surface spec, evaluated on float arrays."""

    def __init__(self, spec: SurfaceSpec):
        self.spec = spec
        self.rf = spec.radius_function()
        self.constraints = _build(spec, self.rf)

    def __iter__(self):
        return iter(self.constraints)

    def names(self):
        return [c.name for c in self.constraints]

    def radius(self, lam):
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        with np.errstate(all="ignore"):
            return np.asarray(radius(self.rf, lam), dtype=float)

    def values(self, lam, r=None) -> dict:
        lam = np.atleast_1d(np.asarray(lam, dtype=float))
        if r is None:
            r = self.radius(lam)
        with np.errstate(all="ignore"):
            return {c.name: np.asarray(c.fn(lam, r), dtype=float) * np.ones_like(lam)
                    for c in self.constraints}

    def satisfied(self, lam, r=None):
        vals = self.values(lam, r)
        ok = np.ones(np.shape(np.atleast_1d(lam)), dtype=bool)
        for c in self.constraints:
            ok &= c.satisfied(vals[c.name])
        return ok

    def first_violation(self, lam, r=None):
        """Name of the first violated constraint at scalar ``lam``, or None."""
        vals = self.values(lam, None if r is None else np.atleast_1d(float(r)))
        for c in self.constraints:
            if not c.satisfied(vals[c.name])[0]:
                return c.name
        return None


def radicand(spec: SurfaceSpec, lam, r):
    """The expression under the square root of the angle integrand."""
    fam, eps = spec.family, spec.eps
    if fam is SurfaceFamily.SPHERICAL:
        return (lam * lam - eps) * r * r + eps
    if fam is SurfaceFamily.HYPERBOLIC_FIRST:
        return (lam * lam - eps) * r * r - eps
    if fam is SurfaceFamily.HYPERBOLIC_SECOND:
        return 1 - (lam * lam + 1) * r * r
    return lam * lam - eps


def regime_value(spec: SurfaceSpec, r):
    """Positive iff the radius lies on the side of 1 the family needs; None if free."""
    if spec.family is SurfaceFamily.SPHERICAL:
        return 1 - r * r if spec.spherical_regime is SphericalRegime.Y_LESS_ONE else r * r - 1
    if spec.family is SurfaceFamily.HYPERBOLIC_SECOND:
        return 1 - r * r
    return None


def _build(spec: SurfaceSpec, rf) -> list:
    out = [Constraint("denominator", NONZERO, False, lambda lam, r: radius_denominator(rf, lam))]
    if spec.radius_mode is RadiusMode.CLOSED_FORM:
        out.append(Constraint("radius_base", POSITIVE, False, lambda lam, r: radius_base(rf, lam)))
    else:
        out.append(Constraint("radius", POSITIVE, True, lambda lam, r: r))
    if regime_value(spec, 0.5) is not None:
        out.append(Constraint("regime", POSITIVE, True, lambda lam, r: regime_value(spec, r)))
    uses_r = spec.family is not SurfaceFamily.PARABOLIC
    out.append(Constraint("radicand", POSITIVE, uses_r, lambda lam, r: radicand(spec, lam, r)))
    return out


@dataclass(frozen=True)
class AdmissibleInterval:
    lo: float
    hi: float
    binding_lo: str
    binding_hi: str

    def __post_init__(self):
        object.__setattr__(self, "lo", float(self.lo))
        object.__setattr__(self, "hi", float(self.hi))
        if not self.lo < self.hi:
            raise ValueError(f"empty interval ({self.lo!r}, {self.hi!r})")

    def contains(self, lam) -> bool:
        return self.lo < lam < self.hi

    @property
    def length(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "binding_lo": self.binding_lo,
                "binding_hi": self.binding_hi}


DEFAULT_WINDOW = (-50.0, 50.0)
DEFAULT_GRID = 100_000
ROOT_RTOL = 1e-12

_PRIORITY = ["denominator", "radius_base", "radius", "regime", "radicand"]


def admissible_intervals(spec: SurfaceSpec, window: Sequence[float] = DEFAULT_WINDOW,
                         grid: int = DEFAULT_GRID) -> list:
    """Maximal open lambda-intervals inside ``window`` where every constraint holds.

    Each constraint is sampled on a uniform grid; every change of its state is
    refined by bisection to ``ROOT_RTOL`` relative.  The boundaries of all
    constraints cut the window into cells, and a cell is admissible when every
    constraint holds at its midpoint.  Two sign changes of one constraint
    within a single grid step are not resolved.
    """
    lo, hi = float(window[0]), float(window[1])
    if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
        raise ValueError(f"window must be finite and increasing, got {window!r}")
    if int(grid) < 1000:
        raise ValueError("grid must be at least 1000")
    cs = ConstraintSet(spec)
    t = np.linspace(lo, hi, int(grid))
    r = cs.radius(t)
    vals = cs.values(t, r)

    def radius_near(x, i):
        # radius at x inside grid step i, from the nearer finite grid value
        if spec.radius_mode is RadiusMode.CLOSED_FORM:
            return cs.radius(x)
        with np.errstate(all="ignore"):
            dx = float(radius_denominator(cs.rf, np.array([float(x)]))[0])
        for j in (i, i + 1):
            if np.isfinite(r[j]) and np.sign(dx) == np.sign(vals["denominator"][j]) != 0:
                with np.errstate(all="ignore"):
                    return np.atleast_1d(float(radius_local(cs.rf, r[j], t[j], float(x))))
        return np.array([np.nan])

    def state_at(c, x, i):
        rx = radius_near(x, i) if c.uses_radius else np.array([np.nan])
        with np.errstate(all="ignore"):
            return int(c.state(c.fn(np.array([x]), rx) * np.ones(1))[0])

    bounds = []  # (position, constraint name)
    for c in cs:
        s = c.state(vals[c.name])
        for i in np.flatnonzero(s[:-1] != s[1:]):
            a, b = t[i], t[i + 1]
            sa = int(s[i])
            while b - a > ROOT_RTOL * max(1.0, abs(a)):
                m = 0.5 * (a + b)
                if state_at(c, m, i) == sa:
                    a = m
                else:
                    b = m
            bounds.append((0.5 * (a + b), c.name))

    # boundaries found by several constraints at the same place are one
    # boundary, attributed to the highest-priority constraint
    bounds.sort()
    points, names = [lo], ["window"]
    for x, name in bounds:
        if x - points[-1] <= 10 * ROOT_RTOL * max(1.0, abs(x)):
            if names[-1] != "window" and _PRIORITY.index(name) < _PRIORITY.index(names[-1]):
                names[-1] = name
            continue
        points.append(x)
        names.append(name)
    points.append(hi)
    names.append("window")

    out = []
    for k in range(len(points) - 1):
        a, b = points[k], points[k + 1]
        if not b > a:
            continue
        mid = 0.5 * (a + b)
        i = min(max(int(np.searchsorted(t, mid)) - 1, 0), t.size - 2)
        if cs.satisfied(np.array([mid]), radius_near(mid, i))[0]:
            out.append(AdmissibleInterval(a, b, names[k], names[k + 1]))
    return out


def interval_containing(intervals, lam):
    for iv in intervals:
        if iv.contains(lam):
            return iv
    return None
