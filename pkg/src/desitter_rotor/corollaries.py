"""Closed-form interval tables for the constant-curvature relations.

Six configurations have tabulated admissible intervals, each split into cases
with guards on (H, c) or (a, c):

    cmc_spacelike     delta-families, eps = +1, kappa = -lam + 2H
    cmc_timelike      delta-families, eps = -1, kappa = lam - 2H
    cmc_second        second hyperbolic kind,  kappa = lam + 2H
    gauss_spacelike   delta-families, eps = +1, kappa = a / lam
    gauss_timelike    delta-families, eps = -1, kappa = a / lam
    gauss_second      second hyperbolic kind,  kappa = a / lam

Case ids are "<item><sub>-<roman>", e.g. "1b-ii": item 1 is the spherical
family (sub a for y < 1, b for y > 1), 2 the first hyperbolic kind and 3 the
parabolic family.  The tables are transcribed as published, including an
entry whose square-root argument does not match its neighbours (cmc_timelike
1a-i), and overlapping guards (cmc_spacelike 1b-i).  For kappa = a/lam the
point lam = 0 (a pole of f) is removed from every tabulated interval.

``oracle_diff`` compares a table with the numeric scan of
:func:`admissible_intervals`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .admissibility import DEFAULT_GRID, DEFAULT_WINDOW, AdmissibleInterval, admissible_intervals
from .errors import UnsupportedSpec
from .profile import RadiusMode, SurfaceFamily
from .relations import Linear, Power
from .spec import SphericalRegime, SurfaceSpec

INF = math.inf


def _sqrt(x):
    return math.sqrt(x) if x >= 0 else math.nan


def _abs_gt(p):
    return [(-INF, -p), (p, INF)]


def _sym(p, q):
    return [(-q, -p), (p, q)]


@dataclass(frozen=True)
class CorollaryCase:
    case_id: str
    active: bool
    intervals: tuple
    note: str = ""


@dataclass(frozen=True)
class CorollaryConfig:
    name: str
    item: str  # "1a", "1b", "2", "3" or "" for the second kind
    H: float | None = None
    a: float | None = None
    c: float = 1.0


def corollary_config(spec: SurfaceSpec) -> CorollaryConfig:
    """Identify which table applies; UnsupportedSpec when none does."""
    if spec.radius_mode is not RadiusMode.CLOSED_FORM:
        raise UnsupportedSpec("interval tables describe the closed-form radius only")
    rel, fam, eps = spec.rel, spec.family, spec.eps
    item = {SurfaceFamily.HYPERBOLIC_FIRST: "2", SurfaceFamily.PARABOLIC: "3",
            SurfaceFamily.HYPERBOLIC_SECOND: ""}.get(fam)
    if fam is SurfaceFamily.SPHERICAL:
        item = "1a" if spec.spherical_regime is SphericalRegime.Y_LESS_ONE else "1b"
    second = fam is SurfaceFamily.HYPERBOLIC_SECOND
    if isinstance(rel, Linear):
        if second and rel.a == 1:
            return CorollaryConfig("cmc_second", item, H=rel.b / 2, c=spec.c)
        if not second and rel.a == -eps:
            name = "cmc_spacelike" if eps == 1 else "cmc_timelike"
            return CorollaryConfig(name, item, H=eps * rel.b / 2, c=spec.c)
    if isinstance(rel, Power) and rel.m == -1:
        if second:
            return CorollaryConfig("gauss_second", item, a=rel.a, c=spec.c)
        name = "gauss_spacelike" if eps == 1 else "gauss_timelike"
        return CorollaryConfig(name, item, a=rel.a, c=spec.c)
    raise UnsupportedSpec("no interval table for this relation and family")


def _cmc_spacelike(item, H, c):
    c2 = c * c
    B = 0.5 * (c2 + 1 / c2)
    if item == "1a":
        return [CorollaryCase("1a", True, ((-INF, H - c2 / 2),))]
    if item == "1b":
        q = _sqrt(1 - 2 * H * c2 + c2 * c2)
        return [
            CorollaryCase("1b-i", H >= B or (c < 1 and 1 <= H < B) or H <= -1, ((H - c2 / 2, H),)),
            CorollaryCase("1b-ii", H < c2 / 2 or c2 / 2 < H < B, ((H - c2 / 2, (1 - q) / c2),)),
            CorollaryCase("1b-iii", c > 1 and 1 < H < B, (((1 + q) / c2, H),)),
        ]
    if item == "2":
        q = _sqrt(1 + 2 * H * c2 + c2 * c2)
        return [
            CorollaryCase("2-i", c > 1 and H <= -1 / c2, ((-INF, H),)),
            CorollaryCase("2-ii", c >= 1 and -1 <= H <= -1 / c2, ((-INF, (-1 - q) / c2),)),
            CorollaryCase("2-iii", (c < 1 and -B < H <= -1) or (c > 1 and H >= 1),
                          (((-1 + q) / c2, H),)),
        ]
    return [
        CorollaryCase("3-i", H < -1, ((-INF, H),)),
        CorollaryCase("3-ii", -1 <= H <= 1, ((-INF, -1.0),)),
        CorollaryCase("3-iii", H > 1, ((-INF, -1.0), (1.0, H))),
    ]


def _cmc_timelike(item, H, c):
    c2 = c * c
    A = 0.5 * (c2 - 1 / c2)
    if item == "1a":
        lo_root = (-1 - _sqrt(1 + 2 * H * c2 - c2 * c2)) / c2
        hi_root = (-1 + _sqrt(1 - 2 * H * c2 - c2 * c2)) / c2  # as published
        ivs, note = [], ""
        for iv in ((-INF, lo_root), (hi_root, H - c2 / 2)):
            if math.isnan(iv[0]) or math.isnan(iv[1]):
                note = "published endpoint has a negative square-root argument; piece dropped"
            else:
                ivs.append(iv)
        return [
            CorollaryCase("1a-i", H > A, tuple(ivs), note),
            CorollaryCase("1a-ii", H <= A, ((-INF, H - c2 / 2),)),
        ]
    if item == "1b":
        return [CorollaryCase("1b", True, ((H - c2 / 2, H),))]
    return [CorollaryCase(item, True, ((-INF, H),))]


def _cmc_second(H, c):
    c2 = c * c
    q = _sqrt(1 + 2 * H * c2 - c2 * c2)
    return [CorollaryCase("", H > 0.5 * (c2 - 1 / c2), (((1 - q) / c2, (1 + q) / c2),))]


def _gauss_spacelike(item, a, c):
    c2 = c * c
    if item == "1a":
        return [
            CorollaryCase("1a-i", a > -c2, tuple(_abs_gt(_sqrt(c2 + a)))),
            CorollaryCase("1a-ii", a <= -c2, ((-INF, INF),)),
        ]
    if item == "1b":
        return [
            CorollaryCase("1b-i", -c2 < a < 1, tuple(_sym(_sqrt((c2 + a) / (c2 + 1)), _sqrt(c2 + a)))),
            CorollaryCase("1b-ii", a > 1, tuple(_sym(_sqrt(a), _sqrt(c2 + a)))),
        ]
    if item == "2":
        return [
            CorollaryCase("2-i", a > 1 and c > 1, tuple(_abs_gt(_sqrt(a)))),
            CorollaryCase("2-ii", a < 1 < c2, tuple(_abs_gt(_sqrt((c2 - a) / (c2 - 1)) if c2 != 1 else INF))),
        ]
    return [
        CorollaryCase("3-i", a > 1, tuple(_abs_gt(_sqrt(a)))),
        CorollaryCase("3-ii", a <= 1, tuple(_abs_gt(1.0))),
    ]


def _gauss_timelike(item, a, c):
    c2 = c * c
    if item == "1a":
        return [
            CorollaryCase("1a-i", c2 > max(1.0, a), tuple(_abs_gt(_sqrt(c2 - a)))),
            CorollaryCase("1a-ii", a < c2 < 1,
                          tuple(_sym(_sqrt(c2 - a), _sqrt((c2 - a) / (1 - c2)) if c2 != 1 else INF))),
            CorollaryCase("1a-iii", 1 < c2 < a, tuple(_abs_gt(_sqrt((a - c2) / (c2 - 1))))),
        ]
    if item == "1b":
        return [
            CorollaryCase("1b-i", 0 <= a < c2, ((-_sqrt(c2 - a), _sqrt(c2 - a)),)),
            CorollaryCase("1b-ii", a < 0 and c < 1, tuple(_sym(_sqrt(-a), _sqrt(c2 - a)))),
        ]
    return [
        CorollaryCase(f"{item}-i", a < 0, tuple(_abs_gt(_sqrt(-a)))),
        CorollaryCase(f"{item}-ii", a >= 0, ((-INF, INF),)),
    ]


def _gauss_second(a, c):
    c2 = c * c
    return [
        CorollaryCase("i", a < c2 < 1, tuple(_abs_gt(_sqrt((c2 - a) / (1 - c2))))),
        CorollaryCase("ii", 1 < c2 < a, ((-_sqrt((a - c2) / (c2 - 1)), _sqrt((a - c2) / (c2 - 1))),)),
        CorollaryCase("iii", c2 <= min(a, 1.0), ((-INF, INF),)),
    ]


def _remove_zero(intervals):
    out = []
    for lo, hi in intervals:
        if lo < 0 < hi:
            out.extend([(lo, 0.0), (0.0, hi)])
        else:
            out.append((lo, hi))
    return tuple(out)


def corollary_cases(spec: SurfaceSpec) -> list:
    """Every case of the applicable table with its guard evaluated."""
    cfg = corollary_config(spec)
    if cfg.name == "cmc_spacelike":
        cases = _cmc_spacelike(cfg.item, cfg.H, cfg.c)
    elif cfg.name == "cmc_timelike":
        cases = _cmc_timelike(cfg.item, cfg.H, cfg.c)
    elif cfg.name == "cmc_second":
        cases = _cmc_second(cfg.H, cfg.c)
    elif cfg.name == "gauss_spacelike":
        cases = _gauss_spacelike(cfg.item, cfg.a, cfg.c)
    elif cfg.name == "gauss_timelike":
        cases = _gauss_timelike(cfg.item, cfg.a, cfg.c)
    else:
        cases = _gauss_second(cfg.a, cfg.c)
    if cfg.name.startswith("gauss"):
        cases = [CorollaryCase(k.case_id, k.active, _remove_zero(k.intervals), k.note) for k in cases]
    return cases


def _merge(intervals):
    """Union of open intervals; touching intervals stay separate (the shared
    endpoint is excluded from both)."""
    out = []
    for lo, hi in sorted(intervals):
        if out and lo < out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def corollary_intervals(spec: SurfaceSpec, window=DEFAULT_WINDOW) -> list:
    """Union of the intervals of all active cases, clipped to ``window``.

    Finite endpoints are labelled "table", window edges "window".
    """
    lo_w, hi_w = float(window[0]), float(window[1])
    raw = []
    for case in corollary_cases(spec):
        if case.active:
            raw.extend((max(lo, lo_w), min(hi, hi_w)) for lo, hi in case.intervals
                       if not (math.isnan(lo) or math.isnan(hi)))
    out = []
    for lo, hi in _merge([iv for iv in raw if iv[0] < iv[1]]):
        out.append(AdmissibleInterval(lo, hi, "window" if lo == lo_w else "table",
                                      "window" if hi == hi_w else "table"))
    return out


@dataclass
class OracleReport:
    numeric: list
    table: list
    active_cases: list
    max_endpoint_diff: float
    symmetric_difference: float
    match: bool
    notes: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "numeric": [iv.to_dict() for iv in self.numeric],
            "table": [iv.to_dict() for iv in self.table],
            "active_cases": self.active_cases,
            "max_endpoint_diff": self.max_endpoint_diff,
            "symmetric_difference": self.symmetric_difference,
            "match": self.match,
            "notes": self.notes,
        }


def _measure_outside(a_list, b_list):
    """Total length of the union of a_list not covered by b_list."""
    total = 0.0
    for a in a_list:
        covered = 0.0
        for b in b_list:
            covered += max(0.0, min(a.hi, b.hi) - max(a.lo, b.lo))
        total += a.length - covered
    return total


def oracle_diff(spec: SurfaceSpec, window=DEFAULT_WINDOW, grid: int = DEFAULT_GRID,
                tol: float = 1e-8) -> OracleReport:
    """Endpoint-by-endpoint comparison of the numeric scan with the table.

    ``match`` is True when both lists have the same number of intervals and
    every endpoint agrees within ``tol`` (relative to max(1, |endpoint|)), or
    when both are empty.
    """
    numeric = admissible_intervals(spec, window, grid)
    table = corollary_intervals(spec, window)
    cases = corollary_cases(spec)
    notes = [f"{k.case_id}: {k.note}" for k in cases if k.active and k.note]
    if len(numeric) == len(table):
        diffs = [abs(x - y) / max(1.0, abs(y))
                 for n, t in zip(numeric, table) for x, y in ((n.lo, t.lo), (n.hi, t.hi))]
        max_diff = max(diffs, default=0.0)
    else:
        max_diff = math.inf
    sym = _measure_outside(numeric, table) + _measure_outside(table, numeric)
    return OracleReport(numeric, table, [k.case_id for k in cases if k.active], float(max_diff),
                        float(sym), bool(max_diff <= tol), notes)
