"""Command line front end.

    desitter-rotor {generate|verify|intervals} --config FILE [--out PATH]

The config is a JSON document::

    {
      "surface": {"family": "spherical", "epsilon": 1,
                  "relation": {"kind": "linear", "a": -1, "b": 4},
                  "c": 1.0, "phi0": 0.0, "branch": 1, "lambda_ref": 0.0,
                  "spherical_regime": "y_less_one", "radius_mode": "closed_form"},
      "sampling": {"lambda_samples": 50, "v_range": [0, 6.283185307179586],
                   "v_samples": 50, "margin": 0.05},
      "output": {"path": "mesh.obj", "format": "obj", "projection": "drop4"},
      "quadrature": {"abs_tol": 1e-12, "rel_tol": 1e-12, "max_subdivisions": 500,
                     "endpoint_inset": 1e-10},
      "tolerances": {"param": 1e-4, "weingarten": 1e-4, "cross": 1e-6,
                     "H": 2e-4, "K": 2e-4, "quadric": 1e-9},
      "verify": {"v": 0.3, "h": null, "dps": 30},
      "window": [-50, 50],
      "grid": 100000
    }

Only "surface" is required.  Exit codes: 0 success, 1 verification failure,
2 config or I/O error, 3 domain error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field, fields

import numpy as np

from .admissibility import DEFAULT_GRID, DEFAULT_WINDOW, admissible_intervals, interval_containing
from .corollaries import oracle_diff
from .curvature import Tolerances, default_step, verify_sweep
from .errors import ConfigError, NoAdmissibleInterval, RotorError, UnsupportedSpec
from .export import WRITERS, MeshOutput, Projection, default_projection, sample_mesh
from .profile import RadiusMode, SurfaceFamily
from .quadrature import QuadratureConfig
from .relations import relation_from_dict, relation_to_dict
from .spec import SphericalRegime, SurfaceSpec

EXIT_OK, EXIT_VERIFY_FAILED, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass
class RunConfig:
    spec: SurfaceSpec
    lambda_samples: int = 50
    v_range: tuple = (0.0, 2 * math.pi)
    v_samples: int = 50
    margin: float = 0.05
    output_path: str | None = None
    output_format: str = "obj"
    projection: Projection | None = None
    tolerances: Tolerances = field(default_factory=Tolerances)
    window: tuple = DEFAULT_WINDOW
    grid: int = DEFAULT_GRID
    verify_v: float = 0.3
    verify_h: float | None = None
    verify_dps: int = 30

    def __post_init__(self):
        if self.lambda_samples < 2 or self.v_samples < 2:
            raise ConfigError("lambda_samples and v_samples must be at least 2")
        if not 0 < self.margin < 0.5:
            raise ConfigError("margin must lie in (0, 0.5)")
        v0, v1 = self.v_range
        if not v0 < v1:
            raise ConfigError("v_range must be increasing")
        if self.spec.family is SurfaceFamily.SPHERICAL and not (0 <= v0 and v1 <= 2 * math.pi + 1e-12):
            raise ConfigError("v_range must lie inside [0, 2*pi] for spherical surfaces")
        if self.output_format not in WRITERS:
            raise ConfigError(f"output format must be one of {sorted(WRITERS)}")
        if self.projection is None:
            self.projection = default_projection(self.spec.family)


def _enum(cls, value, what):
    try:
        return cls(value)
    except ValueError:
        raise ConfigError(f"unknown {what} {value!r}; expected one of {[e.value for e in cls]}") from None


def _subset(cls, data: dict, what: str):
    names = {f.name for f in fields(cls)}
    unknown = set(data) - names
    if unknown:
        raise ConfigError(f"unknown {what} keys {sorted(unknown)}")
    return cls(**data)


def spec_from_dict(d: dict, quadrature: QuadratureConfig | None = None) -> SurfaceSpec:
    try:
        family = _enum(SurfaceFamily, d["family"], "family")
        regime = d.get("spherical_regime")
        return SurfaceSpec(
            family=family,
            eps=d.get("epsilon"),
            rel=relation_from_dict(d["relation"]),
            c=float(d["c"]),
            phi0=float(d.get("phi0", 0.0)),
            branch=int(d.get("branch", 1)),
            lambda_ref=float(d.get("lambda_ref", 0.0)),
            spherical_regime=None if regime is None else _enum(SphericalRegime, regime, "spherical_regime"),
            radius_mode=_enum(RadiusMode, d.get("radius_mode", "closed_form"), "radius_mode"),
            quadrature=quadrature or QuadratureConfig(),
        )
    except KeyError as exc:
        raise ConfigError(f"surface is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def spec_to_dict(spec: SurfaceSpec) -> dict:
    return {
        "family": spec.family.value, "epsilon": spec.eps, "relation": relation_to_dict(spec.rel),
        "c": spec.c, "phi0": spec.phi0, "branch": spec.branch, "lambda_ref": spec.lambda_ref,
        "spherical_regime": None if spec.spherical_regime is None else spec.spherical_regime.value,
        "radius_mode": spec.radius_mode.value,
    }


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict) or "surface" not in doc:
        raise ConfigError("config must be a JSON object with a 'surface' entry")
    known = {"surface", "sampling", "output", "quadrature", "tolerances", "verify", "window", "grid"}
    if set(doc) - known:
        raise ConfigError(f"unknown config keys {sorted(set(doc) - known)}")
    try:
        quad = _subset(QuadratureConfig, doc.get("quadrature", {}), "quadrature")
        tol = _subset(Tolerances, doc.get("tolerances", {}), "tolerances")
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from None
    spec = spec_from_dict(doc["surface"], quad)
    sampling = doc.get("sampling", {})
    output = doc.get("output", {})
    verify = doc.get("verify", {})
    try:
        projection = output.get("projection")
        return RunConfig(
            spec=spec,
            lambda_samples=int(sampling.get("lambda_samples", 50)),
            v_range=tuple(float(x) for x in sampling.get("v_range", (0.0, 2 * math.pi))),
            v_samples=int(sampling.get("v_samples", 50)),
            margin=float(sampling.get("margin", 0.05)),
            output_path=output.get("path"),
            output_format=output.get("format", "obj"),
            projection=None if projection is None else _enum(Projection, projection, "projection"),
            tolerances=tol,
            window=tuple(float(x) for x in doc.get("window", DEFAULT_WINDOW)),
            grid=int(doc.get("grid", DEFAULT_GRID)),
            verify_v=float(verify.get("v", 0.3)),
            verify_h=None if verify.get("h") is None else float(verify["h"]),
            verify_dps=int(verify.get("dps", 30)),
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from None


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from None
    return config_from_dict(doc)


def sampling_interval(cfg: RunConfig):
    intervals = admissible_intervals(cfg.spec, cfg.window, cfg.grid)
    iv = interval_containing(intervals, cfg.spec.lambda_ref)
    if iv is None:
        raise NoAdmissibleInterval(
            f"no admissible interval contains lambda_ref={cfg.spec.lambda_ref!r} "
            f"({len(intervals)} interval(s) in the window)")
    return iv


def lambda_grid(cfg: RunConfig):
    iv = sampling_interval(cfg)
    trim = cfg.margin * iv.length
    return iv, np.linspace(iv.lo + trim, iv.hi - trim, cfg.lambda_samples)


def run_generate(cfg: RunConfig) -> MeshOutput:
    iv, lams = lambda_grid(cfg)
    vs = np.linspace(cfg.v_range[0], cfg.v_range[1], cfg.v_samples)
    mesh = sample_mesh(cfg.spec, lams, vs, cfg.projection)
    mesh.interval = iv
    return mesh


def write_mesh(cfg: RunConfig, mesh: MeshOutput, path: str | None):
    writer = WRITERS[cfg.output_format]
    if path is None or path == "-":
        if cfg.output_format == "json":
            writer(mesh, sys.stdout, {"surface": spec_to_dict(cfg.spec)})
        else:
            writer(mesh, sys.stdout)
        return
    with open(path, "w", newline="\n") as fh:
        if cfg.output_format == "json":
            writer(mesh, fh, {"surface": spec_to_dict(cfg.spec)})
        else:
            writer(mesh, fh)


VERIFY_COLUMNS = ("lambda", "v", "kappa_measured", "lambda_measured", "weingarten_residual",
                  "parameter_residual", "H_derived", "K_ext_derived", "quadric_residual")


def run_verify(cfg: RunConfig):
    """Returns (summary dict, passed, reports)."""
    _, lams = lambda_grid(cfg)
    sweep = verify_sweep(cfg.spec, lams, cfg.verify_v, cfg.verify_h, cfg.tolerances, cfg.verify_dps)
    tol = cfg.tolerances
    h_max = max(default_step(float(l)) for l in lams) if cfg.verify_h is None else cfg.verify_h
    slack = 1e3 * h_max * h_max
    summary = sweep.to_dict()
    passed = (summary["max_quadric"] <= tol.quadric
              and summary["max_param"] <= max(tol.param, slack)
              and summary["max_weingarten"] <= max(tol.weingarten, slack)
              and summary.get("max_H_spread", 0.0) <= tol.H
              and summary.get("max_K_spread", 0.0) <= tol.K)
    summary = {k: float(v) for k, v in summary.items()}
    summary["passed"] = bool(passed)
    summary["samples"] = len(sweep.reports)
    return summary, passed, sweep.reports


def write_verify_rows(reports, fh):
    fh.write(",".join(VERIFY_COLUMNS) + "\n")
    for r in reports:
        row = (r.lam_input, r.v, r.kappa_measured, r.lambda_measured, r.weingarten_residual,
               r.parameter_residual, r.H_derived, r.K_ext_derived, r.quadric_residual)
        fh.write(",".join(format(float(x), ".17g") for x in row) + "\n")


def run_intervals(cfg: RunConfig) -> dict:
    intervals = admissible_intervals(cfg.spec, cfg.window, cfg.grid)
    out = {"intervals": [iv.to_dict() for iv in intervals], "corollary": None}
    try:
        rep = oracle_diff(cfg.spec, cfg.window, cfg.grid)
    except UnsupportedSpec:
        return out
    out["corollary"] = {
        "intervals": [iv.to_dict() for iv in rep.table],
        "active_cases": rep.active_cases,
        "max_endpoint_diff": rep.max_endpoint_diff if math.isfinite(rep.max_endpoint_diff) else None,
        "symmetric_difference": rep.symmetric_difference,
        "match": rep.match,
        "notes": rep.notes,
    }
    return out


def _json_default(x):
    if isinstance(x, (np.floating, np.integer, np.bool_)):
        return x.item()
    raise TypeError(type(x))


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="desitter-rotor",
                                     description="Weingarten rotational surfaces in de Sitter 3-space")
    parser.add_argument("command", choices=("generate", "verify", "intervals"))
    parser.add_argument("--config", required=True, help="JSON run configuration")
    parser.add_argument("--out", help="output path (overrides output.path; '-' for stdout)")
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
    except RotorError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    path = args.out if args.out is not None else cfg.output_path
    try:
        if args.command == "generate":
            mesh = run_generate(cfg)
            write_mesh(cfg, mesh, path)
            print(json.dumps({"vertices": int(mesh.raw.shape[0]), "faces": int(mesh.faces.shape[0]),
                              "max_quadric": float(np.max(np.abs(mesh.residual))),
                              "interval": mesh.interval.to_dict()}, default=_json_default),
                  file=sys.stderr if path in (None, "-") else sys.stdout)
            return EXIT_OK
        if args.command == "verify":
            summary, passed, reports = run_verify(cfg)
            if path not in (None, "-"):
                with open(path, "w", newline="\n") as fh:
                    write_verify_rows(reports, fh)
            print(json.dumps(summary, default=_json_default))
            return EXIT_OK if passed else EXIT_VERIFY_FAILED
        print(json.dumps(run_intervals(cfg), indent=1, default=_json_default))
        return EXIT_OK
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (RotorError, ArithmeticError) as exc:
        print(f"domain error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
