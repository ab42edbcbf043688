"""Mesh sampling, 3D projections and file writers (OBJ, CSV, JSON)."""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

import numpy as np

from .admissibility import AdmissibleInterval
from .minkowski import quadric_residual
from .profile import SurfaceFamily
from .spec import SurfaceSpec
from .surface import embed_grid


class Projection(enum.Enum):
    DROP4 = "drop4"
    DROP1 = "drop1"
    ORTHONORMAL3 = "orthonormal3"


def default_projection(family: SurfaceFamily) -> Projection:
    return Projection.ORTHONORMAL3 if family is SurfaceFamily.PARABOLIC else Projection.DROP4


def project(points4: np.ndarray, projection: Projection, family: SurfaceFamily) -> np.ndarray:
    """(..., 4) -> (..., 3).

    ORTHONORMAL3 diagonalises the Gram matrix first.  For the parabolic form the
    (x3, x4) block [[0, 1], [1, 0]] has the spacelike axis (1, 1)/sqrt(2) and
    the timelike axis (1, -1)/sqrt(2); the latter is dropped.  The standard form
    is already diagonal, so ORTHONORMAL3 equals DROP4 there.
    """
    p = np.asarray(points4, dtype=float)
    if projection is Projection.DROP1:
        return p[..., 1:]
    if projection is Projection.ORTHONORMAL3 and family is SurfaceFamily.PARABOLIC:
        return np.stack([p[..., 0], p[..., 1], (p[..., 2] + p[..., 3]) / math.sqrt(2)], axis=-1)
    return p[..., :3]


@dataclass
class MeshOutput:
    lam: np.ndarray  # (n_lam,)
    v: np.ndarray  # (n_v,)
    raw: np.ndarray  # (n_lam * n_v, 4)
    vertices: np.ndarray  # (n_lam * n_v, 3)
    faces: np.ndarray  # (n_quads, 4), 0-based
    residual: np.ndarray  # (n_lam * n_v,)
    interval: AdmissibleInterval | None = None

    @property
    def vertex_lambda(self):
        return np.repeat(self.lam, self.v.size)

    @property
    def vertex_v(self):
        return np.tile(self.v, self.lam.size)


def quad_faces(n_lam: int, n_v: int) -> np.ndarray:
    """Quads of a row-major (lambda outer, v inner) grid, consistent winding."""
    i, j = np.meshgrid(np.arange(n_lam - 1), np.arange(n_v - 1), indexing="ij")
    a = (i * n_v + j).ravel()
    return np.stack([a, a + n_v, a + n_v + 1, a + 1], axis=1)


def sample_mesh(spec: SurfaceSpec, lams, vs, projection: Projection | None = None) -> MeshOutput:
    lams = np.asarray(lams, dtype=float)
    vs = np.asarray(vs, dtype=float)
    projection = projection or default_projection(spec.family)
    pts = embed_grid(spec, lams, vs).reshape(-1, 4)
    res = quadric_residual(spec.form, pts.T)
    return MeshOutput(lams, vs, pts, project(pts, projection, spec.family),
                      quad_faces(lams.size, vs.size), np.asarray(res, dtype=float))


def _fmt(x) -> str:
    return format(float(x), ".17g")


def write_obj(mesh: MeshOutput, fh) -> None:
    fh.write(f"# de Sitter rotational surface: {mesh.lam.size} x {mesh.v.size} grid\n")
    for x, y, z in mesh.vertices:
        fh.write(f"v {_fmt(x)} {_fmt(y)} {_fmt(z)}\n")
    for quad in mesh.faces + 1:
        fh.write("f " + " ".join(str(int(k)) for k in quad) + "\n")


CSV_HEADER = "lambda,v,x1,x2,x3,x4,residual"


def write_csv(mesh: MeshOutput, fh) -> None:
    fh.write(CSV_HEADER + "\n")
    for lam, v, p, r in zip(mesh.vertex_lambda, mesh.vertex_v, mesh.raw, mesh.residual):
        fh.write(",".join(_fmt(x) for x in (lam, v, *p, r)) + "\n")


def write_json(mesh: MeshOutput, fh, extra: dict | None = None) -> None:
    doc = {
        "lambda": [float(x) for x in mesh.lam],
        "v": [float(x) for x in mesh.v],
        "vertices4": mesh.raw.tolist(),
        "vertices3": mesh.vertices.tolist(),
        "faces": (mesh.faces + 1).tolist(),
        "residual": mesh.residual.tolist(),
    }
    if mesh.interval is not None:
        doc["interval"] = mesh.interval.to_dict()
    if extra:
        doc.update(extra)
    json.dump(doc, fh, indent=1)
    fh.write("\n")


WRITERS = {"obj": write_obj, "csv": write_csv, "json": write_json}
