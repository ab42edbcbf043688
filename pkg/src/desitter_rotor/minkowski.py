"""Vectors of the 4-dimensional Minkowski space and its two bilinear forms.

Two Gram matrices are in use.  ``STANDARD`` is diag(1, 1, 1, -1) and serves the
spherical and both hyperbolic families.  ``PARABOLIC`` pairs x3 with x4
(x1*y1 + x2*y2 + x3*y4 + x4*y3) and serves only the parabolic family.  The two
are isometric; both have signature (3, 1).

All functions accept plain sequences, numpy arrays or mpmath numbers.
"""

from __future__ import annotations

import enum
from typing import Sequence

import numpy as np

from .errors import DomainError


class AmbientForm(enum.Enum):
    STANDARD = "standard"
    PARABOLIC = "parabolic"

    @property
    def gram(self) -> np.ndarray:
        return _GRAM[self]


_GRAM = {
    AmbientForm.STANDARD: np.diag([1.0, 1.0, 1.0, -1.0]),
    AmbientForm.PARABOLIC: np.array(
        [[1.0, 0, 0, 0], [0, 1.0, 0, 0], [0, 0, 0, 1.0], [0, 0, 1.0, 0]]
    ),
}


class CausalCharacter(enum.IntEnum):
    SPACELIKE = 1
    TIMELIKE = -1
    NULL = 0


def as_vector(components: Sequence[float]) -> np.ndarray:
    """Validate a float 4-vector: exactly four finite components."""
    v = np.asarray(components, dtype=float)
    if v.shape != (4,):
        raise DomainError(f"expected 4 components, got shape {v.shape}")
    if not np.all(np.isfinite(v)):
        raise DomainError(f"non-finite component in {v!r}")
    return v


def bilinear(form: AmbientForm, u, v):
    """g~(u, v).  Works elementwise for any numeric type (float, mpf)."""
    if form is AmbientForm.PARABOLIC:
        return u[0] * v[0] + u[1] * v[1] + (u[2] * v[3] + u[3] * v[2])
    return u[0] * v[0] + u[1] * v[1] + u[2] * v[2] - u[3] * v[3]


def quadric_residual(form: AmbientForm, p):
    """g~(p, p) - 1; zero exactly on the de Sitter quadric."""
    return bilinear(form, p, p) - 1


def causal_character(form: AmbientForm, v, tol: float = 1e-12) -> CausalCharacter:
    """Classify ``v`` by the sign of g~(v, v).

    ``tol`` is relative to the largest squared component, so the threshold
    scales with the input; |g~(v,v)| <= tol * max(1, max|v_i|^2) counts as null.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    norm = float(bilinear(form, v, v))
    scale = max(1.0, max(float(abs(x)) for x in v) ** 2)
    if abs(norm) <= tol * scale:
        return CausalCharacter.NULL
    return CausalCharacter.SPACELIKE if norm > 0 else CausalCharacter.TIMELIKE
