"""The complete recipe for one surface and its validation."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field, replace

from .errors import ConfigError
from .profile import RadiusFunction, RadiusMode, SurfaceFamily, radius_exponent
from .quadrature import QuadratureConfig
from .relations import Custom, WeingartenRelation


class SphericalRegime(enum.Enum):
    Y_LESS_ONE = "y_less_one"
    Y_GREATER_ONE = "y_greater_one"


@dataclass(frozen=True)
class SurfaceSpec:
    """One Weingarten rotational surface.

    ``eps`` is the causal character of the surface: +1 spacelike, -1 timelike.
    The second hyperbolic kind is always timelike and ``eps`` is forced to -1.
    In closed-form mode ``c`` is the constant of the closed-form radius; in
    quadrature mode it is the radius at ``lambda_ref``.  ``phi0`` is the angle
    at ``lambda_ref`` and ``branch`` the sign in front of the angle integral.
    """

    family: SurfaceFamily
    eps: int | None
    rel: WeingartenRelation
    c: float
    phi0: float = 0.0
    branch: int = 1
    lambda_ref: float = 0.0
    spherical_regime: SphericalRegime | None = None
    radius_mode: RadiusMode = RadiusMode.CLOSED_FORM
    quadrature: QuadratureConfig = field(default_factory=QuadratureConfig)

    def __post_init__(self):
        if self.family is SurfaceFamily.HYPERBOLIC_SECOND:
            if self.eps not in (None, -1):
                raise ConfigError("the second hyperbolic kind is always timelike (eps = -1)")
            object.__setattr__(self, "eps", -1)
        elif self.eps not in (1, -1):
            raise ConfigError(f"eps must be +1 or -1, got {self.eps!r}")
        if not (self.c > 0 and math.isfinite(self.c)):
            raise ConfigError(f"c must be positive and finite, got {self.c!r}")
        if self.branch not in (1, -1):
            raise ConfigError(f"branch must be +1 or -1, got {self.branch!r}")
        if not (math.isfinite(self.phi0) and math.isfinite(self.lambda_ref)):
            raise ConfigError("phi0 and lambda_ref must be finite")
        if self.family is SurfaceFamily.SPHERICAL and self.spherical_regime is None:
            raise ConfigError("spherical surfaces need spherical_regime")
        if self.family is not SurfaceFamily.SPHERICAL and self.spherical_regime is not None:
            raise ConfigError("spherical_regime applies only to spherical surfaces")
        if isinstance(self.rel, Custom) and self.radius_mode is RadiusMode.CLOSED_FORM:
            raise ConfigError("custom relations need radius_mode = quadrature")
        if self.radius_mode is RadiusMode.CLOSED_FORM:
            # raises DegenerateRelation (a = eps, a = -1, m = 1)
            radius_exponent(self.radius_function())

    @property
    def delta(self):
        return self.family.delta

    @property
    def form(self):
        return self.family.form

    def radius_function(self) -> RadiusFunction:
        return RadiusFunction(self.family, self.eps, self.rel, self.c, self.radius_mode,
                              self.lambda_ref, self.quadrature)

    def with_(self, **changes) -> "SurfaceSpec":
        return replace(self, **changes)
