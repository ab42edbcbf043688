"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`RotorError`,
so callers (and the CLI) can separate modelling failures from programming bugs.
"""


class RotorError(Exception):
    """Base class for all package errors."""


class DomainError(RotorError, ValueError):
    """A function was evaluated outside its real domain."""


class DegenerateRelation(RotorError, ValueError):
    """The Weingarten relation makes the closed-form radius degenerate."""


class UnsupportedSpec(RotorError, ValueError):
    """The requested operation does not apply to this surface spec."""


class SingularPath(RotorError):
    """The radius integrand vanishes or blows up between two parameters."""


class QuadratureFailure(RotorError):
    """Adaptive quadrature did not reach the requested tolerance."""


class OutsideAdmissible(RotorError, ValueError):
    """A parameter value violates one of the admissibility constraints."""

    def __init__(self, lam, constraint, message=None):
        self.lam = lam
        self.constraint = constraint
        super().__init__(message or f"lambda={float(lam)!r} violates constraint {constraint!r}")


class PathCrossesSingularity(OutsideAdmissible):
    """Start and end of an integration lie in different admissible intervals."""


class DegenerateAt(RotorError, ValueError):
    """The log-radius derivative is undefined (umbilic point)."""

    def __init__(self, lam):
        self.lam = lam
        super().__init__(f"denominator vanishes at lambda={float(lam)!r}")


class RegimeMismatch(RotorError, ValueError):
    """The spherical regime does not match the computed radius."""


class StepOutsideAdmissible(OutsideAdmissible):
    """A finite-difference stencil leaves the admissible interval."""


class DegenerateFrame(RotorError):
    """Position and tangent vectors are (numerically) linearly dependent."""


class NonDiagonal(RotorError):
    """Fundamental forms have cross terms above tolerance."""


class NoAdmissibleInterval(RotorError):
    """No admissible interval contains the reference parameter."""


class ConfigError(RotorError, ValueError):
    """Malformed run configuration."""
