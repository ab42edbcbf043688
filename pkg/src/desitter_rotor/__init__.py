"""Weingarten rotational surfaces in 3-dimensional de Sitter space.

Surfaces are parameterised by one principal curvature lambda, with the other
given by kappa = f(lambda).  The package builds the profile curve (radius and
angle function), embeds the surface in Minkowski 4-space, computes admissible
lambda-intervals, and checks the construction by recomputing principal
curvatures from finite-difference fundamental forms.
"""

from .admissibility import AdmissibleInterval, ConstraintSet, admissible_intervals
from .corollaries import corollary_cases, corollary_intervals, oracle_diff
from .curvature import (Calibration, CurvatureReport, FundamentalForms, Tolerances, calibrate,
                        fundamental_forms, principal_curvatures, unit_normal, verify_point,
                        verify_sweep)
from .errors import *  # noqa: F401,F403
from .minkowski import AmbientForm, CausalCharacter, bilinear, causal_character, quadric_residual
from .phi import (AngleIntegral, closed_family_integrand, integrate_phi, integrate_phi_to_endpoint,
                  phi_closed_family, phi_integrand)
from .profile import (RadiusFunction, RadiusMode, SurfaceFamily, log_radius_derivative, radius,
                      radius_closed_form, radius_quadrature)
from .quadrature import QuadratureConfig, gauss_kronrod, tanh_sinh
from .relations import Custom, DenominatorKind, Linear, Power, denominator, eval_f
from .spec import SphericalRegime, SurfaceSpec
from .surface import LocalChart, ProfilePoint, embed, embed_grid, profile_point, tangent_frame

__version__ = "0.1.0"
