"""HCMU metrics on the sphere assembled from footballs.

``hcmu.football`` handles a single rotationally symmetric metric,
``hcmu.assembly`` plans and glues footballs for prescribed cone angles,
and ``hcmu.cli`` wraps both behind ``hcmu check | build | verify``.
"""

from .football import (
    CurvatureExtremes,
    FootballProfile,
    FootballSpec,
    InvalidFootball,
    angles_from_extremes,
    curvature_extremes,
    geodesic_length,
    profile_solve,
    verify_football,
)
from .report import Check, Tolerances, VerificationReport

__version__ = "0.1.0"

__all__ = [
    "Check", "CurvatureExtremes", "FootballProfile", "FootballSpec", "InvalidFootball",
    "Tolerances", "VerificationReport", "angles_from_extremes", "curvature_extremes",
    "geodesic_length", "profile_solve", "verify_football",
]
