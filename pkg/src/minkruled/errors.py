"""Exception types raised by the geometry and synthesis layers.

Every failure mode of the numerical pipeline gets its own class so callers
(and the CLI) can react to specific conditions instead of parsing messages.
"""

from __future__ import annotations


class GeometryError(Exception):
    """Base class for all geometric / numerical domain failures."""


class NullInputError(GeometryError):
    """An angle was requested for a null or zero vector."""


class OppositeOrientationError(GeometryError):
    """Hyperbolic angle requested for timelike vectors with opposite time orientation."""


class DegenerateSpanError(GeometryError):
    """Two spacelike vectors span a degenerate (null) plane; angle type undefined."""


class NonOrthonormalSeedError(GeometryError):
    """Initial frame is not Lorentz-orthonormal (or has the wrong orientation)."""


class NonPositiveCurvatureError(GeometryError):
    """Prescribed curvature k1 is not strictly positive on the grid."""


class StepTooLargeError(GeometryError):
    """Frame orthonormality defect exceeded tolerance during integration."""


class TorsionVanishesError(GeometryError):
    """Torsion k2 too close to zero for a ratio that divides by it."""


class NotUnitTimelikeError(GeometryError):
    """A ruling vector is not unit timelike within tolerance."""


class TangentRulingError(GeometryError):
    """Ruling coincides with the tangent (theta = 0); phi is undefined."""


class SingularPointError(GeometryError):
    """Surface normal undefined: the two partials are parallel here."""


class CylindricalRulingError(GeometryError):
    """Operation undefined on a cylindrical sample (q' below tolerance)."""


class AllCylindricalError(GeometryError):
    """Every sample of the surface is cylindrical; no invariants to report."""


class DevelopableRulingError(GeometryError):
    """d = 0: Gaussian-curvature radius n is undefined."""


class DegenerateAngleError(GeometryError):
    """sin(mu) = 0 makes the requested relation degenerate."""


class ThetaSingularityError(GeometryError):
    """|theta| fell below the singularity guard (coth theta blows up).

    Carries the arc length ``s`` at which the condition was detected.
    """

    def __init__(self, message: str, s: float | None = None):
        super().__init__(message)
        self.s = s


class IntegrationDivergedError(GeometryError):
    """State left the representable range (finite-s blowup of a determining system)."""

    def __init__(self, message: str, s: float | None = None):
        super().__init__(message)
        self.s = s


class ParamDomainError(GeometryError):
    """Synthesis parameters violate the domain of the selected system."""


class NoSolutionError(GeometryError):
    """artanh argument outside (-1, 1): no real angle satisfies the relation."""


class DegenerateDenominatorError(GeometryError):
    """n*k2 + 1 = 0: the geodesic angle relation divides by zero."""


class PhiSingularError(GeometryError):
    """cos(phi) = 0 where sec(phi) is required."""


class GridMismatchError(GeometryError):
    """Two sampled objects do not share the same arc-length grid."""


class ConfigError(Exception):
    """A run configuration failed validation.

    ``field`` is the dotted path of the offending entry, e.g. ``params.v0``.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"config invalid at '{field}': {message}")
        self.field = field
