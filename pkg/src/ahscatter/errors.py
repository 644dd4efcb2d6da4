"""Typed exceptions shared across the toolkit.

Quadrature, root finding, and curve tracing raise the numerics errors;
geometry and field evaluation raise the contour/branch errors; each
module re-exports the names it documents so callers can catch narrowly.
"""


class AhscatterError(Exception):
    """Base class for every error raised by this package."""


# --- numerics ---------------------------------------------------------------

class BudgetExceeded(AhscatterError):
    """Subdivision or node budget exhausted before the tolerance was met."""

    def __init__(self, message, value=None, error_estimate=None):
        super().__init__(message)
        self.value = value
        self.error_estimate = error_estimate


class NonFiniteIntegrand(AhscatterError):
    """Integrand returned NaN or infinity at a quadrature node."""


class NoConvergence(AhscatterError):
    """Iteration failed to reach the requested residual."""


class DerivativeVanished(AhscatterError):
    """Newton step undefined: local derivative below the working floor."""


class SeedNotOnCurve(AhscatterError):
    """Curve tracer could not project the seed onto the zero level set."""


class StagnationAtCriticalPoint(AhscatterError):
    """Curve tracer stalled where the field gradient collapses."""

    def __init__(self, message, partial_path=None):
        super().__init__(message)
        self.partial_path = partial_path


# --- initial data -----------------------------------------------------------

class OutsideDomain(AhscatterError):
    """Requested point lies outside the domain of analyticity."""


class AtLogPoint(AhscatterError):
    """Evaluation requested at (or too close to) a logarithmic branch point."""


class RegionOutsideDomain(AhscatterError):
    """Search region extends beyond where the data is analytic."""


class ParameterOutOfRange(AhscatterError):
    """Family parameter outside its documented range."""


# --- fields and transforms --------------------------------------------------

class OnCut(AhscatterError):
    """Evaluation point sits on a branch cut; no single-sided value chosen."""


class PathCrossesCut(AhscatterError):
    """Constructed integration path crosses a branch cut."""


class AtMuPlus(AhscatterError):
    """Evaluation inside the exclusion disc around an endpoint mu+/-."""


class TailNotConverged(AhscatterError):
    """Truncation tail failed to stabilise below tolerance."""


class ContourThroughSingularity(AhscatterError):
    """Supplied contour passes through a singular point of the integrand."""


class PathNotOnSigma(AhscatterError):
    """Path claimed to lie on the spectral curve Sigma does not."""


class SingularityUnresolved(AhscatterError):
    """Endpoint singularity not integrable with the supplied flags."""


class NoCut(AhscatterError):
    """Operation requires a branch cut but the data carries none."""


class AtCutEndpoint(AhscatterError):
    """Evaluation at a cut endpoint where the jump degenerates."""


# --- sign analysis ----------------------------------------------------------

class VerticalSegmentLeavesDomain(AhscatterError):
    """Descending segment used by the sign test exits the analyticity strip."""


class TraceStalled(AhscatterError):
    """Level-curve certification stalled before reaching a terminal point."""

    def __init__(self, message, partial_path=None):
        super().__init__(message)
        self.partial_path = partial_path


# --- modulation -------------------------------------------------------------

class ContourHitsCut(AhscatterError):
    """Moment contour intersects a logarithmic branch cut."""


class JacobianSingular(AhscatterError):
    """Newton system for the moment conditions is singular."""


class StepUnderflow(AhscatterError):
    """Continuation step fell below the minimum without converging."""


# --- symmetry ---------------------------------------------------------------

class ClassificationAmbiguous(AhscatterError):
    """Point too close to a region boundary to classify inside/outside."""


# --- oracle -----------------------------------------------------------------

class StiffnessFailure(AhscatterError):
    """ODE integrator failed or exceeded its step budget."""


class TruncationNotConverged(AhscatterError):
    """Scattering coefficients did not stabilise as the domain grew."""


class ReflectionUnderflow(AhscatterError):
    """Reflection coefficient below the floor where its log is meaningful."""


# --- cli --------------------------------------------------------------------

class ConfigInvalid(AhscatterError):
    """Run configuration failed validation."""
