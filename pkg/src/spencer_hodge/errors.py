"""Exception types shared across the package."""


class SpencerHodgeError(Exception):
    """Base class for all errors raised by this package."""


class JacobiViolated(SpencerHodgeError):
    """Structure constants fail the Jacobi identity beyond tolerance."""


class KillingDegenerate(SpencerHodgeError):
    """The Killing form is not negative definite."""


class DegreeMismatch(SpencerHodgeError):
    """Symmetric tensors of different degrees were combined."""


class DegreeCapExceeded(SpencerHodgeError):
    """A symmetric-power degree or dimension exceeds the configured cap."""


class ResolutionTooSmall(SpencerHodgeError):
    """Mesh resolution below the minimum of three cells per axis."""


class DegreeOutOfRange(SpencerHodgeError):
    """Cochain degree outside the range supported by the mesh."""


class NonPositiveWeight(SpencerHodgeError):
    """A metric weight is zero or negative at some sample point."""


class DegenerateLambda(SpencerHodgeError):
    """The constraint covector vanishes at a sample point."""


class DimensionUnsupported(SpencerHodgeError):
    """Operation undefined for this base dimension."""


class ZeroCovector(SpencerHodgeError):
    """A direction covector required to be nonzero was zero."""


class NonConvergence(SpencerHodgeError):
    """Iteration budget exhausted before reaching tolerance."""


class StepCollapse(SpencerHodgeError):
    """Backtracking reduced the step size below machine-noise level."""


class EigensolverFailure(SpencerHodgeError):
    """The eigenvalue solver failed to converge or returned garbage."""


class SolverFailure(SpencerHodgeError):
    """A linear solve inside the decomposition pipeline failed."""


class ShapeMismatch(SpencerHodgeError):
    """An input array does not match the expected block dimension."""


class ConfigError(SpencerHodgeError):
    """Configuration file or override is malformed or inconsistent."""


class PipelineError(SpencerHodgeError):
    """A pipeline stage failed; carries the failing step number."""

    def __init__(self, step: int, message: str):
        super().__init__(f"step {step}: {message}")
        self.step = step
