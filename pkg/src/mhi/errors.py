"""Exception types shared across the package."""


class DomainError(ValueError):
    """A Riemannian logarithm was requested outside its domain."""


class AntipodalError(DomainError):
    """Sphere log at (or numerically at) the cut locus of the base point."""


class TangencyError(ValueError):
    """A vector violates the tangent-space constraint at its base point."""


class SpanError(RuntimeError):
    """The log images of the sample set do not span the required direction.

    Carries the sample index and parameter axis of the offending
    derivative condition.
    """

    def __init__(self, sample_index, axis, residual, tolerance):
        self.sample_index = sample_index
        self.axis = axis
        self.residual = residual
        self.tolerance = tolerance
        super().__init__(
            f"derivative at sample {sample_index}, axis {axis} is not in the "
            f"span of the log images (residual {residual:.3e} > tol {tolerance:.3e})"
        )


class DegenerateConstraintError(RuntimeError):
    """The sum-to-zero side constraint is (numerically) implied by the
    interpolation constraints, so the constrained minimum-norm solve breaks
    down."""


class ConditioningError(RuntimeError):
    """A linear system was too ill-conditioned to factor reliably."""

    def __init__(self, message, condition_estimate=None):
        self.condition_estimate = condition_estimate
        if condition_estimate is not None:
            message = f"{message} (condition estimate {condition_estimate:.3e})"
        super().__init__(message)


class NonConvergenceError(RuntimeError):
    """Gradient descent did not reach the requested tolerance."""

    def __init__(self, gradient_norm, iterations, tolerance):
        self.gradient_norm = gradient_norm
        self.iterations = iterations
        self.tolerance = tolerance
        super().__init__(
            f"no convergence after {iterations} iterations: "
            f"|grad| = {gradient_norm:.3e} > tau = {tolerance:.3e}"
        )


class ConfigError(ValueError):
    """Invalid or incomplete experiment configuration."""
