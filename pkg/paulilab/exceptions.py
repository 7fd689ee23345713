"""Custom exceptions for paulilab.

This module provides a hierarchical exception structure for better error handling
and debugging throughout the numerical lab.
"""


class PaulilabError(Exception):
    """Base exception for all paulilab errors."""


class ConfigurationError(PaulilabError):
    """Base class for configuration-related errors."""


class ConfigNotFoundError(ConfigurationError):
    """Raised when configuration file cannot be found."""

    def __init__(self, search_paths: list[str] | None = None):
        """Initialize ConfigNotFoundError.

        Args:
            search_paths: List of paths searched for config file
        """
        self.search_paths = search_paths
        msg = "Configuration file not found"
        if search_paths:
            msg += f". Searched in: {', '.join(search_paths)}"
        super().__init__(msg)


class InvalidConfigError(ConfigurationError):
    """Raised when configuration is invalid."""

    def __init__(self, config_path: str, reason: str, line: int | None = None):
        """Initialize InvalidConfigError.

        Args:
            config_path: Path to the invalid config file
            reason: Explanation of why config is invalid
            line: 1-based line of the offending key, when known
        """
        self.config_path = config_path
        self.reason = reason
        self.line = line
        location = f"{config_path}:{line}" if line is not None else config_path
        super().__init__(f"Invalid configuration in {location}: {reason}")


class FieldError(PaulilabError):
    """Base class for grid and field errors."""


class GridError(FieldError):
    """Raised when a grid cannot be constructed."""

    def __init__(self, dims: tuple[int, ...], reason: str):
        """Initialize GridError.

        Args:
            dims: Requested grid dimensions
            reason: Explanation of why the grid is invalid
        """
        self.dims = dims
        self.reason = reason
        super().__init__(f"Invalid grid {dims}: {reason}")


class GridMismatchError(FieldError):
    """Raised when fields attached to different grids are combined."""

    def __init__(self, expected: tuple[int, ...], actual: tuple[int, ...]):
        """Initialize GridMismatchError.

        Args:
            expected: Dimensions of the reference grid
            actual: Dimensions of the offending field's grid
        """
        self.expected = expected
        self.actual = actual
        super().__init__(f"Grid mismatch: expected {expected}, got {actual}")


class CutoffError(FieldError):
    """Raised when a cutoff or scaling function violates its constraints."""


class ExpressionError(FieldError):
    """Raised when a custom potential expression cannot be evaluated."""

    def __init__(self, expression: str, reason: str):
        """Initialize ExpressionError.

        Args:
            expression: The offending expression text
            reason: Explanation of the failure
        """
        self.expression = expression
        self.reason = reason
        super().__init__(f"Cannot evaluate expression '{expression}': {reason}")


class AliasingError(FieldError):
    """Raised when a sampled field carries frequencies the grid cannot resolve."""

    def __init__(self, max_mode: int, limit: int):
        """Initialize AliasingError.

        Args:
            max_mode: Highest significant Fourier mode found
            limit: Highest mode the operation accepts
        """
        self.max_mode = max_mode
        self.limit = limit
        super().__init__(f"Unresolved frequency: mode {max_mode} exceeds resolved limit {limit}")


class OperatorError(PaulilabError):
    """Base class for operator assembly errors."""


class ResolutionError(OperatorError):
    """Raised when h is too small for the grid to resolve its wavelength."""

    def __init__(self, h: float, minimum: float):
        """Initialize ResolutionError.

        Args:
            h: Requested semiclassical parameter
            minimum: Smallest admissible h on this grid
        """
        self.h = h
        self.minimum = minimum
        super().__init__(f"h={h:g} is below the resolved minimum {minimum:g} for this grid")


class SolverError(PaulilabError):
    """Base class for eigensolver and minimizer failures."""


class SolverConvergenceError(SolverError):
    """Raised when an iterative solve does not reach its tolerance."""

    def __init__(self, reason: str, partial: object | None = None):
        """Initialize SolverConvergenceError.

        Args:
            reason: Explanation of the failure
            partial: Partial result available at the time of failure
        """
        self.reason = reason
        self.partial = partial
        super().__init__(f"Solver did not converge: {reason}")


class IncompleteSpectrumError(SolverError):
    """Raised when a trace functional receives a spectrum flagged unusable."""

    def __init__(self, threshold: float):
        """Initialize IncompleteSpectrumError.

        Args:
            threshold: Threshold below which the spectrum was requested
        """
        self.threshold = threshold
        super().__init__(f"Spectrum below {threshold:g} is incomplete or flagged unusable")


class CurrentConsistencyError(SolverError):
    """Raised when the current density has a non-negligible imaginary part."""

    def __init__(self, imaginary_norm: float, tolerance: float):
        """Initialize CurrentConsistencyError.

        Args:
            imaginary_norm: Size of the discarded imaginary part
            tolerance: Accepted size
        """
        self.imaginary_norm = imaginary_norm
        self.tolerance = tolerance
        super().__init__(
            f"Current has imaginary part {imaginary_norm:.3e} above tolerance {tolerance:.1e}"
        )


class DynamicsError(PaulilabError):
    """Base class for classical flow errors."""


class EmptyShellError(DynamicsError):
    """Raised when the energy shell has no admissible points."""

    def __init__(self, tau: float):
        """Initialize EmptyShellError.

        Args:
            tau: Energy level of the empty shell
        """
        self.tau = tau
        super().__init__(f"Energy shell at tau={tau:g} is empty in the sampling region")


class IntegratorInstabilityError(DynamicsError):
    """Raised when the symplectic integrator loses energy control."""

    def __init__(self, drift: float, step: float):
        """Initialize IntegratorInstabilityError.

        Args:
            drift: Relative energy drift observed
            step: Integrator step in use
        """
        self.drift = drift
        self.step = step
        super().__init__(f"Integrator unstable: relative drift {drift:.3e} with step {step:g}")


class ScalingError(PaulilabError):
    """Base class for rescaling calculus and fitting errors."""


class DomainViolationError(ScalingError):
    """Raised when a formula is evaluated outside its stated domain."""

    def __init__(self, quantity: str, reason: str):
        """Initialize DomainViolationError.

        Args:
            quantity: Name of the formula being evaluated
            reason: Which precondition failed
        """
        self.quantity = quantity
        self.reason = reason
        super().__init__(f"{quantity}: {reason}")


class InsufficientDataError(ScalingError):
    """Raised when a fit has too few usable points."""

    def __init__(self, available: int, required: int):
        """Initialize InsufficientDataError.

        Args:
            available: Number of usable records
            required: Minimum number required
        """
        self.available = available
        self.required = required
        super().__init__(f"Need at least {required} records with distinct h, got {available}")


class StateError(PaulilabError):
    """Base class for persisted state errors."""


class StateLoadError(StateError):
    """Raised when a state file cannot be loaded."""

    def __init__(self, state_path: str, reason: str):
        """Initialize StateLoadError.

        Args:
            state_path: Path to the state file
            reason: Explanation of why loading failed
        """
        self.state_path = state_path
        self.reason = reason
        super().__init__(f"Failed to load state from {state_path}: {reason}")


class StateSaveError(StateError):
    """Raised when a state file cannot be saved."""

    def __init__(self, state_path: str, reason: str):
        """Initialize StateSaveError.

        Args:
            state_path: Path to the state file
            reason: Explanation of why saving failed
        """
        self.state_path = state_path
        self.reason = reason
        super().__init__(f"Failed to save state to {state_path}: {reason}")


class OutputExistsError(StateError):
    """Raised when a sweep would write into a non-empty directory without resume."""

    def __init__(self, output_dir: str):
        """Initialize OutputExistsError.

        Args:
            output_dir: The non-empty output directory
        """
        self.output_dir = output_dir
        super().__init__(
            f"Output directory {output_dir} is not empty; pass --resume to continue it"
        )
