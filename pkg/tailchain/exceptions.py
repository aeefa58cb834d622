"""
Custom Exceptions for tailchain

This module defines the exception classes raised throughout the toolkit.
Every error derives from TailChainError so callers (the CLI in particular)
can map whole families of failures onto one exit status.
"""

from typing import Any, Optional


class TailChainError(Exception):
    """
    Base exception for all tailchain errors.

    All custom exceptions in tailchain inherit from this base class.
    """
    pass


# =============================================================================
# VALIDATION ERRORS
# =============================================================================

class ValidationError(TailChainError):
    """
    Raised when input validation fails.

    Examples:
    - Non-positive sample size
    - Grid point with a non-positive coordinate
    - Unknown variant tag in a serialized spec
    """
    pass


class InvalidSpecError(ValidationError):
    """
    Raised when a model specification violates its stationarity conditions.

    Examples:
    - AR coefficients with spectral radius >= 1
    - T-ARCH coefficients with a nonnegative Lyapunov exponent
    - Integer Pareto renewal law with beta <= 1
    """

    def __init__(self, message: str, condition: Optional[str] = None):
        """
        Initialize with the name of the violated condition.

        Args:
            message: Error description
            condition: Short tag of the violated condition (e.g. 'spectral_radius')
        """
        super().__init__(message)
        self.condition = condition


# =============================================================================
# CONFIGURATION ERRORS
# =============================================================================

class ConfigurationError(TailChainError):
    """
    Raised when configuration is invalid.

    Examples:
    - Experiment config file not found or not valid JSON
    - Unknown statistic or normalization tag
    - Malformed --override expression
    """
    pass


# =============================================================================
# ESTIMATION ERRORS
# =============================================================================

class EstimationError(TailChainError):
    """
    Base exception for estimator failures on a given sample.

    Examples:
    - Order-statistic index outside 1..n-1
    - Nonpositive threshold for a log-ratio estimator
    """
    pass


class ThresholdRangeError(EstimationError):
    """
    Raised when an intermediate order index k is out of range.

    Examples:
    - k = 0 or k >= n
    - k > n - 1 - h for a lagged estimator
    """

    def __init__(self, message: str, k: Optional[int] = None, n: Optional[int] = None):
        super().__init__(message)
        self.k = k
        self.n = n


class UndefinedEstimatorError(EstimationError):
    """
    Raised when an estimator is mathematically undefined on the sample.

    Examples:
    - Hill estimator with X_{n:n-k} <= 0
    - Quantile extrapolation with a zero Hill estimate
    """
    pass


class ExtrapolationDirectionError(EstimationError):
    """Raised when an extreme quantile is requested inside the sample range (p > k/n)."""
    pass


class InsufficientExceedancesError(EstimationError):
    """
    Raised when too few threshold exceedances are available.

    Examples:
    - Fewer than the minimum number of anchors for the spectral tail process
    - No exceedance at all for the anticlustering diagnostic
    """

    def __init__(self, message: str, required: Optional[int] = None, actual: Optional[int] = None):
        """
        Initialize with exceedance counts.

        Args:
            message: Error description
            required: Minimum number of exceedances required
            actual: Number of exceedances found
        """
        super().__init__(message)
        self.required = required
        self.actual = actual


# =============================================================================
# NUMERICAL ERRORS
# =============================================================================

class NumericalError(TailChainError):
    """Base exception for failed numerical procedures."""
    pass


class RootNotBracketedError(NumericalError):
    """
    Raised when a root search finds no sign change in its bracket.

    Examples:
    - Tail-index equation positive (or negative) over the whole bracket
    """
    pass


class OutOfRegimeError(NumericalError):
    """
    Raised when a closed-form expression is evaluated outside its validity regime.

    Examples:
    - Renewal-chain Gaussian covariance requested with beta <= 2
    """
    pass


# =============================================================================
# EXPERIMENT ERRORS
# =============================================================================

class ExperimentError(TailChainError):
    """Base exception for Monte Carlo harness failures."""
    pass


class ExperimentFailedError(ExperimentError):
    """
    Raised when more replications failed than the failure budget allows.
    """

    def __init__(self, message: str, failed: int = 0, total: int = 0):
        super().__init__(message)
        self.failed = failed
        self.total = total


class ToleranceViolationError(ExperimentError):
    """
    Raised when a report misses its configured theory target.

    Examples:
    - Variance of the normalized Hill deviations outside target +/- tolerance
    """

    def __init__(self, message: str, observed: float = float('nan'), target: float = float('nan')):
        super().__init__(message)
        self.observed = observed
        self.target = target


# =============================================================================
# EXPORT ERRORS
# =============================================================================

class ExportError(TailChainError):
    """
    Raised when writing results fails.

    Examples:
    - Output directory not writable
    - Non-finite value in a table that must be reproducible
    """
    pass


# =============================================================================
# WARNINGS
# =============================================================================

class DegenerateThresholdWarning(UserWarning):
    """Issued when a threshold is at or above the sample maximum."""
    pass


class WeightGrowthWarning(UserWarning):
    """Issued when a weight function grows too fast for the declared tail index."""
    pass


# =============================================================================
# HELPER FUNCTIONS
# =============================================================================

def format_validation_error(field_name: str, value: Any, reason: str) -> str:
    """
    Format a consistent validation error message.

    Args:
        field_name: Name of the field that failed validation
        value: The invalid value (will be truncated if long)
        reason: Reason for validation failure

    Returns:
        Formatted error message

    Example:
        >>> format_validation_error("phi", (1.2,), "spectral radius 1.2 >= 1")
        "Validation failed for 'phi': spectral radius 1.2 >= 1 (value: '(1.2,)')"
    """
    value_str = str(value)
    if len(value_str) > 100:
        value_str = value_str[:97] + "..."

    return f"Validation failed for '{field_name}': {reason} (value: '{value_str}')"
