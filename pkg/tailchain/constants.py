"""
Numerical and Statistical Constants for tailchain

This module centralizes the magic numbers used by the simulators,
estimators and the Monte Carlo harness. Values that a user may want to
change per run are mirrored in tailchain.config; the classes here hold
the defaults and hard limits.
"""

from typing import List


# =============================================================================
# SIMULATION DEFAULTS
# =============================================================================

class SimulationDefaults:
    """Default burn-in lengths and Monte Carlo sizes for the model simulators."""

    # Burn-in (steps discarded before the returned path)
    AR_BURN_IN_FACTOR = 10          # burn_in = 10 * p for AR(p)
    TARCH_BURN_IN = 1000

    # Lyapunov exponent by Monte Carlo (non-Gaussian innovations)
    LYAPUNOV_MC_DRAWS = 1_000_000
    LYAPUNOV_MC_SEED = 20240917

    # Moment order used by the T-ARCH drift check
    TARCH_MOMENT_ORDER = 0.5

    # Seed streams mixed into the master seed
    REPLICATION_STREAM = 0
    PILOT_STREAM = 1


# =============================================================================
# NUMERICAL TOLERANCES
# =============================================================================

class NumericalTolerances:
    """Tolerances for root finding, quadrature and normalization checks."""

    # Tail-index root search
    TAIL_INDEX_BRACKET_LOW = 1e-3
    TAIL_INDEX_BRACKET_HIGH = 64.0
    TAIL_INDEX_ABS_TOL = 1e-8
    TAIL_INDEX_MAX_ITER = 200

    # Adaptive quadrature
    QUAD_REL_TOL = 1e-10
    QUAD_LIMIT = 200

    # Stationary pmf normalization
    PMF_SUM_TOL = 1e-12


# =============================================================================
# HARNESS DEFAULTS
# =============================================================================

class HarnessDefaults:
    """Defaults for replicated Monte Carlo experiments."""

    PILOT_MULTIPLIER = 100          # Pilot path is 100 x n
    FAILURE_BUDGET = 0.05           # Fraction of replications allowed to fail
    JB_P_VALUE_FLOOR = 0.01         # Normality is flagged when the JB p-value falls below this
    TRUNCATION_LAG = 50             # Default lag L for covariance series
    MIN_SPECTRAL_ANCHORS = 50       # Minimum exceedance anchors for Theta_j

    STATISTICS: List[str] = [
        'hill',
        'extremal_index_hat',
        'extremal_index_tilde',
        'cluster_index',
        'cte',
        'order_statistic',
        'ted',
        'any_exceedance',
    ]
    NORMALIZATIONS: List[str] = ['sqrt_k', 'sqrt_nFz', 'stable_an', 'none']
    CENTERINGS: List[str] = ['pilot', 'theory', 'exact']
    NORMALIZERS: List[str] = ['empirical', 'model']


# =============================================================================
# CLI EXIT CODES
# =============================================================================

class ExitCodes:
    """Process exit statuses of the command-line tool."""

    SUCCESS = 0
    TOLERANCE_VIOLATION = 1
    CONFIG_ERROR = 2
    RUNTIME_ERROR = 3


# =============================================================================
# OUTPUT FORMATTING
# =============================================================================

class OutputFormat:
    """Formatting rules that keep emitted files byte-reproducible."""

    FLOAT_FORMAT = '%.17g'          # Round-trip exact float text
    JSON_INDENT = 2
    CSV_LINE_TERMINATOR = '\n'
