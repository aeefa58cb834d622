"""
Path Samples and Seed Derivation

PathSample is the immutable result of every simulator. Seeds for
replications and pilot runs are derived from one master seed through
numpy's SeedSequence, so a replication's stream depends only on
(master seed, replication index, stream) and never on worker layout.
"""

from dataclasses import dataclass, field
from typing import Any, Optional

import numpy as np

from tailchain.exceptions import ValidationError, format_validation_error

UINT64_MAX = 2 ** 64 - 1


def check_seed(seed: int) -> int:
    """Return `seed` as a Python int after checking it fits in 64 unsigned bits."""
    seed = int(seed)
    if not 0 <= seed <= UINT64_MAX:
        raise ValidationError(format_validation_error('seed', seed, 'must be a 64-bit unsigned integer'))
    return seed


def derive_seed(master_seed: int, index: int, stream: int = 0) -> int:
    """
    Derive a per-replication 64-bit seed.

    Args:
        master_seed: Seed of the whole experiment
        index: Replication (or sweep cell) index
        stream: Stream tag separating replication draws from pilot draws

    Returns:
        64-bit unsigned seed

    Example:
        >>> derive_seed(7, 0) == derive_seed(7, 0)
        True
    """
    master_seed = check_seed(master_seed)
    ss = np.random.SeedSequence([master_seed, int(index), int(stream)])
    return int(ss.generate_state(1, np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator for a 64-bit seed."""
    return np.random.default_rng(check_seed(seed))


@dataclass(frozen=True)
class PathSample:
    """
    Simulated observations with generation metadata.

    Attributes:
        values: Read-only float array of length n >= 1, all finite
        seed: 64-bit seed the path was generated from
        burn_in: Number of discarded initial steps
        model: The ModelSpec that produced the path (None for external data)
    """

    values: np.ndarray
    seed: int = 0
    burn_in: int = 0
    model: Optional[Any] = field(default=None, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < 1:
            raise ValidationError(format_validation_error('values', values.shape, 'must be a nonempty 1-d sequence'))
        if not np.all(np.isfinite(values)):
            raise ValidationError(format_validation_error('values', 'non-finite entries', 'all values must be finite'))
        if self.burn_in < 0:
            raise ValidationError(format_validation_error('burn_in', self.burn_in, 'must be nonnegative'))
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)
        object.__setattr__(self, 'seed', check_seed(self.seed))

    @property
    def n(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PathSample):
            return NotImplemented
        return (self.seed == other.seed and self.burn_in == other.burn_in
                and np.array_equal(self.values, other.values))

    def __hash__(self) -> int:
        return hash((self.seed, self.burn_in, self.values.tobytes()))

    @classmethod
    def from_values(cls, values, seed: int = 0) -> 'PathSample':
        """Wrap observed (non-simulated) data."""
        return cls(values=np.asarray(values, dtype=float), seed=seed, burn_in=0, model=None)


def as_array(sample) -> np.ndarray:
    """Accept a PathSample or any 1-d sequence and return a float array."""
    if isinstance(sample, PathSample):
        return sample.values
    values = np.asarray(sample, dtype=float)
    if values.ndim != 1:
        raise ValidationError(format_validation_error('sample', values.shape, 'must be one-dimensional'))
    return values


def check_count(name: str, value: int, minimum: int = 1) -> int:
    """Validate an integer count parameter."""
    if isinstance(value, bool) or int(value) != value or value < minimum:
        raise ValidationError(format_validation_error(name, value, f'must be an integer >= {minimum}'))
    return int(value)
