"""
Value types shared by every analysis module.

A TimeSeries is an immutable, finite, one-dimensional sequence of samples.
Indexing is zero-based everywhere and a subsequence of length m starting at t
covers samples t .. t+m-1.
"""
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .exceptions import InvalidSeries, InvalidWindow, OutOfBounds


@dataclass(frozen=True)
class TimeSeries:
    """Ordered real-valued samples with an optional label."""

    values: np.ndarray
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if values.size < 1:
            raise InvalidSeries("a time series needs at least one sample")
        if not np.all(np.isfinite(values)):
            raise InvalidSeries("time series samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @classmethod
    def from_values(cls, values: Iterable[float], name: Optional[str] = None) -> 'TimeSeries':
        return cls(np.asarray(list(values), dtype=float), name)

    def __len__(self):
        return int(self.values.size)

    def __eq__(self, other):
        if not isinstance(other, TimeSeries):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash(self.values.tobytes())

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the samples."""
        return self.values


@dataclass(frozen=True)
class SubseqSpec:
    start: int
    length: int

    def validate(self, series_length: int):
        if self.length < 2:
            raise InvalidWindow(f"window must be at least 2 samples, got {self.length}")
        if self.start < 0:
            raise OutOfBounds(f"subsequence start {self.start} is negative")
        if self.start + self.length > series_length:
            raise OutOfBounds(
                f"subsequence [{self.start}, {self.start + self.length}) exceeds series length {series_length}"
            )


def as_series(value, name=None) -> TimeSeries:
    """Accept a TimeSeries or any 1-D array-like."""
    if isinstance(value, TimeSeries):
        return value
    return TimeSeries(value, name)


def subsequence(u: TimeSeries, spec: SubseqSpec) -> np.ndarray:
    """
    Extract the length-m window of `u` starting at `spec.start`.

    Args:
        u: The owning series
        spec: Start index and window length

    Returns:
        np.ndarray: (u_t, ..., u_{t+m-1})
    """
    u = as_series(u)
    spec.validate(len(u))
    return u.values[spec.start:spec.start + spec.length].copy()
