import logging
import math

import numpy as np

from core.exceptions import InvalidFraction, InvalidParams
from core.series import TimeSeries, as_series

logger = logging.getLogger(__name__)


def downsample_mean(u, group_fraction):
    """
    Downsample by averaging consecutive groups of ceil(n * group_fraction)
    samples. The last group may be shorter.

    Args:
        u: TimeSeries to reduce
        group_fraction: Group size as a fraction of the series length, in (0, 1]

    Returns:
        TimeSeries: per-group means in order
    """
    u = as_series(u)
    if not (0 < group_fraction <= 1):
        raise InvalidFraction(f"group fraction must be in (0, 1], got {group_fraction}")
    n = len(u)
    # 0.07 * 100 evaluates to 7.000000000000001
    group = max(1, math.ceil(round(n * group_fraction, 9)))
    starts = np.arange(0, n, group)
    sums = np.add.reduceat(u.values, starts)
    counts = np.diff(np.append(starts, n))
    logger.debug(f"Downsampling {n} samples in groups of {group} -> {starts.size}")
    return TimeSeries(sums / counts, u.name)


def add_gaussian_noise(u, sigma, seed):
    """Add i.i.d. N(0, sigma) noise drawn from a generator seeded with `seed`."""
    u = as_series(u)
    if sigma < 0:
        raise InvalidParams(f"noise sigma must be non-negative, got {sigma}")
    if sigma == 0:
        return u
    rng = np.random.default_rng(seed)
    return TimeSeries(u.values + rng.normal(0.0, sigma, len(u)), u.name)


def min_max_normalize(u):
    """Rescale to [0, 1]; a constant series maps to zeros."""
    u = as_series(u)
    low, high = u.values.min(), u.values.max()
    if high - low == 0:
        return TimeSeries(np.zeros(len(u)), u.name)
    return TimeSeries((u.values - low) / (high - low), u.name)
