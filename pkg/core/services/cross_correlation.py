import logging
import math
from dataclasses import dataclass

import numpy as np

from core.exceptions import DegenerateSeries, LagTooLarge
from core.series import as_series
from core.utils.znormalize import FLAT_EPSILON

logger = logging.getLogger(__name__)

TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class CrossCorrResult:
    best_lag: int
    best_value: float
    decision: bool

    def for_json(self):
        return {'best_lag': self.best_lag, 'best_value': self.best_value, 'decision': self.decision}


def _pearson(x, y):
    xs = x - x.mean()
    ys = y - y.mean()
    denominator = math.sqrt(float(np.dot(xs, xs)) * float(np.dot(ys, ys)))
    if denominator < FLAT_EPSILON:
        return np.nan
    return float(np.dot(xs, ys)) / denominator


def lag_order(max_lag):
    """0, 1, -1, 2, -2, ...: the tie-break order for equal correlations."""
    yield 0
    for lag in range(1, max_lag + 1):
        yield lag
        yield -lag


def max_cross_correlation_lead(a, b, max_lag=None) -> CrossCorrResult:
    """
    Maximum cross-correlation leadership baseline.

    For each lag l in [-max_lag, max_lag] the Pearson correlation of a[t] and
    b[t + l] is taken over the overlapping samples. A positive best lag means
    `b` repeats `a` later, so `a` leads.

    Args:
        a: First series
        b: Second series
        max_lag: Largest shift tried; defaults to ceil(min(n_a, n_b) / 2)

    Returns:
        CrossCorrResult
    """
    a, b = as_series(a), as_series(b)
    n_a, n_b = len(a), len(b)
    if max_lag is None:
        max_lag = int(math.ceil(min(n_a, n_b) / 2))
    if not (1 <= max_lag < min(n_a, n_b)):
        raise LagTooLarge(f"max lag must lie in [1, {min(n_a, n_b) - 1}], got {max_lag}")
    for label, series in (('first', a), ('second', b)):
        if series.values.std() < FLAT_EPSILON:
            raise DegenerateSeries(f"the {label} series is constant")

    x = (a.values - a.values.mean()) / a.values.std()
    y = (b.values - b.values.mean()) / b.values.std()

    best_lag, best_value = 0, -np.inf
    for lag in lag_order(max_lag):
        lo = max(0, -lag)
        hi = min(n_a, n_b - lag)
        if hi - lo < 2:
            continue
        value = _pearson(x[lo:hi], y[lo + lag:hi + lag])
        if np.isnan(value):
            continue
        # Earlier lags in the order win ties.
        if value > best_value + TIE_TOLERANCE:
            best_lag, best_value = lag, value

    if not np.isfinite(best_value):
        raise DegenerateSeries("no lag produced a defined correlation")
    logger.debug(f"Cross correlation: best lag {best_lag} with r={best_value:.4f}")
    return CrossCorrResult(best_lag, best_value, best_lag > 0)


class CrossCorrelationLeadership:
    """Leadership decision function for the evaluator."""

    def __init__(self, max_lag=None):
        self.max_lag = max_lag

    def __call__(self, first, second) -> bool:
        return max_cross_correlation_lead(first, second, self.max_lag).decision
