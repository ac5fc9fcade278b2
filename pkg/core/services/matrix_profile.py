"""
Matrix profile similarity joins.

matrix_profile_ab(a, b, w) is indexed over `a`: entry i holds the smallest
z-normalized distance from a[i:i+w] to any window of `b`, and the index of
that window. The self-join variant skips trivial matches inside an exclusion
radius. matrix_profile_naive is an independent reference used for checking.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Optional

import numpy as np
import pandas as pd

from core.exceptions import DegenerateSeries, InvalidWindow, WindowTooLarge
from core.series import as_series
from core.utils.znormalize import FLAT_EPSILON, znormalize, znormalize_windows

logger = logging.getLogger(__name__)

DEFAULT_BLOCK_ROWS = 256
# Streamed squared distances within TIE_TOLERANCE * window of a row minimum are re-scored exactly.
TIE_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class MatrixProfileResult:
    """Nearest-neighbour distances and positions for every window of one series."""

    profile: np.ndarray
    indices: np.ndarray
    window: int
    profile_over_length: int
    neighbor_series_length: int
    exclusion_radius: Optional[int] = None

    def __len__(self):
        return int(self.profile.size)

    def motif_index(self) -> int:
        """Position with the closest match."""
        return int(np.argmin(self.profile))

    def discord_index(self) -> int:
        """Position whose nearest neighbour is farthest away."""
        return int(np.argmax(self.profile))

    def for_json(self):
        return {
            'window': self.window,
            'profile_over_length': self.profile_over_length,
            'neighbor_series_length': self.neighbor_series_length,
            'exclusion_radius': self.exclusion_radius,
            'profile': [float(v) for v in self.profile],
            'indices': [int(v) for v in self.indices],
        }

    def to_frame(self):
        return pd.DataFrame({
            'position': np.arange(self.profile.size),
            'distance': self.profile,
            'neighbor': self.indices,
        })


def _check_window(window, n_a, n_b):
    if window < 2:
        raise InvalidWindow(f"window must be at least 2 samples, got {window}")
    if window > min(n_a, n_b):
        raise WindowTooLarge(f"window {window} exceeds series length {min(n_a, n_b)}")


def sliding_window_stats(values, window):
    """Per-window mean and population standard deviation."""
    windows = np.lib.stride_tricks.sliding_window_view(np.asarray(values, dtype=float), window)
    return windows.mean(axis=1), windows.std(axis=1)


class _StreamingJoin:
    """
    Exact join over z-normalized windows using sliding dot products.

    Row i's dot products with every window of `b` follow from row i - 1 in
    O(n_b) (the STOMP update); each block restarts from a direct correlation,
    so blocks are independent of each other. The streamed squared distances
    only shortlist candidates: every window within `tolerance` of the row
    minimum is re-scored from its z-normalized samples, and the smallest j
    among the exact minima wins.
    """

    def __init__(self, a, b, window, exclusion_radius=None):
        self.window = window
        self.exclusion_radius = exclusion_radius
        self.tolerance = TIE_TOLERANCE * window
        a = np.asarray(a, dtype=float)
        b = a if b is None else np.asarray(b, dtype=float)
        # Centering leaves z-normalized distances unchanged and keeps the
        # streamed dot products small.
        self.ca = a - a.mean()
        self.cb = b - b.mean()
        self.rows = a.size - window + 1
        self.cols = b.size - window + 1

        mu_a, std_a = sliding_window_stats(self.ca, window)
        mu_b, std_b = sliding_window_stats(self.cb, window)
        flat_a, flat_b = std_a < FLAT_EPSILON, std_b < FLAT_EPSILON
        inv_b = np.where(flat_b, 0.0, 1.0 / np.where(flat_b, 1.0, std_b))
        self.mu_a = mu_a
        self.inv_a = np.where(flat_a, 0.0, 1.0 / np.where(flat_a, 1.0, std_a))
        self.sq_b = np.where(flat_b, 0.0, float(window))
        # Up to the per-row constant ||za||^2:
        # squared[j] = sq_b[j] - inv_a * (two_inv_b[j] * qt[j] - mu_a * two_mu_inv_b[j])
        self.two_inv_b = 2.0 * inv_b
        self.two_mu_inv_b = 2.0 * window * mu_b * inv_b
        self.first_column = np.correlate(self.ca, self.cb[:window], mode='valid')

        self.za = znormalize_windows(a, window)
        self.zb = self.za if b is a else znormalize_windows(b, window)

    def _exact(self, i, candidates):
        if candidates.size == 1:
            j = int(candidates[0])
            return j, float(np.sqrt(((self.zb[j] - self.za[i]) ** 2).sum()))
        distances = np.sqrt(((self.zb[candidates] - self.za[i]) ** 2).sum(axis=1))
        # first minimum, i.e. the smallest j among exact ties
        k = int(np.argmin(distances))
        return int(candidates[k]), float(distances[k])

    def run_block(self, start, stop):
        m, r, cols = self.window, self.exclusion_radius, self.cols
        qt = np.correlate(self.cb, self.ca[start:start + m], mode='valid')
        spare = np.empty(cols)
        squared = np.empty(cols)
        indices = np.empty(stop - start, dtype=np.int64)
        profile = np.empty(stop - start)
        for row, i in enumerate(range(start, stop)):
            if i > start:
                np.multiply(self.cb[m:], self.ca[i + m - 1], out=spare[1:])
                spare[1:] -= self.ca[i - 1] * self.cb[:cols - 1]
                spare[1:] += qt[:-1]
                spare[0] = self.first_column[i]
                qt, spare = spare, qt
            np.multiply(qt, self.two_inv_b, out=squared)
            squared -= self.mu_a[i] * self.two_mu_inv_b
            squared *= -self.inv_a[i]
            squared += self.sq_b
            if r is not None:
                squared[max(0, i - r):i + r + 1] = np.inf
            candidates = np.flatnonzero(squared <= squared.min() + self.tolerance)
            indices[row], profile[row] = self._exact(i, candidates)
        logger.debug(f"Join rows [{start}, {stop}) done")
        return indices, profile

    def run(self, block_rows=DEFAULT_BLOCK_ROWS, workers=1):
        block_rows = max(1, int(block_rows))
        bounds = [(s, min(s + block_rows, self.rows)) for s in range(0, self.rows, block_rows)]
        if workers and workers > 1 and len(bounds) > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                parts = list(pool.map(lambda b: self.run_block(*b), bounds))
        else:
            parts = [self.run_block(s, e) for s, e in bounds]
        indices = np.concatenate([p[0] for p in parts]).astype(np.int64)
        profile = np.concatenate([p[1] for p in parts])
        return profile, indices


def matrix_profile_ab(a, b, window, block_rows=DEFAULT_BLOCK_ROWS, workers=1):
    """
    AB-join matrix profile of `a` against `b`.

    Args:
        a: Series the profile is indexed over
        b: Series searched for nearest neighbours
        window: Subsequence length (samples)
        block_rows: Query rows per block
        workers: Threads used to evaluate blocks

    Returns:
        MatrixProfileResult: length len(a) - window + 1; ties go to the smallest index
    """
    a, b = as_series(a), as_series(b)
    _check_window(window, len(a), len(b))
    logger.debug(f"AB-join: n_a={len(a)}, n_b={len(b)}, window={window}")
    profile, indices = _StreamingJoin(a.values, b.values, window).run(block_rows, workers)
    return MatrixProfileResult(profile, indices, window, len(a), len(b))


def default_exclusion_radius(window):
    return int(math.ceil(window / 2))


def matrix_profile_self(a, window, exclusion_radius=None, block_rows=DEFAULT_BLOCK_ROWS, workers=1):
    """
    Self-join matrix profile; candidates with |i - j| <= exclusion_radius are skipped.

    The default radius is ceil(window / 2).
    """
    a = as_series(a)
    _check_window(window, len(a), len(a))
    if exclusion_radius is None:
        exclusion_radius = default_exclusion_radius(window)
    if exclusion_radius < 0:
        raise InvalidWindow(f"exclusion radius must be non-negative, got {exclusion_radius}")

    positions = len(a) - window + 1
    # Position i keeps a candidate iff i - r - 1 >= 0 or i + r + 1 <= positions - 1.
    i = np.arange(positions)
    admissible = (i - exclusion_radius - 1 >= 0) | (i + exclusion_radius + 1 <= positions - 1)
    if not admissible.all():
        raise DegenerateSeries(
            f"exclusion radius {exclusion_radius} leaves no candidate for position {int(np.argmin(admissible))}"
        )

    logger.debug(f"Self-join: n={len(a)}, window={window}, radius={exclusion_radius}")
    profile, indices = _StreamingJoin(a.values, None, window, exclusion_radius).run(block_rows, workers)
    return MatrixProfileResult(profile, indices, window, len(a), len(a), exclusion_radius)


def matrix_profile_naive(a, b, window):
    """Reference AB-join: for every window of `a`, scan every window of `b`."""
    a, b = as_series(a), as_series(b)
    _check_window(window, len(a), len(b))
    rows = len(a) - window + 1
    cols = len(b) - window + 1
    candidates = np.array([znormalize(b.values[j:j + window]) for j in range(cols)])

    profile = np.empty(rows)
    indices = np.empty(rows, dtype=np.int64)
    for i in range(rows):
        query = znormalize(a.values[i:i + window])
        distances = np.sqrt(((candidates - query) ** 2).sum(axis=1))
        # argmin returns the first minimum, i.e. the smallest j on ties
        indices[i] = int(np.argmin(distances))
        profile[i] = distances[indices[i]]
    return MatrixProfileResult(profile, indices, window, len(a), len(b))
