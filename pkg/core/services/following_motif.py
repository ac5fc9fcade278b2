"""
Variable-lag following-motif inference.

Two paths are provided:

* infer_following_motifs_exact: the literal set definition. For every window
  of the leader it collects the tied 1-nearest neighbours in the follower
  under the raw Euclidean metric and keeps the pairs that are equal (within
  epsilon) and not earlier than the leader window.
* FollowingMotifMethod: the noise-robust method. It thresholds two AB-join
  matrix profiles at a percentile, pairs the surviving positions and averages
  their index difference into a lead value.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from core.exceptions import (
    EmptyMotifSet,
    IndexOutOfRange,
    InvalidParams,
    WindowTooLarge,
    InvalidWindow,
)
from core.series import as_series
from core.utils.distance_profile import distance_profile_plain
from core.utils.intervals import mask_to_intervals
from .matrix_profile import DEFAULT_BLOCK_ROWS, MatrixProfileResult, matrix_profile_ab

logger = logging.getLogger(__name__)

DEFAULT_WINDOW = 300
DEFAULT_PERCENTILE_GAP = 0.01
DEFAULT_TIE_TOLERANCE = 1e-9
# Profiles whose spread is below this are treated as flat.
FLAT_PROFILE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class FollowingMotifPair:
    leader_start: int
    follower_start: int
    lag: int
    distance: float

    def __post_init__(self):
        if self.lag != self.follower_start - self.leader_start or self.lag < 0:
            raise InvalidParams(
                f"lag {self.lag} does not match starts {self.leader_start} -> {self.follower_start}"
            )

    def for_json(self):
        return {
            'leader_start': self.leader_start,
            'follower_start': self.follower_start,
            'lag': self.lag,
            'distance': self.distance,
        }


@dataclass(frozen=True)
class FollowingMotifSet:
    """Pairs of equal windows where the follower's copy is not earlier."""

    pairs: Tuple[FollowingMotifPair, ...]
    window: int
    leader_length: int
    follower_length: int

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)

    def as_set(self):
        return {(p.leader_start, p.follower_start) for p in self.pairs}

    def lags(self) -> List[int]:
        return [p.lag for p in self.pairs]

    def leader_starts(self) -> List[int]:
        return [p.leader_start for p in self.pairs]

    def for_json(self):
        return {
            'window': self.window,
            'leader_length': self.leader_length,
            'follower_length': self.follower_length,
            'pairs': [p.for_json() for p in self.pairs],
        }

    def to_frame(self):
        return pd.DataFrame(
            [p.for_json() for p in self.pairs],
            columns=['leader_start', 'follower_start', 'lag', 'distance'],
        )


@dataclass(frozen=True)
class NearestNeighborMatch:
    query_start: int
    neighbor_starts: Tuple[int, ...]
    distance: float


def _check_join_window(window, n_w, n_u):
    if window < 2:
        raise InvalidWindow(f"window must be at least 2 samples, got {window}")
    if window > min(n_w, n_u):
        raise WindowTooLarge(f"window {window} exceeds series length {min(n_w, n_u)}")


def similar_join_set(w, u, window, tie_tolerance=DEFAULT_TIE_TOLERANCE) -> List[NearestNeighborMatch]:
    """
    For every window of `w`, the set of windows of `u` at the minimum raw
    Euclidean distance (ties within `tie_tolerance`).

    Args:
        w: Series whose windows are queried
        u: Series searched
        window: Window length
        tie_tolerance: Absolute slack for counting a distance as tied

    Returns:
        list: one NearestNeighborMatch per window of `w`
    """
    w, u = as_series(w), as_series(u)
    _check_join_window(window, len(w), len(u))
    matches = []
    for i in range(len(w) - window + 1):
        distances = distance_profile_plain(w.values[i:i + window], u)
        best = float(distances.min())
        tied = np.flatnonzero(distances <= best + tie_tolerance)
        matches.append(NearestNeighborMatch(i, tuple(int(j) for j in tied), best))
    return matches


def infer_following_motifs_exact(w, u, window, epsilon=0.0, tie_tolerance=DEFAULT_TIE_TOLERANCE):
    """
    Exact variable-lag following-motif set of `u` following `w`.

    A pair (i, j) is kept when u[j:j+window] is among the nearest neighbours
    of w[i:i+window], j - i >= 0 and the two windows agree element-wise
    within `epsilon` (epsilon = 0 means exact equality).
    """
    if epsilon < 0:
        raise InvalidParams(f"epsilon must be non-negative, got {epsilon}")
    w, u = as_series(w), as_series(u)
    pairs = []
    for match in similar_join_set(w, u, window, tie_tolerance):
        i = match.query_start
        query = w.values[i:i + window]
        for j in match.neighbor_starts:
            if j - i < 0:
                continue
            if np.max(np.abs(u.values[j:j + window] - query)) <= epsilon:
                pairs.append(FollowingMotifPair(i, j, j - i, match.distance))
    logger.info(f"Exact inference found {len(pairs)} following pairs (window={window}, epsilon={epsilon})")
    return FollowingMotifSet(tuple(pairs), window, len(w), len(u))


def _profile_values(profile):
    if isinstance(profile, MatrixProfileResult):
        return profile.profile
    return np.asarray(profile, dtype=float)


def _check_gap(percentile_gap):
    if not (0 < percentile_gap < 50):
        raise InvalidParams(f"percentile gap must be in (0, 50), got {percentile_gap}")


def motif_threshold(profile, percentile_gap):
    """The (50 - gap)-th percentile of the profile, linearly interpolated."""
    _check_gap(percentile_gap)
    values = _profile_values(profile)
    if values.size == 0:
        raise EmptyMotifSet("cannot threshold an empty profile")
    return float(np.percentile(values, 50.0 - percentile_gap))


def _below_threshold(values, threshold):
    if threshold <= values.min() and np.ptp(values) > FLAT_PROFILE_TOLERANCE:
        # The percentile sits inside a run of minima; that run is the motif region.
        return np.flatnonzero(values <= threshold)
    return np.flatnonzero(values < threshold)


def extract_motif_indices(profile, percentile_gap):
    """
    Positions whose profile value is strictly below the (50 - gap)-th percentile.

    When the percentile falls inside a run of values equal to the profile
    minimum (and the profile is not flat), those minima are returned instead
    of nothing. A flat profile yields no positions.

    Args:
        profile: MatrixProfileResult or 1-D array of distances
        percentile_gap: Gap in percentile points, 0 < gap < 50

    Returns:
        np.ndarray: increasing int positions, possibly empty
    """
    values = _profile_values(profile)
    threshold = motif_threshold(values, percentile_gap)
    return _below_threshold(values, threshold)


def _truncate(first, second):
    first = np.asarray(first, dtype=np.int64)
    second = np.asarray(second, dtype=np.int64)
    common = min(first.size, second.size)
    return first[:common], second[:common]


def lead_value(follower_indices, leader_indices):
    """
    Mean of follower_indices[k] - leader_indices[k] over the common prefix.

    A positive value means the follower's motifs sit later, i.e. the series
    behind `leader_indices` leads.
    """
    if len(follower_indices) == 0 or len(leader_indices) == 0:
        raise EmptyMotifSet("lead value needs non-empty motif index vectors")
    follower, leader = _truncate(follower_indices, leader_indices)
    return float(np.mean(follower - leader))


def expand_indices_to_mask(indices, window, series_length):
    """
    Mark every time step covered by a window starting at one of `indices`.

    Raises:
        IndexOutOfRange: if an index cannot hold a full window
    """
    indices = np.asarray(indices, dtype=np.int64).reshape(-1)
    if indices.size and (indices.min() < 0 or indices.max() > series_length - window):
        raise IndexOutOfRange(
            f"motif indices must lie in [0, {series_length - window}] for window {window}"
        )
    coverage = np.zeros(series_length + 1, dtype=np.int64)
    np.add.at(coverage, indices, 1)
    np.add.at(coverage, indices + window, -1)
    return np.cumsum(coverage[:series_length]) > 0


def align_intervals(leader_indices, follower_indices) -> List[Tuple[int, int]]:
    """Positional pairing of leader and follower motif positions."""
    leader, follower = _truncate(leader_indices, follower_indices)
    return [(int(l), int(f)) for l, f in zip(leader, follower)]


@dataclass(frozen=True, eq=False)
class FollowReport:
    """Outcome of one run of the following motif method."""

    lead_decision: bool
    lead_value: float
    lead_value_per_pair: float
    lead_value_per_sample: float
    leader_motif_indices: np.ndarray
    follower_motif_indices: np.ndarray
    index_difference: np.ndarray
    leader_mask: np.ndarray
    follower_mask: np.ndarray
    aligned_pairs: Tuple[Tuple[int, int], ...]
    window: int
    percentile_gap: float
    leader_threshold: float
    follower_threshold: float

    def mask_intervals(self):
        return {
            'leader': mask_to_intervals(self.leader_mask),
            'follower': mask_to_intervals(self.follower_mask),
        }

    def for_json(self):
        intervals = self.mask_intervals()
        return {
            'lead_decision': bool(self.lead_decision),
            'lead_value': float(self.lead_value),
            'lead_value_per_pair': float(self.lead_value_per_pair),
            'lead_value_per_sample': float(self.lead_value_per_sample),
            'window': int(self.window),
            'percentile_gap': float(self.percentile_gap),
            'leader_threshold': float(self.leader_threshold),
            'follower_threshold': float(self.follower_threshold),
            'leader_motif_indices': [int(i) for i in self.leader_motif_indices],
            'follower_motif_indices': [int(i) for i in self.follower_motif_indices],
            'index_difference': [int(d) for d in self.index_difference],
            'leader_mask': [bool(v) for v in self.leader_mask],
            'follower_mask': [bool(v) for v in self.follower_mask],
            'leader_intervals': [list(iv) for iv in intervals['leader']],
            'follower_intervals': [list(iv) for iv in intervals['follower']],
            'aligned_pairs': [list(p) for p in self.aligned_pairs],
        }

    def to_frame(self):
        """One row per aligned pair, then one row per maximal mask interval."""
        rows = [
            {'record': 'pair', 'leader_index': l, 'follower_index': f}
            for l, f in self.aligned_pairs
        ]
        for series, spans in self.mask_intervals().items():
            rows.extend(
                {'record': 'interval', 'series': series, 'start': s, 'end': e}
                for s, e in spans
            )
        columns = ['record', 'leader_index', 'follower_index', 'series', 'start', 'end']
        frame = pd.DataFrame(rows, columns=columns)
        return frame.astype({
            'leader_index': 'Int64', 'follower_index': 'Int64', 'start': 'Int64', 'end': 'Int64',
        })


class FollowingMotifMethod:
    """
    Percentile-threshold following motif method.

    Calling an instance with (first, second) answers "does `first` lead?",
    which is the shape the leadership evaluator expects. The two matrix
    profiles can be computed once with profiles() and thresholded at several
    gaps with report_from_profiles().
    """

    def __init__(self, window=DEFAULT_WINDOW, percentile_gap=DEFAULT_PERCENTILE_GAP,
                 block_rows=DEFAULT_BLOCK_ROWS, workers=1):
        if window < 2:
            raise InvalidWindow(f"window must be at least 2 samples, got {window}")
        _check_gap(percentile_gap)
        self.window = window
        self.percentile_gap = percentile_gap
        self.block_rows = block_rows
        self.workers = workers

    def profiles(self, leader_ts, follower_ts) -> Tuple[MatrixProfileResult, MatrixProfileResult]:
        """(profile over the leader, profile over the follower)."""
        leader_ts, follower_ts = as_series(leader_ts), as_series(follower_ts)
        jobs = [(leader_ts, follower_ts), (follower_ts, leader_ts)]
        kwargs = {'block_rows': self.block_rows}
        if self.workers > 1:
            with ThreadPoolExecutor(max_workers=2) as pool:
                return tuple(pool.map(lambda p: matrix_profile_ab(p[0], p[1], self.window, **kwargs), jobs))
        return tuple(matrix_profile_ab(a, b, self.window, **kwargs) for a, b in jobs)

    @staticmethod
    def _motif_positions(profile: MatrixProfileResult, percentile_gap):
        values = profile.profile
        threshold = motif_threshold(values, percentile_gap)
        if np.ptp(values) <= FLAT_PROFILE_TOLERANCE:
            # Every window matches equally well, so every position counts.
            return np.arange(values.size), threshold
        return _below_threshold(values, threshold), threshold

    def report_from_profiles(self, leader_ts, follower_ts, leader_profile, follower_profile,
                             percentile_gap=None) -> FollowReport:
        """Threshold precomputed profiles; `percentile_gap` defaults to the instance's."""
        gap = self.percentile_gap if percentile_gap is None else percentile_gap
        _check_gap(gap)
        leader_idx, leader_threshold = self._motif_positions(leader_profile, gap)
        follower_idx, follower_threshold = self._motif_positions(follower_profile, gap)
        if leader_idx.size == 0 or follower_idx.size == 0:
            raise EmptyMotifSet(
                f"percentile gap {gap} left no motif positions "
                f"(leader={leader_idx.size}, follower={follower_idx.size})"
            )

        leader_cut, follower_cut = _truncate(leader_idx, follower_idx)
        difference = follower_cut - leader_cut
        value = lead_value(follower_cut, leader_cut)
        report = FollowReport(
            lead_decision=bool(value > 0),
            lead_value=value,
            lead_value_per_pair=value / difference.size,
            lead_value_per_sample=value / len(leader_ts),
            leader_motif_indices=leader_cut,
            follower_motif_indices=follower_cut,
            index_difference=difference,
            leader_mask=expand_indices_to_mask(leader_cut, self.window, len(leader_ts)),
            follower_mask=expand_indices_to_mask(follower_cut, self.window, len(follower_ts)),
            aligned_pairs=tuple(align_intervals(leader_cut, follower_cut)),
            window=self.window,
            percentile_gap=gap,
            leader_threshold=leader_threshold,
            follower_threshold=follower_threshold,
        )
        logger.info(f"Lead value {value:.4f} over {difference.size} paired positions (gap={gap})")
        return report

    def run(self, leader_ts, follower_ts) -> FollowReport:
        leader_ts, follower_ts = as_series(leader_ts), as_series(follower_ts)
        logger.info(
            f"Following motif method: n_leader={len(leader_ts)}, n_follower={len(follower_ts)}, "
            f"window={self.window}, gap={self.percentile_gap}"
        )
        leader_profile, follower_profile = self.profiles(leader_ts, follower_ts)
        return self.report_from_profiles(leader_ts, follower_ts, leader_profile, follower_profile)

    def __call__(self, first, second) -> bool:
        return self.run(first, second).lead_decision


def following_motif_method(leader_ts, follower_ts, window=DEFAULT_WINDOW,
                           percentile_gap=DEFAULT_PERCENTILE_GAP, block_rows=DEFAULT_BLOCK_ROWS,
                           workers=1) -> FollowReport:
    """
    Decide whether `leader_ts` leads `follower_ts`.

    Args:
        leader_ts: Candidate leader series
        follower_ts: Candidate follower series
        window: Subsequence length (samples)
        percentile_gap: Gap in percentile points below the median
        block_rows: Rows per matrix-profile block
        workers: Threads; above one the two profiles are computed concurrently

    Returns:
        FollowReport
    """
    method = FollowingMotifMethod(window, percentile_gap, block_rows, workers)
    return method.run(leader_ts, follower_ts)
