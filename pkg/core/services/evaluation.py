"""
Confusion-matrix scoring for leadership direction and per-time-step motif
prediction, plus the noise-sweep protocol.
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np
import pandas as pd

from core.exceptions import EmptyCounts, EmptyDataset, FollowMotifError, InvalidParams, LengthMismatch
from core.series import as_series
from core.utils.intervals import intervals_to_mask
from core.utils.resample import add_gaussian_noise
from .cross_correlation import CrossCorrelationLeadership
from .following_motif import DEFAULT_PERCENTILE_GAP, DEFAULT_WINDOW, FollowingMotifMethod
from .matrix_profile import DEFAULT_BLOCK_ROWS
from .synthetic import truth_masks

logger = logging.getLogger(__name__)

METHODS = ('fmm', 'xcorr')

# Percentile gap used for the per-time-step masks. The leadership decision keeps
# the method's own gap; a wider gap marks whole motif occurrences.
DEFAULT_TIMESTEP_GAP = 37.0


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise InvalidParams("confusion counts must be non-negative")

    def __add__(self, other):
        if not isinstance(other, ConfusionCounts):
            return NotImplemented
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp,
                               self.fn + other.fn, self.tn + other.tn)

    @property
    def total(self):
        return self.tp + self.fp + self.fn + self.tn

    @classmethod
    def from_masks(cls, predicted, truth):
        predicted = np.asarray(predicted, dtype=bool)
        truth = np.asarray(truth, dtype=bool)
        if predicted.shape != truth.shape:
            raise LengthMismatch(f"predicted mask has {predicted.size} steps, truth has {truth.size}")
        return cls(
            tp=int(np.sum(predicted & truth)),
            fp=int(np.sum(predicted & ~truth)),
            fn=int(np.sum(~predicted & truth)),
            tn=int(np.sum(~predicted & ~truth)),
        )

    def for_json(self):
        return {'tp': self.tp, 'fp': self.fp, 'fn': self.fn, 'tn': self.tn}


@dataclass(frozen=True)
class MetricsReport:
    precision: float
    recall: float
    f1: float
    accuracy: float
    counts: Optional[ConfusionCounts] = None

    def for_json(self):
        payload = {
            'precision': self.precision,
            'recall': self.recall,
            'f1': self.f1,
            'accuracy': self.accuracy,
        }
        if self.counts is not None:
            payload['counts'] = self.counts.for_json()
        return payload

    def to_frame(self):
        return pd.DataFrame([self.for_json()], columns=['precision', 'recall', 'f1', 'accuracy'])


def _ratio(numerator, denominator):
    return numerator / denominator if denominator else 0.0


def metrics_from_counts(c: ConfusionCounts) -> MetricsReport:
    """Precision, recall, F1 and accuracy; any 0/0 ratio is 0."""
    if c.total == 0:
        raise EmptyCounts("cannot compute metrics from an empty confusion matrix")
    precision = _ratio(c.tp, c.tp + c.fp)
    recall = _ratio(c.tp, c.tp + c.fn)
    f1 = _ratio(2 * precision * recall, precision + recall)
    accuracy = (c.tp + c.tn) / c.total
    return MetricsReport(precision, recall, f1, accuracy, c)


def _decide(method, first, second, order, pair):
    try:
        return bool(method(first, second))
    except FollowMotifError as e:
        logger.warning(f"{order} presentation of {pair.family} seed {pair.seed} failed: {e}")
        return None


def leadership_counts(method, pair) -> ConfusionCounts:
    """
    Score one pair in both orders.

    True order: positive is TP, negative FN. Swapped order: positive is FP,
    negative TN. A failed presentation counts as the wrong answer.
    """
    forward = _decide(method, pair.leader, pair.follower, 'true-order', pair)
    backward = _decide(method, pair.follower, pair.leader, 'swapped', pair)
    return ConfusionCounts(
        tp=int(forward is True),
        fn=int(forward is not True),
        fp=int(backward is not False),
        tn=int(backward is False),
    )


def _map(function, items, workers):
    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(function, items))
    return [function(item) for item in items]


def eval_leadership(method, dataset, workers=1) -> MetricsReport:
    """
    Leadership-direction metrics over 2 * len(dataset) presentations.

    Args:
        method: Callable (first, second) -> bool, true when `first` leads
        dataset: LabeledPair list
        workers: Threads evaluating pairs concurrently
    """
    dataset = list(dataset)
    if not dataset:
        raise EmptyDataset("leadership evaluation needs at least one pair")
    counts = sum(_map(lambda p: leadership_counts(method, p), dataset, workers), ConfusionCounts())
    logger.info(f"Leadership counts over {len(dataset)} pair(s): {counts.for_json()}")
    return metrics_from_counts(counts)


def timestep_counts(predicted, truth) -> ConfusionCounts:
    """Summed per-step confusion over paired lists of masks."""
    predicted, truth = list(predicted), list(truth)
    if len(predicted) != len(truth):
        raise LengthMismatch(f"{len(predicted)} predicted mask(s) against {len(truth)} truth mask(s)")
    return sum((ConfusionCounts.from_masks(p, t) for p, t in zip(predicted, truth)), ConfusionCounts())


def eval_timesteps(predicted, truth) -> MetricsReport:
    """
    Micro-averaged per-time-step metrics.

    `predicted` and `truth` are parallel sequences of boolean masks, for
    example [leader_0, follower_0, leader_1, follower_1, ...].
    """
    return metrics_from_counts(timestep_counts(predicted, truth))


@dataclass(frozen=True)
class PairOutcome:
    family: str
    seed: int
    leadership: ConfusionCounts
    leader_steps: Optional[ConfusionCounts] = None
    follower_steps: Optional[ConfusionCounts] = None


@dataclass(frozen=True)
class EvaluationSummary:
    method: str
    pairs: int
    leadership: MetricsReport
    timesteps: Optional[MetricsReport] = None
    leader_timesteps: Optional[MetricsReport] = None
    follower_timesteps: Optional[MetricsReport] = None
    by_family: Dict[str, MetricsReport] = field(default_factory=dict)
    parameters: Dict[str, object] = field(default_factory=dict)

    def for_json(self):
        def optional(report):
            return report.for_json() if report is not None else None

        return {
            'method': self.method,
            'pairs': self.pairs,
            'parameters': dict(self.parameters),
            'leadership': self.leadership.for_json(),
            'timesteps': optional(self.timesteps),
            'leader_timesteps': optional(self.leader_timesteps),
            'follower_timesteps': optional(self.follower_timesteps),
            'by_family': {family: report.for_json() for family, report in sorted(self.by_family.items())},
        }

    def to_frame(self):
        rows = [dict(task='leadership', scope='all', **self.leadership.for_json())]
        for scope, report in (('all', self.timesteps), ('leader', self.leader_timesteps),
                              ('follower', self.follower_timesteps)):
            if report is not None:
                rows.append(dict(task='timesteps', scope=scope, **report.for_json()))
        for family, report in sorted(self.by_family.items()):
            rows.append(dict(task='leadership', scope=family, **report.for_json()))
        frame = pd.DataFrame(rows, columns=['task', 'scope', 'precision', 'recall', 'f1', 'accuracy'])
        return frame


def _fmm_outcome(method: FollowingMotifMethod, pair, timestep_gap) -> PairOutcome:
    truth_leader, truth_follower = truth_masks(pair)
    forward = None
    leader_mask = np.zeros(len(pair.leader), dtype=bool)
    follower_mask = np.zeros(len(pair.follower), dtype=bool)
    try:
        profiles = method.profiles(pair.leader, pair.follower)
    except FollowMotifError as e:
        logger.warning(f"true-order presentation of {pair.family} seed {pair.seed} failed: {e}")
        profiles = None
    if profiles is not None:
        try:
            forward = method.report_from_profiles(pair.leader, pair.follower, *profiles).lead_decision
        except FollowMotifError as e:
            logger.warning(f"true-order presentation of {pair.family} seed {pair.seed} failed: {e}")
        try:
            steps = method.report_from_profiles(pair.leader, pair.follower, *profiles, percentile_gap=timestep_gap)
            leader_mask, follower_mask = steps.leader_mask, steps.follower_mask
        except FollowMotifError as e:
            logger.warning(f"no time-step prediction for {pair.family} seed {pair.seed}: {e}")
    backward = _decide(method, pair.follower, pair.leader, 'swapped', pair)
    return PairOutcome(
        family=pair.family,
        seed=pair.seed,
        leadership=ConfusionCounts(
            tp=int(forward is True), fn=int(forward is not True),
            fp=int(backward is not False), tn=int(backward is False),
        ),
        leader_steps=ConfusionCounts.from_masks(leader_mask, truth_leader),
        follower_steps=ConfusionCounts.from_masks(follower_mask, truth_follower),
    )


def evaluate_dataset(dataset, method='fmm', window=DEFAULT_WINDOW, percentile_gap=DEFAULT_PERCENTILE_GAP,
                     max_lag=None, block_rows=DEFAULT_BLOCK_ROWS, workers=1,
                     timestep_gap=DEFAULT_TIMESTEP_GAP) -> EvaluationSummary:
    """
    Score a method on labelled pairs.

    'fmm' yields leadership and time-step metrics (both series, plus per-series
    breakdowns); 'xcorr' yields leadership metrics only. Mixed datasets also
    get a leadership row per family.

    Both profiles are computed once per pair. The leadership decision thresholds
    them at `percentile_gap`, the time-step masks at `timestep_gap`.
    """
    dataset = list(dataset)
    if not dataset:
        raise EmptyDataset("evaluation needs at least one pair")
    if method not in METHODS:
        raise InvalidParams(f"unknown method {method!r}; expected one of {METHODS}")

    if method == 'fmm':
        if not (0 < timestep_gap < 50):
            raise InvalidParams(f"timestep gap must be in (0, 50), got {timestep_gap}")
        fmm = FollowingMotifMethod(window, percentile_gap, block_rows)
        outcomes = _map(lambda p: _fmm_outcome(fmm, p, timestep_gap), dataset, workers)
        parameters = {'window': window, 'percentile_gap': percentile_gap, 'timestep_gap': timestep_gap}
    else:
        xcorr = CrossCorrelationLeadership(max_lag)
        outcomes = _map(
            lambda p: PairOutcome(p.family, p.seed, leadership_counts(xcorr, p)), dataset, workers,
        )
        parameters = {'max_lag': max_lag}

    leadership = sum((o.leadership for o in outcomes), ConfusionCounts())
    by_family = {}
    families = sorted({o.family for o in outcomes})
    if len(families) > 1:
        for family in families:
            counts = sum((o.leadership for o in outcomes if o.family == family), ConfusionCounts())
            by_family[family] = metrics_from_counts(counts)

    summary = dict(method=method, pairs=len(dataset), leadership=metrics_from_counts(leadership),
                   by_family=by_family, parameters=parameters)
    if method == 'fmm':
        leader_steps = sum((o.leader_steps for o in outcomes), ConfusionCounts())
        follower_steps = sum((o.follower_steps for o in outcomes), ConfusionCounts())
        summary.update(
            timesteps=metrics_from_counts(leader_steps + follower_steps),
            leader_timesteps=metrics_from_counts(leader_steps),
            follower_timesteps=metrics_from_counts(follower_steps),
        )
    logger.info(f"Evaluated {method} on {len(dataset)} pair(s): accuracy {summary['leadership'].accuracy:.3f}")
    return EvaluationSummary(**summary)


@dataclass(frozen=True)
class SweepRow:
    sigma: float
    lead_value: float
    lead_decision: bool
    metrics: Optional[MetricsReport] = None

    def for_json(self):
        return {
            'sigma': self.sigma,
            'lead_value': self.lead_value,
            'lead_decision': self.lead_decision,
            'metrics': self.metrics.for_json() if self.metrics is not None else None,
        }


@dataclass(frozen=True)
class SweepTable:
    rows: List[SweepRow]

    def for_json(self):
        return {'rows': [row.for_json() for row in self.rows]}

    def to_frame(self):
        columns = ['sigma', 'lead_value', 'precision', 'recall', 'f1', 'accuracy']
        records = []
        for row in self.rows:
            record = {'sigma': row.sigma, 'lead_value': row.lead_value}
            if row.metrics is not None:
                record.update(row.metrics.for_json())
                record.pop('counts', None)
            records.append(record)
        return pd.DataFrame(records, columns=columns)


def noise_sweep(pair, sigmas, window=DEFAULT_WINDOW, percentile_gap=DEFAULT_PERCENTILE_GAP, seed=0,
                truth=None, block_rows=DEFAULT_BLOCK_ROWS) -> SweepTable:
    """
    Re-run the following motif method with increasing Gaussian noise.

    Args:
        pair: (leader, follower)
        sigmas: Noise standard deviations, reported in the given order
        seed: Leader noise uses `seed`, follower noise `seed + 1`
        truth: Optional (leader_intervals, follower_intervals) to score masks against

    Returns:
        SweepTable: one SweepRow per sigma
    """
    sigmas = list(sigmas)
    if not sigmas:
        raise InvalidParams("noise sweep needs at least one sigma")
    leader, follower = (as_series(s) for s in pair)
    method = FollowingMotifMethod(window, percentile_gap, block_rows)
    truth_steps = None
    if truth is not None:
        truth_steps = (intervals_to_mask(truth[0], len(leader)), intervals_to_mask(truth[1], len(follower)))

    rows = []
    for sigma in sigmas:
        report = method.run(add_gaussian_noise(leader, sigma, seed), add_gaussian_noise(follower, sigma, seed + 1))
        metrics = None
        if truth_steps is not None:
            metrics = eval_timesteps([report.leader_mask, report.follower_mask], truth_steps)
        logger.info(f"sigma={sigma}: lead value {report.lead_value:.4f}")
        rows.append(SweepRow(float(sigma), report.lead_value, report.lead_decision, metrics))
    return SweepTable(rows)
