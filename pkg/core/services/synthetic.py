"""
Seeded synthetic leader/follower benchmark families.

Every generator is a pure function of (seed, series_length, motif_form). One
numpy Generator is created per pair and consumed in a fixed order: follow
offset, motif layout (length, x1, x2 and lag per motif), the two N(0, 0.5)
backgrounds, the interruption (noncontinuous only) and finally the two
N(0, 0.1) noise passes added to the follower.
"""
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from core.exceptions import EmptyDataset, InvalidParams, LengthTooShort
from core.series import TimeSeries
from core.utils.intervals import intervals_to_mask

logger = logging.getLogger(__name__)

SINGLE = 'single'
CONTINUOUS = 'continuous'
NONCONTINUOUS = 'noncontinuous'
MIXED = 'mixed'
FAMILIES = (SINGLE, CONTINUOUS, NONCONTINUOUS)

MOTIF_FORMS = ('sine', 'ramp')
X1_RANGE = (0.2, 2.0)
X2_RANGE = (3.0, 5.0)
BACKGROUND_SIGMA = 0.5
FOLLOWER_NOISE_SIGMA = 0.1
FOLLOWER_NOISE_PASSES = 2
MAX_LAG = 3
MAX_MOTIFS = 10
GAP_RATIO = 1.2
MIN_GAP = MAX_LAG + 1

FOLLOW_OFFSET_FRACTION = (0.20, 0.35)
SINGLE_MOTIF_FRACTION = (0.10, 0.20)
CONTINUOUS_MOTIF_FRACTION = (0.025, 0.10)
INTERRUPTION_FRACTION = (0.10, 0.15)


@dataclass(frozen=True)
class MotifParams:
    length: int
    x1: float
    x2: float

    def __post_init__(self):
        if self.length < 0:
            raise InvalidParams(f"motif length must be non-negative, got {self.length}")
        if not (X1_RANGE[0] <= self.x1 <= X1_RANGE[1]):
            raise InvalidParams(f"x1 must lie in {X1_RANGE}, got {self.x1}")
        if not (X2_RANGE[0] <= self.x2 <= X2_RANGE[1]):
            raise InvalidParams(f"x2 must lie in {X2_RANGE}, got {self.x2}")

    @property
    def samples(self):
        return self.length + 1

    def for_json(self):
        return {'length': self.length, 'x1': self.x1, 'x2': self.x2}


def gen_motif(params: MotifParams, form='sine') -> np.ndarray:
    """
    Motif samples for n = 0 .. params.length.

    form='sine' evaluates sin(n * x1 / x2); form='ramp' evaluates the literal
    n * sin(x1 / x2), a straight line.
    """
    if form not in MOTIF_FORMS:
        raise InvalidParams(f"unknown motif form {form!r}; expected one of {MOTIF_FORMS}")
    n = np.arange(params.samples, dtype=float)
    if form == 'sine':
        return np.sin(n * params.x1 / params.x2)
    return n * math.sin(params.x1 / params.x2)


@dataclass(frozen=True)
class LabeledPair:
    """A generated leader/follower pair with its ground truth."""

    leader: TimeSeries
    follower: TimeSeries
    leader_intervals: Tuple[Tuple[int, int], ...]
    follower_intervals: Tuple[Tuple[int, int], ...]
    lags: Tuple[int, ...]
    family: str
    seed: int
    motif_params: Tuple[MotifParams, ...] = ()
    follow_offsets: Tuple[int, ...] = ()
    motif_form: str = 'sine'
    series_length: Optional[int] = None
    interruption: Optional[Tuple[int, int]] = None

    @property
    def motif_count(self):
        return len(self.leader_intervals)

    def for_json(self):
        """Ground-truth sidecar: every field except the sample values."""
        return {
            'family': self.family,
            'seed': self.seed,
            'series_length': self.series_length,
            'motif_form': self.motif_form,
            'leader_intervals': [list(iv) for iv in self.leader_intervals],
            'follower_intervals': [list(iv) for iv in self.follower_intervals],
            'lags': list(self.lags),
            'follow_offsets': list(self.follow_offsets),
            'motif_params': [p.for_json() for p in self.motif_params],
            'interruption': list(self.interruption) if self.interruption else None,
        }

    @classmethod
    def from_json(cls, payload, leader, follower):
        interruption = payload.get('interruption')
        return cls(
            leader=leader,
            follower=follower,
            leader_intervals=tuple(tuple(iv) for iv in payload['leader_intervals']),
            follower_intervals=tuple(tuple(iv) for iv in payload['follower_intervals']),
            lags=tuple(payload.get('lags', ())),
            family=payload.get('family', ''),
            seed=payload.get('seed', 0),
            motif_params=tuple(MotifParams(**p) for p in payload.get('motif_params', ())),
            follow_offsets=tuple(payload.get('follow_offsets', ())),
            motif_form=payload.get('motif_form', 'sine'),
            series_length=payload.get('series_length'),
            interruption=tuple(interruption) if interruption else None,
        )


def truth_masks(pair: LabeledPair):
    """Ground-truth boolean masks (leader, follower) built from the recorded intervals."""
    return (
        intervals_to_mask(pair.leader_intervals, len(pair.leader)),
        intervals_to_mask(pair.follower_intervals, len(pair.follower)),
    )


def _fraction_length(rng, series_length, bounds):
    return int(math.ceil(series_length * rng.uniform(*bounds)))


def _gap(*lengths):
    return max(int(math.ceil(GAP_RATIO * max(lengths))), MIN_GAP)


def _draw_params(rng, length):
    return MotifParams(length, float(rng.uniform(*X1_RANGE)), float(rng.uniform(*X2_RANGE)))


def _layout(rng, series_length, offset, motif_fraction, max_motifs):
    """
    Leader motif starts, parameters and lags that fit once shifted by the offset.

    Each motif is preceded by a non-motif gap of ceil(1.2 * L) samples, L being
    the longer of it and its predecessor.
    """
    starts, params, lags = [], [], []
    cursor, previous = 0, 0
    for _ in range(max_motifs):
        length = _fraction_length(rng, series_length, motif_fraction)
        motif = _draw_params(rng, length)
        lag = int(rng.integers(0, MAX_LAG + 1))
        start = cursor + _gap(length, previous)
        if start + offset + lag + motif.samples > series_length:
            break
        starts.append(start)
        params.append(motif)
        lags.append(lag)
        cursor, previous = start + motif.samples, length
    return starts, params, lags


def _build_pair(family, seed, series_length, motif_form, motif_fraction, max_motifs, interrupt):
    if series_length < 2:
        raise LengthTooShort(f"series length must be at least 2, got {series_length}")
    if motif_form not in MOTIF_FORMS:
        raise InvalidParams(f"unknown motif form {motif_form!r}; expected one of {MOTIF_FORMS}")
    rng = np.random.default_rng(seed)

    offset = _fraction_length(rng, series_length, FOLLOW_OFFSET_FRACTION)
    starts, params, lags = _layout(rng, series_length, offset, motif_fraction, max_motifs)
    if not starts:
        raise LengthTooShort(
            f"series length {series_length} cannot hold a motif and its follow offset {offset}"
        )

    leader = rng.normal(0.0, BACKGROUND_SIGMA, series_length)
    follower = rng.normal(0.0, BACKGROUND_SIGMA, series_length)
    motifs = [gen_motif(p, motif_form) for p in params]
    follower_starts = [s + offset + lag for s, lag in zip(starts, lags)]
    for s, f, motif in zip(starts, follower_starts, motifs):
        leader[s:s + motif.size] = motif
        follower[f:f + motif.size] = motif

    offsets = [offset] * len(starts)
    interruption = None
    if interrupt:
        size = _fraction_length(rng, series_length, INTERRUPTION_FRACTION)
        segment = rng.normal(0.0, BACKGROUND_SIGMA, size)
        # Insert between two follower motifs, after the first half of them.
        after = max(len(starts) // 2 - 1, 0)
        at = follower_starts[after] + motifs[after].size
        follower = np.concatenate([follower[:at], segment, follower[at:]])[:series_length]
        interruption = (at, size)
        keep = []
        for k in range(len(starts)):
            if k > after:
                follower_starts[k] += size
                offsets[k] += size
            if follower_starts[k] + motifs[k].size <= series_length:
                keep.append(k)
        if len(keep) < len(starts):
            logger.debug(f"seed {seed}: interruption pushed {len(starts) - len(keep)} motif(s) past the end")
        starts, params, lags, motifs, follower_starts, offsets = (
            [seq[k] for k in keep] for seq in (starts, params, lags, motifs, follower_starts, offsets)
        )

    for _ in range(FOLLOWER_NOISE_PASSES):
        follower = follower + rng.normal(0.0, FOLLOWER_NOISE_SIGMA, series_length)

    pair = LabeledPair(
        leader=TimeSeries(leader, f"{family}_{seed:04d}_leader"),
        follower=TimeSeries(follower, f"{family}_{seed:04d}_follower"),
        leader_intervals=tuple((s, s + m.size) for s, m in zip(starts, motifs)),
        follower_intervals=tuple((f, f + m.size) for f, m in zip(follower_starts, motifs)),
        lags=tuple(lags),
        family=family,
        seed=seed,
        motif_params=tuple(params),
        follow_offsets=tuple(offsets),
        motif_form=motif_form,
        series_length=series_length,
        interruption=interruption,
    )
    logger.debug(f"Generated {family} pair seed={seed} with {pair.motif_count} motif(s)")
    return pair


def gen_single_motif_pair(seed, series_length=2000, motif_form='sine') -> LabeledPair:
    """One motif in the leader, repeated once in the follower after the follow offset."""
    return _build_pair(SINGLE, seed, series_length, motif_form, SINGLE_MOTIF_FRACTION, 1, False)


def gen_continuous_pair(seed, series_length=2000, motif_form='sine') -> LabeledPair:
    """Up to ten motifs, all replicated by the follower with per-motif lags."""
    return _build_pair(CONTINUOUS, seed, series_length, motif_form, CONTINUOUS_MOTIF_FRACTION,
                       MAX_MOTIFS, False)


def gen_noncontinuous_pair(seed, series_length=2000, motif_form='sine') -> LabeledPair:
    """
    As gen_continuous_pair, with a noise segment inserted into the follower's
    following region and the follower trimmed back to series_length.
    """
    return _build_pair(NONCONTINUOUS, seed, series_length, motif_form, CONTINUOUS_MOTIF_FRACTION,
                       MAX_MOTIFS, True)


GENERATORS = {
    SINGLE: gen_single_motif_pair,
    CONTINUOUS: gen_continuous_pair,
    NONCONTINUOUS: gen_noncontinuous_pair,
}


def gen_mixed_dataset(seeds, series_length=2000, motif_form='sine') -> List[LabeledPair]:
    """All single pairs, then all continuous, then all noncontinuous, over `seeds`."""
    seeds = list(seeds)
    if not seeds:
        raise EmptyDataset("the mixed dataset needs at least one seed")
    return [
        GENERATORS[family](seed, series_length, motif_form)
        for family in FAMILIES
        for seed in seeds
    ]


def gen_family(family, seeds, series_length=2000, motif_form='sine') -> List[LabeledPair]:
    """Pairs of one family (or the mixed set) over `seeds`."""
    if family == MIXED:
        return gen_mixed_dataset(seeds, series_length, motif_form)
    if family not in GENERATORS:
        raise InvalidParams(f"unknown family {family!r}; expected one of {FAMILIES + (MIXED,)}")
    seeds = list(seeds)
    if not seeds:
        raise EmptyDataset(f"no seeds given for family {family}")
    logger.info(f"Generating {len(seeds)} {family} pair(s) of length {series_length}")
    return [GENERATORS[family](seed, series_length, motif_form) for seed in seeds]
