import glob
import logging
import os

import pandas as pd
import simplejson

from core.exceptions import EmptyDataset, ParseError, SeriesFileNotFound
from core.services.synthetic import LabeledPair
from .load_csv import load_csv
from .write_report import atomic_write_text, report_to_json

logger = logging.getLogger(__name__)

TRUTH_SUFFIX = '_truth.json'


def pair_stem(family, seed):
    return f"{family}_{seed:04d}"


def series_to_csv(series):
    """Single `value` column; floats keep their shortest round-trip repr."""
    return pd.DataFrame({'value': series.values}).to_csv(index=False, lineterminator="\n")


def write_pair(pair: LabeledPair, directory):
    """
    Write <stem>_leader.csv, <stem>_follower.csv and <stem>_truth.json.

    Returns:
        dict: role -> written path
    """
    stem = pair_stem(pair.family, pair.seed)
    paths = {
        'leader': os.path.join(directory, f"{stem}_leader.csv"),
        'follower': os.path.join(directory, f"{stem}_follower.csv"),
        'truth': os.path.join(directory, f"{stem}{TRUTH_SUFFIX}"),
    }
    atomic_write_text(paths['leader'], series_to_csv(pair.leader))
    atomic_write_text(paths['follower'], series_to_csv(pair.follower))
    atomic_write_text(paths['truth'], report_to_json(pair))
    logger.debug(f"Wrote pair {stem} to {directory}")
    return paths


def load_truth(path):
    """Parse a ground-truth sidecar into a dict."""
    path = os.fspath(path)
    if not os.path.exists(path):
        raise SeriesFileNotFound(f"File not found: {path}")
    try:
        with open(path, encoding='utf-8') as f:
            payload = simplejson.load(f)
    except simplejson.JSONDecodeError as e:
        raise ParseError(f"invalid JSON in {path}: {e.msg}", line=e.lineno)
    for key in ('leader_intervals', 'follower_intervals'):
        if key not in payload:
            raise ParseError(f"{path} has no {key!r} entry")
    return payload


def load_pair(truth_path) -> LabeledPair:
    """Load a pair from its truth sidecar and the two CSV files next to it."""
    truth_path = os.fspath(truth_path)
    stem = truth_path[:-len(TRUTH_SUFFIX)] if truth_path.endswith(TRUTH_SUFFIX) else truth_path
    payload = load_truth(truth_path)
    leader = load_csv(f"{stem}_leader.csv", name=f"{os.path.basename(stem)}_leader")
    follower = load_csv(f"{stem}_follower.csv", name=f"{os.path.basename(stem)}_follower")
    return LabeledPair.from_json(payload, leader, follower)


def load_dataset(directory):
    """Every pair in `directory`, ordered by file name."""
    truth_files = sorted(glob.glob(os.path.join(glob.escape(os.fspath(directory)), f"*{TRUTH_SUFFIX}")))
    if not truth_files:
        raise EmptyDataset(f"no *{TRUTH_SUFFIX} files in {directory}")
    logger.info(f"Loading {len(truth_files)} pair(s) from {directory}")
    return [load_pair(path) for path in truth_files]
