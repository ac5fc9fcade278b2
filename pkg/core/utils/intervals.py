from typing import Iterable, List, Tuple

import numpy as np

from core.exceptions import IndexOutOfRange


def intervals_to_mask(intervals: Iterable[Tuple[int, int]], length: int) -> np.ndarray:
    """Boolean mask of `length` that is True inside every half-open [start, end)."""
    mask = np.zeros(length, dtype=bool)
    for start, end in intervals:
        if start < 0 or end > length or start > end:
            raise IndexOutOfRange(f"interval [{start}, {end}) does not fit length {length}")
        mask[start:end] = True
    return mask


def mask_to_intervals(mask) -> List[Tuple[int, int]]:
    """
    Maximal runs of True in `mask`, as half-open [start, end) pairs.

    Args:
        mask: 1-D boolean array-like

    Returns:
        list: [(start, end), ...] in increasing order
    """
    mask = np.asarray(mask, dtype=bool)
    if mask.size == 0:
        return []
    padded = np.concatenate(([False], mask, [False])).astype(np.int8)
    edges = np.flatnonzero(np.diff(padded))
    return [(int(s), int(e)) for s, e in zip(edges[0::2], edges[1::2])]
