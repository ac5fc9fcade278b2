import numpy as np

from core.exceptions import InvalidWindow, QueryTooLong
from core.series import as_series
from .znormalize import znormalize, znormalize_windows


def _check_query(q, u):
    q = np.asarray(q, dtype=float).reshape(-1)
    u = as_series(u)
    if q.size > len(u):
        raise QueryTooLong(f"query of length {q.size} is longer than the series ({len(u)})")
    return q, u.values


def distance_profile_plain(q, u):
    """
    Raw Euclidean distance from `q` to every same-length subsequence of `u`.

    Args:
        q: Query vector of length m
        u: TimeSeries (or array) of length n >= m

    Returns:
        np.ndarray: length n - m + 1, entry t is ||q - u[t:t+m]||
    """
    q, values = _check_query(q, u)
    if q.size < 1:
        raise InvalidWindow("query must hold at least one sample")
    windows = np.lib.stride_tricks.sliding_window_view(values, q.size)
    return np.sqrt(((windows - q) ** 2).sum(axis=1))


def distance_profile_znorm(q, u):
    """
    Z-normalized Euclidean distance from `q` to every subsequence of `u`.

    Entries lie in [0, 2*sqrt(m)].
    """
    q, values = _check_query(q, u)
    if q.size < 2:
        raise InvalidWindow(f"window must be at least 2 samples, got {q.size}")
    zq = znormalize(q)
    zu = znormalize_windows(values, q.size)
    return np.sqrt(((zu - zq) ** 2).sum(axis=1))
