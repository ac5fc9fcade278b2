import numpy as np

from core.exceptions import InvalidWindow

# Windows whose population standard deviation falls below this are flat.
FLAT_EPSILON = 1e-12


def znormalize(x):
    """
    Z-normalize a vector with the population standard deviation.

    Flat vectors (std < FLAT_EPSILON) normalize to all zeros, so flat regions
    match each other at distance 0.

    Args:
        x: 1-D array-like of at least two samples

    Returns:
        np.ndarray: (x - mean) / std
    """
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size < 2:
        raise InvalidWindow(f"z-normalization needs at least 2 samples, got {x.size}")
    mu = x.mean()
    sigma = x.std()
    if sigma < FLAT_EPSILON:
        return np.zeros_like(x)
    return (x - mu) / sigma


def znormalize_windows(values, window):
    """
    Z-normalize every length-`window` subsequence of `values`.

    Returns:
        np.ndarray: shape (len(values) - window + 1, window), row t is
        znormalize(values[t:t + window])
    """
    values = np.asarray(values, dtype=float)
    windows = np.lib.stride_tricks.sliding_window_view(values, window)
    means = windows.mean(axis=1)
    stds = windows.std(axis=1)
    flat = stds < FLAT_EPSILON
    safe = np.where(flat, 1.0, stds)
    normalized = (windows - means[:, None]) / safe[:, None]
    normalized[flat] = 0.0
    return normalized
