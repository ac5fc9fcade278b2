import logging
import os

import numpy as np
import pandas as pd

from core.exceptions import EmptySeries, ParseError, SeriesFileNotFound
from core.series import TimeSeries

logger = logging.getLogger(__name__)


def _is_numeric(cell):
    return not pd.isna(pd.to_numeric(pd.Series([cell]), errors='coerce').iloc[0])


def load_csv(path, name=None):
    """
    Load a time series from a CSV file.

    The file holds either one column (values) or two columns (time, value);
    time stamps are ignored apart from keeping row order. A single header
    line is detected when the first row is not numeric.

    Args:
        path: Path to the CSV file
        name: Optional label; defaults to the file name without extension

    Returns:
        TimeSeries: the value column
    """
    path = os.fspath(path)
    if not os.path.exists(path):
        raise SeriesFileNotFound(f"File not found: {path}")

    try:
        # Every cell as text so bad rows can be reported by line number.
        df = pd.read_csv(path, header=None, dtype=str, skip_blank_lines=False,
                         skipinitialspace=True)
    except pd.errors.EmptyDataError:
        raise EmptySeries(f"{path} holds no data")
    except pd.errors.ParserError as e:
        raise ParseError(f"could not parse {path}: {e}")

    # Row i of the frame is line i + 1 of the file.
    df.index = np.arange(1, len(df) + 1)
    df = df.dropna(how='all')
    if df.empty:
        raise EmptySeries(f"{path} holds no data")

    if df.shape[1] > 2:
        raise ParseError(f"expected one or two columns, found {df.shape[1]}", line=int(df.index[0]))

    # Only the value column decides; time stamps may be text.
    if not _is_numeric(df.iloc[0, -1]):
        logger.debug(f"Treating line {df.index[0]} of {path} as a header")
        df = df.iloc[1:]
    if df.empty:
        raise EmptySeries(f"{path} has a header but no data rows")

    column = df.iloc[:, -1]
    values = pd.to_numeric(column.str.strip(), errors='coerce')
    bad = values.isna() | ~np.isfinite(values.fillna(0.0))
    if bad.any():
        line = int(bad.idxmax())
        raise ParseError(f"non-numeric value {column.loc[line]!r} in {path}", line=line)

    label = name or os.path.splitext(os.path.basename(path))[0]
    logger.info(f"Loaded {len(values)} samples from {path}")
    return TimeSeries(values.to_numpy(dtype=float), label)
