import logging
import os
import tempfile

import simplejson

from core.exceptions import ReportWriteError, UsageError

logger = logging.getLogger(__name__)

REPORT_FORMATS = ('json', 'csv')


def report_to_json(report):
    """Serialize a report value to stable, sorted JSON text."""
    payload = report.for_json() if hasattr(report, 'for_json') else report
    return simplejson.dumps(payload, sort_keys=True, indent=2, ignore_nan=True) + "\n"


def report_to_csv(report):
    if not hasattr(report, 'to_frame'):
        raise UsageError(f"{type(report).__name__} has no CSV layout")
    return report.to_frame().to_csv(index=False, lineterminator="\n")


def atomic_write_text(path, text):
    """Write `text` to `path` through a temporary file in the same directory."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        fd, tmp_path = tempfile.mkstemp(dir=directory, prefix='.tmp-', suffix=os.path.basename(path))
        try:
            with os.fdopen(fd, 'w', encoding='utf-8', newline='') as f:
                f.write(text)
            os.replace(tmp_path, path)
        except BaseException:
            if os.path.exists(tmp_path):
                os.remove(tmp_path)
            raise
    except OSError as e:
        raise ReportWriteError(f"could not write {path}: {e}")


def write_report(report, path, format='json'):
    """
    Write a report value to disk.

    Args:
        report: FollowReport, MetricsReport, MatrixProfileResult, sweep table
            or any value exposing for_json() / to_frame()
        path: Destination file
        format: 'json' or 'csv'
    """
    if format not in REPORT_FORMATS:
        raise UsageError(f"unknown report format {format!r}; expected one of {REPORT_FORMATS}")
    text = report_to_json(report) if format == 'json' else report_to_csv(report)
    atomic_write_text(path, text)
    logger.info(f"Wrote {type(report).__name__} report to {path}")
