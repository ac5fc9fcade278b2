"""
Command options merged over the FOLLOW_MOTIF settings defaults.
"""
import re
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from django.conf import settings

from .exceptions import UsageError
from .utils.write_report import REPORT_FORMATS

SEED_RANGE = re.compile(r'^\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*$')


def parse_seed_range(text) -> range:
    """'A..B' (inclusive) or a single integer."""
    text = str(text)
    match = SEED_RANGE.match(text)
    if match:
        first, last = int(match.group(1)), int(match.group(2))
    else:
        try:
            first = last = int(text)
        except ValueError:
            raise UsageError(f"seed range must look like A..B, got {text!r}")
    if last < first:
        raise UsageError(f"seed range {text!r} is empty")
    return range(first, last + 1)


def parse_sigmas(text) -> List[float]:
    """Comma-separated noise levels, e.g. '0,0.001,0.005'."""
    try:
        sigmas = [float(part) for part in str(text).split(',') if part.strip()]
    except ValueError:
        raise UsageError(f"sigmas must be comma-separated numbers, got {text!r}")
    if not sigmas:
        raise UsageError("at least one sigma is required")
    if any(s < 0 for s in sigmas):
        raise UsageError(f"sigmas must be non-negative, got {text!r}")
    return sigmas


def defaults():
    return dict(getattr(settings, 'FOLLOW_MOTIF', {}))


@dataclass
class RunConfig:
    command: str
    inputs: Tuple[str, ...] = ()
    window: int = 300
    percentile_gap: float = 0.01
    timestep_gap: float = 37.0
    seeds: Optional[range] = None
    family: Optional[str] = None
    sigmas: List[float] = field(default_factory=list)
    output_dir: Optional[str] = None
    output_format: str = 'json'
    block_rows: int = 256
    workers: int = 1

    @classmethod
    def from_options(cls, command, options, inputs=(), require_seeds=False):
        """Build from parsed command options; None values fall back to settings."""
        base = defaults()

        def pick(option, key, fallback):
            value = options.get(option)
            if value is None:
                value = base.get(key, fallback)
            return value

        seeds = options.get('seeds')
        config = cls(
            command=command,
            inputs=tuple(inputs),
            window=int(pick('window', 'WINDOW', 300)),
            percentile_gap=float(pick('gap', 'PERCENTILE_GAP', 0.01)),
            timestep_gap=float(pick('timestep_gap', 'TIMESTEP_GAP', 37.0)),
            seeds=parse_seed_range(seeds) if seeds is not None else None,
            family=options.get('family'),
            sigmas=parse_sigmas(options['sigmas']) if options.get('sigmas') is not None else [],
            output_dir=pick('out', 'OUTPUT_DIR', None),
            output_format=pick('format', 'OUTPUT_FORMAT', 'json'),
            block_rows=int(base.get('BLOCK_ROWS', 256)),
            workers=int(pick('workers', 'WORKERS', 1)),
        )
        config.validate(require_seeds)
        return config

    def validate(self, require_seeds=False):
        if self.window < 2:
            raise UsageError(f"--window must be at least 2, got {self.window}")
        if not (0 < self.percentile_gap < 50):
            raise UsageError(f"--gap must lie in (0, 50), got {self.percentile_gap}")
        if not (0 < self.timestep_gap < 50):
            raise UsageError(f"--timestep-gap must lie in (0, 50), got {self.timestep_gap}")
        if require_seeds and not self.seeds:
            raise UsageError("--seeds is required")
        if self.output_format not in REPORT_FORMATS:
            raise UsageError(f"--format must be one of {REPORT_FORMATS}, got {self.output_format!r}")
        if self.workers < 1:
            raise UsageError(f"--workers must be at least 1, got {self.workers}")
        if self.block_rows < 1:
            raise UsageError(f"FOLLOW_MOTIF BLOCK_ROWS must be at least 1, got {self.block_rows}")
