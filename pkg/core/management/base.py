import logging
import os

from django.core.management.base import BaseCommand, CommandError

from core.exceptions import FollowMotifError, UsageError
from core.run_config import RunConfig, defaults
from core.utils.write_report import REPORT_FORMATS, write_report

logger = logging.getLogger(__name__)


class FollowMotifCommand(BaseCommand):
    """
    Shared plumbing for the analysis commands.

    Subclasses implement run(config, **options). Domain errors become
    CommandError with exit status 2 for bad usage and 1 for everything else.
    """

    requires_system_checks = []
    requires_migrations_checks = False

    def add_window_arguments(self, parser):
        parser.add_argument('--window', type=int, help='Subsequence length in samples')
        parser.add_argument('--gap', type=float, help='Percentile gap below the median')

    def add_output_arguments(self, parser, required=True):
        parser.add_argument('--out', required=required, help='Output file')
        parser.add_argument('--format', choices=REPORT_FORMATS, help='Report format')

    def add_worker_argument(self, parser):
        parser.add_argument('--workers', type=int, help='Worker threads')

    def build_config(self, options, inputs=(), require_seeds=False):
        return RunConfig.from_options(self.command_name, options, inputs, require_seeds)

    def settings_default(self, key, fallback):
        return defaults().get(key, fallback)

    @property
    def command_name(self):
        return self.__class__.__module__.rsplit('.', 1)[-1]

    def write(self, report, config, path=None):
        path = path or config.output_dir
        write_report(report, path, config.output_format)
        self.stdout.write(self.style.SUCCESS(f"Wrote {os.fspath(path)}"))

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except UsageError as e:
            logger.error(f"{self.command_name}: {e}")
            raise CommandError(str(e), returncode=2)
        except (FollowMotifError, OSError) as e:
            logger.error(f"{self.command_name} failed: {e}")
            raise CommandError(str(e), returncode=1)

    def run(self, **options):
        raise NotImplementedError
