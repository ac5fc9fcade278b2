import time

import numpy as np

from core.management.base import FollowMotifCommand
from core.services.matrix_profile import matrix_profile_ab, matrix_profile_naive


class Command(FollowMotifCommand):
    help = 'Time the AB-join matrix profile on random-walk series'

    def add_arguments(self, parser):
        parser.add_argument('--n', type=int, default=20000, help='Samples per series')
        parser.add_argument('--window', type=int, help='Subsequence length in samples')
        parser.add_argument('--seed', type=int, default=0)
        parser.add_argument('--naive', action='store_true', help='Also time the reference join')
        parser.add_argument('--out', help='Optional JSON file for the timings')
        self.add_worker_argument(parser)

    def _timed(self, function, *args, **kwargs):
        started = time.perf_counter()
        function(*args, **kwargs)
        return time.perf_counter() - started

    def run(self, **options):
        config = self.build_config(options)
        rng = np.random.default_rng(options['seed'])
        a = np.cumsum(rng.normal(size=options['n']))
        b = np.cumsum(rng.normal(size=options['n']))

        timings = {
            'n': options['n'],
            'window': config.window,
            'workers': config.workers,
            'block_rows': config.block_rows,
            'ab_join_seconds': self._timed(matrix_profile_ab, a, b, config.window,
                                           config.block_rows, config.workers),
        }
        self.stdout.write(f"ab_join n={options['n']} window={config.window}: {timings['ab_join_seconds']:.3f}s")
        if options['naive']:
            timings['naive_seconds'] = self._timed(matrix_profile_naive, a, b, config.window)
            self.stdout.write(f"naive: {timings['naive_seconds']:.3f}s")
        if options['out']:
            config.output_format = 'json'
            self.write(timings, config, options['out'])
