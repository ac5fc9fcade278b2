from core.management.base import FollowMotifCommand
from core.services.matrix_profile import matrix_profile_ab, matrix_profile_self
from core.utils.load_csv import load_csv


class Command(FollowMotifCommand):
    help = 'Compute an AB-join (or, without --b, a self-join) matrix profile'

    def add_arguments(self, parser):
        parser.add_argument('--a', required=True, help='CSV file the profile is indexed over')
        parser.add_argument('--b', help='CSV file searched for neighbours')
        parser.add_argument('--window', type=int, help='Subsequence length in samples')
        parser.add_argument('--exclusion-radius', type=int, help='Self-join trivial-match radius')
        self.add_output_arguments(parser)
        self.add_worker_argument(parser)

    def run(self, **options):
        config = self.build_config(options, inputs=tuple(p for p in (options['a'], options['b']) if p))
        a = load_csv(options['a'])
        if options['b']:
            result = matrix_profile_ab(a, load_csv(options['b']), config.window,
                                       config.block_rows, config.workers)
        else:
            result = matrix_profile_self(a, config.window, options['exclusion_radius'],
                                         config.block_rows, config.workers)
        self.write(result, config)
