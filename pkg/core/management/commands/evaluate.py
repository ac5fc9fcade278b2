from core.exceptions import UsageError
from core.management.base import FollowMotifCommand
from core.services.evaluation import METHODS, evaluate_dataset
from core.services.synthetic import FAMILIES, MIXED, gen_family
from core.utils.dataset_io import load_dataset


class Command(FollowMotifCommand):
    help = 'Score a leadership method on a labelled dataset'

    def add_arguments(self, parser):
        parser.add_argument('--dataset', help='Directory written by the generate command')
        parser.add_argument('--family', choices=FAMILIES + (MIXED,), help='Generate the dataset in memory')
        parser.add_argument('--seeds', help='Seed range for --family, e.g. 0..99')
        parser.add_argument('--length', type=int, help='Series length for --family')
        parser.add_argument('--method', choices=METHODS, default='fmm')
        parser.add_argument('--max-lag', type=int, help='Largest lag tried by xcorr')
        parser.add_argument('--timestep-gap', type=float,
                            help='Percentile gap for the fmm time-step masks (default 37)')
        self.add_window_arguments(parser)
        self.add_output_arguments(parser)
        self.add_worker_argument(parser)

    def run(self, **options):
        if bool(options['dataset']) == bool(options['family']):
            raise UsageError("give exactly one of --dataset or --family")
        config = self.build_config(options, require_seeds=bool(options['family']))
        if options['dataset']:
            dataset = load_dataset(options['dataset'])
        else:
            length = options['length'] or self.settings_default('SERIES_LENGTH', 2000)
            dataset = gen_family(config.family, config.seeds, length)
        summary = evaluate_dataset(dataset, options['method'], config.window, config.percentile_gap,
                                   options['max_lag'], config.block_rows, config.workers,
                                   config.timestep_gap)
        leadership = summary.leadership
        self.stdout.write(
            f"{options['method']}: precision={leadership.precision:.3f} recall={leadership.recall:.3f} "
            f"f1={leadership.f1:.3f} accuracy={leadership.accuracy:.3f}"
        )
        self.write(summary, config)
