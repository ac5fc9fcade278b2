from core.management.base import FollowMotifCommand
from core.services.evaluation import noise_sweep
from core.utils.dataset_io import load_truth
from core.utils.load_csv import load_csv


class Command(FollowMotifCommand):
    help = 'Re-run the following motif method under increasing Gaussian noise'

    def add_arguments(self, parser):
        parser.add_argument('--leader', required=True, help='Leader CSV file')
        parser.add_argument('--follower', required=True, help='Follower CSV file')
        parser.add_argument('--sigmas', required=True, help='Comma-separated noise levels')
        parser.add_argument('--truth', help='Ground-truth JSON with leader/follower intervals')
        parser.add_argument('--seed', type=int, help='Noise seed')
        self.add_window_arguments(parser)
        self.add_output_arguments(parser)

    def run(self, **options):
        config = self.build_config(options, inputs=(options['leader'], options['follower']))
        leader = load_csv(options['leader'])
        follower = load_csv(options['follower'])
        truth = None
        if options['truth']:
            payload = load_truth(options['truth'])
            truth = (payload['leader_intervals'], payload['follower_intervals'])
        seed = options['seed'] if options['seed'] is not None else self.settings_default('NOISE_SEED', 0)
        table = noise_sweep((leader, follower), config.sigmas, config.window, config.percentile_gap,
                            seed, truth, config.block_rows)
        for row in table.rows:
            self.stdout.write(f"sigma={row.sigma} lead_value={row.lead_value}")
        self.write(table, config)
