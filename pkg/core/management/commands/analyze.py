from core.management.base import FollowMotifCommand
from core.services.following_motif import following_motif_method, infer_following_motifs_exact
from core.utils.load_csv import load_csv


class Command(FollowMotifCommand):
    help = 'Decide whether the leader series leads the follower series'

    def add_arguments(self, parser):
        parser.add_argument('--leader', required=True, help='Leader CSV file')
        parser.add_argument('--follower', required=True, help='Follower CSV file')
        self.add_window_arguments(parser)
        parser.add_argument('--exact', action='store_true', help='Exact following-motif set instead')
        parser.add_argument('--epsilon', type=float, default=0.0, help='Equality tolerance for --exact')
        self.add_output_arguments(parser)
        self.add_worker_argument(parser)

    def run(self, **options):
        config = self.build_config(options, inputs=(options['leader'], options['follower']))
        leader = load_csv(options['leader'])
        follower = load_csv(options['follower'])
        if options['exact']:
            report = infer_following_motifs_exact(leader, follower, config.window, options['epsilon'])
        else:
            report = following_motif_method(leader, follower, config.window, config.percentile_gap,
                                            config.block_rows, config.workers)
            self.stdout.write(f"lead_value={report.lead_value} lead_decision={report.lead_decision}")
        self.write(report, config)
