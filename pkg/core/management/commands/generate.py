import os

from core.management.base import FollowMotifCommand
from core.services.synthetic import FAMILIES, MIXED, MOTIF_FORMS, gen_family
from core.utils.dataset_io import write_pair


class Command(FollowMotifCommand):
    help = 'Generate seeded synthetic leader/follower pairs with ground truth'

    def add_arguments(self, parser):
        parser.add_argument('--family', required=True, choices=FAMILIES + (MIXED,))
        parser.add_argument('--seeds', required=True, help='Inclusive seed range, e.g. 0..99')
        parser.add_argument('--length', type=int, help='Series length in samples')
        parser.add_argument('--motif-form', choices=MOTIF_FORMS, default='sine')
        parser.add_argument('--out', help='Output directory')

    def run(self, **options):
        config = self.build_config(options, require_seeds=True)
        length = options['length'] or self.settings_default('SERIES_LENGTH', 2000)
        pairs = gen_family(config.family, config.seeds, length, options['motif_form'])
        os.makedirs(config.output_dir, exist_ok=True)
        for pair in pairs:
            write_pair(pair, config.output_dir)
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(pairs)} pair(s) to {config.output_dir}"))
