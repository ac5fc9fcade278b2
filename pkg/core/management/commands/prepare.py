from core.management.base import FollowMotifCommand
from core.utils.dataset_io import series_to_csv
from core.utils.load_csv import load_csv
from core.utils.resample import add_gaussian_noise, downsample_mean, min_max_normalize
from core.utils.write_report import atomic_write_text


class Command(FollowMotifCommand):
    help = 'Downsample, optionally add noise to and rescale a raw series export'

    def add_arguments(self, parser):
        parser.add_argument('--input', required=True, help='Raw CSV file')
        parser.add_argument('--out', required=True, help='Prepared CSV file')
        parser.add_argument('--fraction', type=float, default=0.05, help='Group size as a fraction of the length')
        parser.add_argument('--sigma', type=float, default=0.0, help='Gaussian noise level')
        parser.add_argument('--seed', type=int, help='Noise seed')
        parser.add_argument('--normalize', action='store_true', help='Min-max scale to [0, 1]')

    def run(self, **options):
        series = downsample_mean(load_csv(options['input']), options['fraction'])
        if options['sigma']:
            seed = options['seed'] if options['seed'] is not None else self.settings_default('NOISE_SEED', 0)
            series = add_gaussian_noise(series, options['sigma'], seed)
        if options['normalize']:
            series = min_max_normalize(series)
        atomic_write_text(options['out'], series_to_csv(series))
        self.stdout.write(self.style.SUCCESS(f"Wrote {len(series)} samples to {options['out']}"))
