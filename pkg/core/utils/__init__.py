from .znormalize import znormalize, znormalize_windows, FLAT_EPSILON
from .distance_profile import distance_profile_plain, distance_profile_znorm
from .resample import downsample_mean, add_gaussian_noise, min_max_normalize
from .intervals import intervals_to_mask, mask_to_intervals
from .load_csv import load_csv
from .write_report import write_report, report_to_json, atomic_write_text
