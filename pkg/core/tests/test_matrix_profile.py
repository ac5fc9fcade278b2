import math

import numpy as np
from django.test import SimpleTestCase

from core.exceptions import DegenerateSeries, InvalidWindow, WindowTooLarge
from core.series import TimeSeries
from core.services.matrix_profile import (
    matrix_profile_ab,
    matrix_profile_naive,
    matrix_profile_self,
    sliding_window_stats,
)
from core.utils import distance_profile_znorm, znormalize


def naive_self_join(values, window, radius):
    rows = len(values) - window + 1
    profile = np.full(rows, np.inf)
    indices = np.zeros(rows, dtype=int)
    for i in range(rows):
        query = znormalize(values[i:i + window])
        for j in range(rows):
            if abs(i - j) <= radius:
                continue
            d = np.linalg.norm(query - znormalize(values[j:j + window]))
            if d < profile[i]:
                profile[i], indices[i] = d, j
    return profile, indices


class MatrixProfileABTests(SimpleTestCase):
    def test_identical_series(self):
        """Test that each window finds itself in an identical series"""
        a = TimeSeries(np.random.default_rng(0).normal(size=64))
        result = matrix_profile_ab(a, a, 8)
        self.assertEqual(len(result), 57)
        self.assertTrue(np.all(result.profile < 1e-9))
        np.testing.assert_array_equal(result.indices, np.arange(57))

    def test_matches_naive(self):
        """Test the blocked join against the reference join"""
        rng = np.random.default_rng(1)
        a = TimeSeries(rng.normal(size=64))
        b = TimeSeries(rng.normal(size=80))
        fast = matrix_profile_ab(a, b, 8)
        slow = matrix_profile_naive(a, b, 8)
        np.testing.assert_allclose(fast.profile, slow.profile, atol=1e-6)
        np.testing.assert_array_equal(fast.indices, slow.indices)
        self.assertEqual((fast.profile_over_length, fast.neighbor_series_length), (64, 80))

    def test_oracle_equivalence_random_instances(self):
        """Test equivalence over seeded random shapes and windows"""
        rng = np.random.default_rng(2)
        for _ in range(50):
            n_a = int(rng.integers(70, 513))
            n_b = int(rng.integers(70, 513))
            window = int(rng.integers(4, 65))
            a = TimeSeries(np.cumsum(rng.normal(size=n_a)))
            b = TimeSeries(np.cumsum(rng.normal(size=n_b)))
            fast = matrix_profile_ab(a, b, window, block_rows=64)
            slow = matrix_profile_naive(a, b, window)
            np.testing.assert_allclose(fast.profile, slow.profile, atol=1e-6)
            # Reported distances are the distances at the reported neighbours.
            for i in rng.integers(0, len(fast), size=5):
                d = distance_profile_znorm(a.values[i:i + window], b)[fast.indices[i]]
                self.assertAlmostEqual(fast.profile[i], d, delta=1e-9)

    def test_repeated_windows_resolve_to_smallest_index(self):
        """Test that exact duplicates in b report the first occurrence, as the reference join does"""
        rng = np.random.default_rng(12)
        for _ in range(20):
            base = rng.normal(size=int(rng.integers(30, 61)))
            b = TimeSeries(np.tile(base, 6))
            a = TimeSeries(np.concatenate([rng.normal(size=15), base, rng.normal(size=15)]))
            window = int(rng.integers(4, 21))
            fast = matrix_profile_ab(a, b, window, block_rows=32)
            slow = matrix_profile_naive(a, b, window)
            np.testing.assert_array_equal(fast.indices, slow.indices)
            np.testing.assert_allclose(fast.profile, slow.profile, atol=1e-9)
            self.assertTrue((fast.indices < base.size).all())

    def test_profile_bounds(self):
        rng = np.random.default_rng(3)
        for _ in range(200):
            a = TimeSeries(rng.normal(size=30))
            b = TimeSeries(rng.normal(size=25))
            window = int(rng.integers(2, 10))
            result = matrix_profile_ab(a, b, window)
            self.assertTrue(np.all(result.profile >= 0))
            self.assertTrue(np.all(result.profile <= 2 * math.sqrt(window) + 1e-9))
            self.assertTrue(np.all((result.indices >= 0) & (result.indices <= 25 - window)))

    def test_shift_scale_invariance(self):
        """Test that 3*b + 7 leaves the profile and indices unchanged"""
        rng = np.random.default_rng(4)
        a = TimeSeries(rng.normal(size=100))
        b = rng.normal(size=120)
        base = matrix_profile_ab(a, TimeSeries(b), 10)
        moved = matrix_profile_ab(a, TimeSeries(3 * b + 7), 10)
        np.testing.assert_allclose(moved.profile, base.profile, atol=1e-9)
        np.testing.assert_array_equal(moved.indices, base.indices)

    def test_appending_never_increases_profile(self):
        rng = np.random.default_rng(5)
        a = TimeSeries(rng.normal(size=60))
        b = rng.normal(size=90)
        short = matrix_profile_ab(a, TimeSeries(b[:60]), 6)
        longer = matrix_profile_ab(a, TimeSeries(b), 6)
        self.assertTrue(np.all(longer.profile <= short.profile + 1e-9))

    def test_threaded_blocks_are_bit_identical(self):
        rng = np.random.default_rng(6)
        a = TimeSeries(rng.normal(size=300))
        b = TimeSeries(rng.normal(size=250))
        serial = matrix_profile_ab(a, b, 16, block_rows=32, workers=1)
        threaded = matrix_profile_ab(a, b, 16, block_rows=32, workers=4)
        np.testing.assert_array_equal(serial.profile, threaded.profile)
        np.testing.assert_array_equal(serial.indices, threaded.indices)

    def test_flat_query_windows(self):
        """Test that flat windows of a sit at min_j ||znorm(b_j)|| from b"""
        b = TimeSeries(np.random.default_rng(7).normal(size=40))
        a = TimeSeries(np.full(20, 2.5))
        expected = min(np.linalg.norm(znormalize(b.values[j:j + 4])) for j in range(37))
        for result in (matrix_profile_ab(a, b, 4), matrix_profile_naive(a, b, 4)):
            np.testing.assert_allclose(result.profile, expected, atol=1e-9)

    def test_window_errors(self):
        with self.assertRaises(WindowTooLarge):
            matrix_profile_ab(TimeSeries(np.arange(20.0)), TimeSeries(np.arange(5.0)), 10)
        with self.assertRaises(InvalidWindow):
            matrix_profile_ab(TimeSeries(np.arange(20.0)), TimeSeries(np.arange(20.0)), 1)

    def test_motif_and_discord_helpers(self):
        result = matrix_profile_ab(TimeSeries(np.random.default_rng(8).normal(size=50)),
                                   TimeSeries(np.random.default_rng(9).normal(size=50)), 5)
        self.assertEqual(result.profile[result.motif_index()], result.profile.min())
        self.assertEqual(result.profile[result.discord_index()], result.profile.max())
        frame = result.to_frame()
        self.assertEqual(list(frame.columns), ['position', 'distance', 'neighbor'])
        self.assertEqual(len(frame), 46)


class MatrixProfileSelfTests(SimpleTestCase):
    def test_periodic_series(self):
        """Test that repeated periods match each other"""
        period = 20
        values = np.tile(np.sin(2 * np.pi * np.arange(period) / period), 4)
        result = matrix_profile_self(TimeSeries(values), period)
        self.assertEqual(result.exclusion_radius, 10)
        self.assertTrue(np.all(result.profile < 1e-6))

    def test_matches_brute_force(self):
        values = np.random.default_rng(10).normal(size=64)
        result = matrix_profile_self(TimeSeries(values), 8, exclusion_radius=4)
        profile, indices = naive_self_join(values, 8, 4)
        np.testing.assert_allclose(result.profile, profile, atol=1e-6)
        np.testing.assert_array_equal(result.indices, indices)
        self.assertTrue(np.all(np.abs(result.indices - np.arange(57)) > 4))

    def test_radius_excludes_everything(self):
        with self.assertRaises(DegenerateSeries):
            matrix_profile_self(TimeSeries(np.random.default_rng(11).normal(size=20)), 5, exclusion_radius=16)

    def test_negative_radius(self):
        with self.assertRaises(InvalidWindow):
            matrix_profile_self(TimeSeries(np.arange(10.0)), 3, exclusion_radius=-1)


class SlidingWindowStatsTests(SimpleTestCase):
    def test_population_statistics(self):
        means, stds = sliding_window_stats([1, 3, 5, 7], 2)
        np.testing.assert_allclose(means, [2, 4, 6])
        np.testing.assert_allclose(stds, [1, 1, 1])
