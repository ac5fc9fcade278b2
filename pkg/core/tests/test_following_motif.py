import numpy as np
from django.test import SimpleTestCase

from core.exceptions import EmptyMotifSet, IndexOutOfRange, InvalidParams, InvalidWindow, WindowTooLarge
from core.series import TimeSeries
from core.services.following_motif import (
    FollowingMotifMethod,
    FollowingMotifPair,
    align_intervals,
    expand_indices_to_mask,
    extract_motif_indices,
    following_motif_method,
    infer_following_motifs_exact,
    lead_value,
    similar_join_set,
)
from core.services.synthetic import gen_single_motif_pair
from core.utils.intervals import mask_to_intervals


def planted_instance(rng, n_w, n_u, motifs, window):
    """Distinct random backgrounds with identical motifs planted at (leader, follower) starts."""
    samples = rng.permutation(100000)[:n_w + n_u] / 1000.0
    w, u = samples[:n_w].copy(), samples[n_w:].copy()
    for i, j in motifs:
        motif = rng.normal(size=window) + 500.0
        w[i:i + window] = motif
        u[j:j + window] = motif
    return TimeSeries(w), TimeSeries(u)


def brute_force_pairs(w, u, window):
    view = np.lib.stride_tricks.sliding_window_view
    equal = (view(w.values, window)[:, None, :] == view(u.values, window)[None, :, :]).all(axis=2)
    return {(int(i), int(j)) for i, j in zip(*np.nonzero(equal)) if j >= i}


class ExactInferenceTests(SimpleTestCase):
    def test_identity(self):
        """Test that a series follows itself at lag zero everywhere"""
        w = TimeSeries(np.random.default_rng(0).normal(size=30))
        result = infer_following_motifs_exact(w, w, 5)
        self.assertEqual(result.as_set(), {(i, i) for i in range(26)})
        self.assertEqual(set(result.lags()), {0})

    def test_planted_motif(self):
        """Test a single planted motif with lag 15"""
        w, u = planted_instance(np.random.default_rng(1), 60, 60, [(10, 25)], 6)
        result = infer_following_motifs_exact(w, u, 6)
        self.assertEqual(result.as_set(), {(10, 25)})
        self.assertEqual(result.lags(), [15])
        self.assertEqual(result.leader_starts(), [10])

    def test_follower_precedes_leader(self):
        """Test that negative lags are excluded"""
        w, u = planted_instance(np.random.default_rng(2), 60, 60, [(20, 5)], 6)
        self.assertEqual(len(infer_following_motifs_exact(w, u, 6)), 0)

    def test_planted_sets_match_exhaustive_scan(self):
        """Test exactness on constructed noise-free instances"""
        rng = np.random.default_rng(3)
        for _ in range(100):
            window = int(rng.integers(3, 8))
            n = int(rng.integers(120, 200))
            count = int(rng.integers(1, 4))
            slot = n // count
            motifs = []
            for k in range(count):
                i = k * slot + int(rng.integers(3, slot - 2 * window - 10))
                j = i + int(rng.integers(-3, 10))
                motifs.append((i, j))
            w, u = planted_instance(rng, n, n, motifs, window)
            expected = brute_force_pairs(w, u, window)
            self.assertEqual(expected, {(i, j) for i, j in motifs if j >= i})
            self.assertEqual(infer_following_motifs_exact(w, u, window).as_set(), expected)

    def test_epsilon_absorbs_small_differences(self):
        w, u = planted_instance(np.random.default_rng(4), 40, 40, [(5, 9)], 6)
        nudged = u.values.copy()
        nudged[9:15] += 1e-12
        self.assertEqual(len(infer_following_motifs_exact(w, TimeSeries(nudged), 6)), 0)
        self.assertEqual(infer_following_motifs_exact(w, TimeSeries(nudged), 6, epsilon=1e-9).as_set(), {(5, 9)})

    def test_window_errors(self):
        w = TimeSeries(np.arange(10.0))
        with self.assertRaises(WindowTooLarge):
            infer_following_motifs_exact(w, TimeSeries(np.arange(5.0)), 6)
        with self.assertRaises(InvalidWindow):
            infer_following_motifs_exact(w, w, 1)

    def test_negative_lag_pair_rejected(self):
        with self.assertRaises(InvalidParams):
            FollowingMotifPair(5, 3, -2, 0.0)


class SimilarJoinSetTests(SimpleTestCase):
    def test_tied_neighbours(self):
        """Test that every tied nearest neighbour is listed"""
        matches = similar_join_set([1, 2, 9], [1, 2, 7, 1, 2], 2)
        self.assertEqual(matches[0].neighbor_starts, (0, 3))
        self.assertEqual(matches[0].distance, 0.0)
        self.assertEqual(len(matches), 2)


class ExtractMotifIndicesTests(SimpleTestCase):
    def test_bimodal_profile(self):
        indices = extract_motif_indices(np.array([0, 0, 0, 0, 9, 9, 9, 9], dtype=float), 10)
        np.testing.assert_array_equal(indices, [0, 1, 2, 3])

    def test_threshold_inside_run_of_minima(self):
        """Test that the minima are kept when the percentile lands on them"""
        profile = np.array([1, 1, 1, 1, 1, 1, 4, 8], dtype=float)
        np.testing.assert_array_equal(extract_motif_indices(profile, 10), [0, 1, 2, 3, 4, 5])
        np.testing.assert_array_equal(extract_motif_indices(profile[::-1].copy(), 10), [2, 3, 4, 5, 6, 7])

    def test_flat_profile(self):
        self.assertEqual(extract_motif_indices(np.full(10, 3.0), 10).size, 0)

    def test_percentile_mass_bound(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            profile = rng.uniform(0, 5, size=int(rng.integers(1, 300)))
            gap = float(rng.uniform(0.001, 49.9))
            count = extract_motif_indices(profile, gap).size
            self.assertLessEqual(count / profile.size, (50 - gap) / 100 + 1 / profile.size)

    def test_gap_out_of_range(self):
        for gap in (0, 50, -1):
            with self.assertRaises(InvalidParams):
                extract_motif_indices(np.arange(5.0), gap)


class LeadValueTests(SimpleTestCase):
    def test_constant_shift(self):
        self.assertEqual(lead_value([10, 20, 30], [5, 15, 25]), 5.0)

    def test_identical(self):
        self.assertEqual(lead_value([1, 2, 3], [1, 2, 3]), 0.0)

    def test_truncation(self):
        self.assertEqual(lead_value([8, 9], [1, 2, 3]), 7.0)

    def test_empty(self):
        with self.assertRaises(EmptyMotifSet):
            lead_value([], [1])

    def test_antisymmetry(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            size = int(rng.integers(1, 50))
            first = np.sort(rng.choice(1000, size, replace=False))
            second = np.sort(rng.choice(1000, size, replace=False))
            self.assertAlmostEqual(lead_value(first, second), -lead_value(second, first), delta=1e-9)


class MaskTests(SimpleTestCase):
    def test_single_window(self):
        np.testing.assert_array_equal(expand_indices_to_mask([0], 3, 5), [True, True, True, False, False])

    def test_empty_indices(self):
        self.assertFalse(expand_indices_to_mask([], 3, 5).any())

    def test_union_of_windows(self):
        np.testing.assert_array_equal(expand_indices_to_mask([0, 2], 3, 6), [True] * 5 + [False])

    def test_out_of_range(self):
        with self.assertRaises(IndexOutOfRange):
            expand_indices_to_mask([4], 3, 6)

    def test_mask_consistency(self):
        """Test coverage both ways against the extracted indices"""
        rng = np.random.default_rng(7)
        for _ in range(200):
            length = int(rng.integers(20, 80))
            window = int(rng.integers(2, 10))
            indices = np.sort(rng.choice(length - window + 1, int(rng.integers(0, 6)), replace=False))
            mask = expand_indices_to_mask(indices, window, length)
            for i in indices:
                self.assertTrue(mask[i:i + window].all())
            for p in np.flatnonzero(mask):
                self.assertTrue(np.any((indices <= p) & (p <= indices + window - 1)))
            spans = mask_to_intervals(mask)
            self.assertEqual(sum(e - s for s, e in spans), int(mask.sum()))


class AlignIntervalsTests(SimpleTestCase):
    def test_pairing(self):
        self.assertEqual(align_intervals([1, 2], [11, 12]), [(1, 11), (2, 12)])
        self.assertEqual(align_intervals([], [5]), [])
        self.assertEqual(align_intervals([3, 7, 9], [10, 14]), [(3, 10), (7, 14)])


class FollowingMotifMethodTests(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.pair = gen_single_motif_pair(0, series_length=600)

    def test_identical_inputs(self):
        """Test that a series neither leads nor follows itself"""
        series = TimeSeries(np.random.default_rng(8).normal(size=200))
        report = following_motif_method(series, series, window=20)
        np.testing.assert_array_equal(report.leader_motif_indices, report.follower_motif_indices)
        self.assertEqual(report.lead_value, 0.0)
        self.assertFalse(report.lead_decision)

    def test_generated_leader_leads(self):
        report = following_motif_method(self.pair.leader, self.pair.follower, window=60)
        self.assertTrue(report.lead_decision)
        self.assertGreater(report.lead_value, 0)

    def test_report_invariants(self):
        report = following_motif_method(self.pair.leader, self.pair.follower, window=60)
        self.assertEqual(report.lead_decision, report.lead_value > 0)
        self.assertTrue(np.all(np.diff(report.leader_motif_indices) > 0))
        self.assertTrue(np.all(np.diff(report.follower_motif_indices) > 0))
        self.assertEqual(report.leader_mask.size, 600)
        self.assertEqual(report.follower_mask.size, 600)
        np.testing.assert_array_equal(
            report.index_difference, report.follower_motif_indices - report.leader_motif_indices,
        )
        self.assertAlmostEqual(report.lead_value_per_pair, report.lead_value / report.index_difference.size)
        self.assertAlmostEqual(report.lead_value_per_sample, report.lead_value / 600)

    def test_swapping_inputs_negates_lead_value(self):
        forward = following_motif_method(self.pair.leader, self.pair.follower, window=60)
        backward = following_motif_method(self.pair.follower, self.pair.leader, window=60)
        np.testing.assert_array_equal(forward.leader_motif_indices, backward.follower_motif_indices)
        self.assertAlmostEqual(forward.lead_value, -backward.lead_value)

    def test_affine_transform_keeps_decision(self):
        base = following_motif_method(self.pair.leader, self.pair.follower, window=60)
        moved = following_motif_method(
            TimeSeries(2.0 * self.pair.leader.values), self.pair.follower, window=60,
        )
        np.testing.assert_array_equal(moved.leader_motif_indices, base.leader_motif_indices)
        np.testing.assert_array_equal(moved.follower_motif_indices, base.follower_motif_indices)
        self.assertEqual(moved.lead_decision, base.lead_decision)

    def test_concurrent_profiles_match_serial(self):
        serial = FollowingMotifMethod(window=60).run(self.pair.leader, self.pair.follower)
        threaded = FollowingMotifMethod(window=60, workers=2).run(self.pair.leader, self.pair.follower)
        self.assertEqual(serial.lead_value, threaded.lead_value)

    def test_profiles_reused_across_gaps(self):
        """Test that one pair of profiles serves several percentile gaps"""
        method = FollowingMotifMethod(window=60)
        profiles = method.profiles(self.pair.leader, self.pair.follower)
        direct = method.run(self.pair.leader, self.pair.follower)
        reused = method.report_from_profiles(self.pair.leader, self.pair.follower, *profiles)
        self.assertEqual(reused.lead_value, direct.lead_value)
        wide = method.report_from_profiles(self.pair.leader, self.pair.follower, *profiles, percentile_gap=37)
        self.assertEqual(wide.percentile_gap, 37)
        self.assertLessEqual(len(wide.leader_motif_indices), len(direct.leader_motif_indices))
        self.assertTrue(method(self.pair.leader, self.pair.follower))

    def test_window_too_large(self):
        with self.assertRaises(WindowTooLarge):
            following_motif_method(TimeSeries(np.arange(50.0)), TimeSeries(np.arange(40.0)), window=45)

    def test_csv_layout(self):
        report = following_motif_method(self.pair.leader, self.pair.follower, window=60)
        frame = report.to_frame()
        self.assertEqual(list(frame.columns), ['record', 'leader_index', 'follower_index', 'series', 'start', 'end'])
        spans = mask_to_intervals(report.leader_mask) + mask_to_intervals(report.follower_mask)
        self.assertEqual(int((frame['record'] == 'interval').sum()), len(spans))
        self.assertEqual(int((frame['record'] == 'pair').sum()), len(report.aligned_pairs))
