"""t-tests, stratification, and the two validation experiments."""

import math
import random
from itertools import permutations

import numpy as np
import pytest

from icmval import (
    ExactConfig,
    McConfig,
    ModelError,
    PairedErrorReport,
    SnapshotRecord,
    StratumReport,
    ZeroVarianceError,
    experiment1,
    experiment2,
    icm_equity,
    normalize_stacks,
    one_sample_t_two_sided,
    paired_t_one_sided,
    stratify_quartiles,
)
from icmval.stats import snapshot_squared_errors


def snapshot(event_id, chips, targets, day="day 1"):
    players = tuple((f"p{i}", c) for i, c in enumerate(chips))
    return SnapshotRecord(event_id, day, players, tuple(targets))


class TestPairedT:
    def test_unit_difference_example(self):
        t, df, p = paired_t_one_sided([2.0, 3.0, 4.0], [1.0, 1.0, 1.0])
        assert t == pytest.approx(2.0 * math.sqrt(3.0), abs=1e-12)
        assert df == 2
        # df=2 closed form at t = 2*sqrt(3)
        assert p == pytest.approx(0.5 * (1.0 - t / math.sqrt(2.0 + t * t)), abs=1e-12)

    def test_identical_samples_zero_variance(self):
        with pytest.raises(ZeroVarianceError):
            paired_t_one_sided([1.0, 2.0, 3.0, 4.0], [1.0, 2.0, 3.0, 4.0])

    def test_constant_offset_zero_variance(self):
        with pytest.raises(ZeroVarianceError):
            paired_t_one_sided([2.0, 3.0, 4.0], [1.0, 2.0, 3.0])

    def test_length_mismatch_rejected(self):
        with pytest.raises(ModelError):
            paired_t_one_sided([1.0, 2.0], [1.0])

    def test_single_pair_rejected(self):
        with pytest.raises(ModelError):
            paired_t_one_sided([1.0], [0.0])

    def test_negative_t_gives_large_p(self):
        t, _, p = paired_t_one_sided([0.0, 1.0, 2.0], [2.0, 3.0, 3.0])
        assert t < 0.0
        assert p > 0.5


class TestOneSampleT:
    def test_zero_mean(self):
        t, df, p = one_sample_t_two_sided([1.0, -1.0, 2.0, -2.0])
        assert t == 0.0
        assert df == 3
        assert p == 1.0

    def test_one_two_three(self):
        t, df, p = one_sample_t_two_sided([1.0, 2.0, 3.0])
        assert t == pytest.approx(2.0 * math.sqrt(3.0), abs=1e-12)
        assert df == 2
        assert p == pytest.approx(1.0 - t / math.sqrt(2.0 + t * t), abs=1e-12)

    def test_constant_zero_variance(self):
        with pytest.raises(ZeroVarianceError):
            one_sample_t_two_sided([3.0, 3.0])

    def test_p_symmetric_in_sign(self):
        _, _, p_pos = one_sample_t_two_sided([1.0, 2.0, 3.0])
        _, _, p_neg = one_sample_t_two_sided([-1.0, -2.0, -3.0])
        assert p_pos == pytest.approx(p_neg, abs=1e-15)


class TestStratifyQuartiles:
    def test_eight_players(self):
        s = snapshot("e", [80, 70, 60, 50, 40, 30, 20, 10], [0.5, 0.3, 0.2, 0, 0, 0, 0, 0])
        labels = stratify_quartiles(s)
        assert labels == ("large", "large", "medium", "medium", "medium", "medium", "small", "small")

    def test_four_players(self):
        s = snapshot("e", [40, 30, 20, 10], [0.5, 0.3, 0.2, 0.0])
        assert stratify_quartiles(s) == ("large", "medium", "medium", "small")

    def test_two_players(self):
        s = snapshot("e", [60, 40], [0.7, 0.3])
        assert stratify_quartiles(s) == ("large", "small")

    def test_ties_resolved_by_input_order(self):
        s = snapshot("e", [50, 50, 50, 50], [0.4, 0.3, 0.2, 0.1])
        assert stratify_quartiles(s) == ("large", "medium", "medium", "small")

    def test_partition_sizes(self):
        rng = np.random.default_rng(53)
        for _ in range(30):
            n = int(rng.integers(2, 14))
            chips = [int(c) for c in rng.integers(1, 10**6, size=n)]
            targets = [1.0 / n] * n
            labels = stratify_quartiles(snapshot("e", chips, targets))
            k = max(1, n // 4)
            assert labels.count("large") == k
            assert labels.count("small") == k
            assert labels.count("medium") == n - 2 * k


class TestSnapshotSquaredErrors:
    def test_two_player_winner_take_all(self):
        s = snapshot("e", [70, 30], [1.0, 0.0])
        model_sq, ranked_sq = snapshot_squared_errors(s)
        assert ranked_sq == pytest.approx([0.0, 0.0], abs=1e-15)
        assert model_sq == pytest.approx([0.09, 0.09], abs=1e-12)

    def test_large_field_uses_simulation(self):
        chips = list(range(100, 100 + 12))
        targets = [0.0] * 12
        targets[5] = 1.0
        s = snapshot("e", chips, targets)
        cfg = McConfig(seed=1, max_sims=500)
        a, _ = snapshot_squared_errors(s, mc_cfg=cfg)
        b, _ = snapshot_squared_errors(s, mc_cfg=cfg)
        assert np.array_equal(a, b)


class TestExperiment1:
    def test_empty_input_rejected(self):
        with pytest.raises(ModelError):
            experiment1([])

    def test_identical_outputs_zero_variance(self):
        # flat prizes make both estimators emit the ladder itself
        snaps = [snapshot(f"e{i}", [60, 40], [0.5, 0.5]) for i in range(3)]
        with pytest.raises(ZeroVarianceError):
            experiment1(snaps)

    def test_report_arithmetic(self):
        snaps = [
            snapshot("e1", [70, 30], [1.0, 0.0]),
            snapshot("e2", [55, 45], [0.0, 1.0]),
            snapshot("e3", [80, 10, 10], [0.6, 0.1, 0.3]),
        ]
        report = experiment1(snaps)
        model_sq = []
        ranked_sq = []
        for s in snaps:
            m, r = snapshot_squared_errors(s)
            model_sq.extend(m)
            ranked_sq.extend(r)
        assert report.n_players == 7
        assert report.mse_icm == pytest.approx(np.mean(model_sq), abs=1e-15)
        assert report.mse_baseline == pytest.approx(np.mean(ranked_sq), abs=1e-15)
        assert report.se_mse_icm == pytest.approx(np.std(model_sq, ddof=1) / math.sqrt(7), abs=1e-15)
        assert 0.0 <= report.p_value_one_sided <= 1.0

    def test_snapshot_order_invariance(self):
        snaps = [
            snapshot("e1", [70, 30], [1.0, 0.0]),
            snapshot("e2", [50, 30, 20], [0.3, 0.5, 0.2]),
            snapshot("e3", list(range(10, 22)), [0.0] * 11 + [1.0]),
        ]
        forward = experiment1(snaps, mc_cfg=McConfig(seed=6, max_sims=400))
        shuffled = list(snaps)
        random.Random(0).shuffle(shuffled)
        backward = experiment1(shuffled, mc_cfg=McConfig(seed=6, max_sims=400))
        assert forward == backward


class TestExperiment2:
    def test_all_snapshots_too_large_rejected(self):
        s = snapshot("e", list(range(100, 111)), [1.0] + [0.0] * 10)
        with pytest.raises(ModelError):
            experiment2([s])

    def test_large_snapshots_filtered_out(self):
        small = snapshot("e1", [60, 40], [1.0, 0.0])
        big = snapshot("e2", list(range(100, 111)), [1.0] + [0.0] * 10)
        with_big = experiment2([small, big])
        without = experiment2([small])
        assert with_big == without

    def test_residuals_sum_to_zero_per_snapshot(self):
        rng = np.random.default_rng(59)
        for _ in range(10):
            n = int(rng.integers(2, 9))
            chips = [int(c) for c in rng.integers(1, 10**5, size=n)]
            targets = [0.0] * n
            targets[int(rng.integers(0, n))] = 1.0
            s = snapshot("e", chips, targets)
            equity = icm_equity(normalize_stacks(s.chips), s.payout_ladder()).equities
            assert abs(math.fsum(t - e for t, e in zip(s.targets, equity))) < 1e-9

    def test_symmetric_snapshots_balance_exactly(self):
        # equal stacks, every finish permutation once: each stratum mean is 0
        ladder = (0.5, 0.3, 0.2, 0.0)
        snaps = [
            snapshot(f"e{i}", [100, 100, 100, 100], perm)
            for i, perm in enumerate(permutations(ladder))
        ]
        large, medium, small = experiment2(snaps)
        assert large.n_players == 24
        assert medium.n_players == 48
        assert small.n_players == 24
        assert abs(large.mean_residual) < 1e-12
        assert abs(medium.mean_residual) < 1e-12
        assert abs(small.mean_residual) < 1e-12

    def test_strata_counts_partition_players(self):
        snaps = [
            snapshot("e1", [50, 30, 20], [0.2, 0.5, 0.3]),
            snapshot("e2", [90, 10], [1.0, 0.0]),
            snapshot("e3", [40, 30, 20, 10], [0.5, 0.3, 0.2, 0.0]),
        ]
        large, medium, small = experiment2(snaps)
        assert large.n_players + medium.n_players + small.n_players == 9

    def test_order_invariance(self):
        snaps = [
            snapshot("e1", [50, 30, 20], [0.2, 0.5, 0.3]),
            snapshot("e2", [90, 10], [1.0, 0.0]),
            snapshot("e3", [40, 30, 20, 10], [0.5, 0.3, 0.2, 0.0]),
        ]
        assert experiment2(snaps) == experiment2(list(reversed(snaps)))


class TestReportTypes:
    def test_paired_report_validates_p(self):
        with pytest.raises(ModelError):
            PairedErrorReport(1.0, 0.1, 1.0, 0.1, 1.0, 3, 1.5, 4)

    def test_paired_report_needs_two_players(self):
        with pytest.raises(ModelError):
            PairedErrorReport(1.0, 0.1, 1.0, 0.1, 1.0, 3, 0.5, 1)

    def test_stratum_report_validates_name(self):
        with pytest.raises(ModelError):
            StratumReport("huge", 0.0, 0.1, 1.0, 3, 0.5, 4)

    def test_stratum_report_empty_needs_none_mean(self):
        with pytest.raises(ModelError):
            StratumReport("large", 0.5, None, None, None, None, 0)
        empty = StratumReport("large", None, None, None, None, None, 0)
        assert empty.n_players == 0
