"""Domain type construction, validation, and the two normalize operations."""

import numpy as np
import pytest

from icmval import (
    EquityVector,
    FinishMatrix,
    ModelError,
    PayoutLadder,
    SnapshotRecord,
    StackDistribution,
    normalize_payouts,
    normalize_stacks,
)
from icmval.model import PayoutOrderWarning


class TestStackDistribution:
    def test_valid_construction(self):
        s = StackDistribution((0.5, 0.3, 0.2))
        assert s.player_count == 3
        assert s.fractions == (0.5, 0.3, 0.2)

    def test_single_player_full_share(self):
        assert StackDistribution((1.0,)).player_count == 1

    def test_zero_fraction_rejected(self):
        with pytest.raises(ModelError):
            StackDistribution((0.0, 1.0))

    def test_negative_fraction_rejected(self):
        with pytest.raises(ModelError):
            StackDistribution((-0.1, 1.1))

    def test_bad_sum_rejected(self):
        with pytest.raises(ModelError):
            StackDistribution((0.5, 0.3))

    def test_empty_rejected(self):
        with pytest.raises(ModelError):
            StackDistribution(())

    def test_immutable(self):
        s = StackDistribution((0.5, 0.5))
        with pytest.raises(AttributeError):
            s.fractions = (1.0,)


class TestPayoutLadder:
    def test_valid_construction(self):
        p = PayoutLadder((0.5, 0.3, 0.2), normalized=True)
        assert p.place_count == 3

    def test_negative_prize_rejected(self):
        with pytest.raises(ModelError):
            PayoutLadder((1.0, -0.5))

    def test_normalized_flag_checks_sum(self):
        with pytest.raises(ModelError):
            PayoutLadder((0.5, 0.4), normalized=True)

    def test_unnormalized_sum_unchecked(self):
        assert PayoutLadder((500.0, 300.0)).prizes == (500.0, 300.0)

    def test_non_monotone_warns_not_raises(self):
        with pytest.warns(PayoutOrderWarning):
            p = PayoutLadder((0.3, 0.7), normalized=True)
        assert p.prizes == (0.3, 0.7)


class TestFinishMatrix:
    def test_valid_doubly_stochastic(self):
        m = FinishMatrix([[0.7, 0.3], [0.3, 0.7]])
        assert m.player_count == 2
        assert m.probabilities[0, 0] == 0.7

    def test_stored_array_read_only(self):
        m = FinishMatrix([[1.0]])
        with pytest.raises(ValueError):
            m.probabilities[0, 0] = 0.5

    def test_bad_row_sum_rejected(self):
        with pytest.raises(ModelError):
            FinishMatrix([[0.6, 0.3], [0.4, 0.7]])

    def test_bad_column_sum_rejected(self):
        # rows sum to 1 but columns do not
        with pytest.raises(ModelError):
            FinishMatrix([[0.6, 0.4], [0.6, 0.4]])

    def test_non_square_rejected(self):
        with pytest.raises(ModelError):
            FinishMatrix([[0.5, 0.5]])

    def test_entry_outside_unit_interval_rejected(self):
        with pytest.raises(ModelError):
            FinishMatrix([[1.5, -0.5], [-0.5, 1.5]])


class TestEquityVector:
    def test_plain_equities(self):
        v = EquityVector((0.6, 0.4))
        assert v.standard_errors is None
        assert v.player_count == 2

    def test_with_standard_errors(self):
        v = EquityVector((0.6, 0.4), (0.001, 0.002))
        assert v.standard_errors == (0.001, 0.002)

    def test_misaligned_standard_errors_rejected(self):
        with pytest.raises(ModelError):
            EquityVector((0.6, 0.4), (0.001,))

    def test_negative_equity_rejected(self):
        with pytest.raises(ModelError):
            EquityVector((-0.1, 1.1))

    def test_nan_standard_error_rejected(self):
        with pytest.raises(ModelError):
            EquityVector((0.5, 0.5), (float("nan"), 0.0))


class TestSnapshotRecord:
    def make(self, **overrides):
        fields = dict(
            event_id="e1",
            day_label="day 2",
            players=(("alice", 50), ("bob", 30), ("carol", 20)),
            targets=(0.5, 0.3, 0.2),
        )
        fields.update(overrides)
        return SnapshotRecord(**fields)

    def test_valid_construction(self):
        s = self.make()
        assert s.player_count == 3
        assert s.chips == (50, 30, 20)
        assert s.player_keys == ("alice", "bob", "carol")

    def test_single_player_rejected(self):
        with pytest.raises(ModelError):
            self.make(players=(("alice", 50),), targets=(1.0,))

    def test_zero_chips_rejected(self):
        with pytest.raises(ModelError):
            self.make(players=(("alice", 0), ("bob", 30), ("carol", 20)))

    def test_targets_must_sum_to_one(self):
        with pytest.raises(ModelError):
            self.make(targets=(0.5, 0.3, 0.3))

    def test_negative_target_rejected(self):
        with pytest.raises(ModelError):
            self.make(targets=(1.2, -0.2, 0.0))

    def test_payout_ladder_is_sorted_targets(self):
        s = self.make(targets=(0.2, 0.5, 0.3))
        ladder = s.payout_ladder()
        assert ladder.prizes == (0.5, 0.3, 0.2)
        assert ladder.normalized


class TestNormalizeStacks:
    def test_single_player(self):
        assert normalize_stacks([100]).fractions == (1.0,)

    def test_even_split(self):
        assert normalize_stacks([50, 50]).fractions == (0.5, 0.5)

    def test_exact_division(self):
        assert normalize_stacks([50, 30, 20]).fractions == (0.5, 0.3, 0.2)

    def test_scale_invariance(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            chips = [int(c) for c in rng.integers(1, 10**7, size=6)]
            base = normalize_stacks(chips).fractions
            scaled = normalize_stacks([c * 137 for c in chips]).fractions
            assert max(abs(a - b) for a, b in zip(base, scaled)) <= 1e-12

    def test_zero_count_rejected(self):
        with pytest.raises(ModelError):
            normalize_stacks([50, 0])

    def test_non_integer_rejected(self):
        with pytest.raises(ModelError):
            normalize_stacks([50.5, 49.5])

    def test_empty_rejected(self):
        with pytest.raises(ModelError):
            normalize_stacks([])


class TestNormalizePayouts:
    def test_exact_division(self):
        assert normalize_payouts([500, 300, 200], 3).prizes == (0.5, 0.3, 0.2)

    def test_top_two_relevant(self):
        assert normalize_payouts([500, 300, 200, 100], 2).prizes == (0.625, 0.375)

    def test_winner_take_all_padding(self):
        assert normalize_payouts([100], 3).prizes == (1.0, 0.0, 0.0)

    def test_zero_relevant_sum_rejected(self):
        with pytest.raises(ModelError):
            normalize_payouts([0.0, 0.0, 500.0], 2)

    def test_result_flagged_normalized(self):
        assert normalize_payouts([700, 300], 2).normalized
