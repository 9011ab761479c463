from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from votetally import droop_quota, single_transferable_vote
from votetally.errors import NoSuchScoreError, PreconditionViolation
from votetally.stv import (first_preference_value, select_by_tally,
                           transfer_votes)

ONE = Fraction(1)


class TestDroopQuota:
    @pytest.mark.parametrize("ballots,seats,expected", [
        (100, 4, 21),
        (5, 2, 2),
        (0, 0, 1),
    ])
    def test_known_values(self, ballots, seats, expected):
        assert droop_quota(ballots, seats) == expected

    @given(st.integers(0, 10_000), st.integers(0, 50))
    def test_integer_valued_and_at_least_one(self, ballots, seats):
        quota = droop_quota(ballots, seats)
        assert quota.denominator == 1
        assert quota >= 1
        # Small enough that seats+1 candidates can never all reach it.
        assert (seats + 1) * quota > ballots


class TestFirstPreferenceValue:
    def test_sums_factors_of_leading_ballots(self):
        value = first_preference_value(
            [[1, 2], [2], [1]], [1, 2], [Fraction(1, 2), ONE, Fraction(1, 4)], 1)
        assert value == Fraction(3, 4)

    def test_no_support_sums_to_zero(self):
        assert first_preference_value([[2], [2]], [1, 2], [ONE, ONE], 1) == 0

    @given(st.integers(0, 10))
    def test_unit_factors_reduce_to_counting(self, k):
        ballots = [[1]] * k + [[2]] * 3
        factors = [ONE] * (k + 3)
        assert first_preference_value(ballots, [1, 2], factors, 1) == k


class TestSelectByTally:
    def test_earliest_in_roster_order_wins_ties(self):
        assert select_by_tally({2: ONE, 3: ONE}, ONE, [2, 3]) == 2

    def test_singleton(self):
        assert select_by_tally({5: Fraction(3)}, Fraction(3), [5]) == 5

    def test_unique_holder(self):
        assert select_by_tally({4: Fraction(2), 7: Fraction(5)},
                               Fraction(5), [4, 7]) == 7

    def test_missing_tally_rejected(self):
        with pytest.raises(NoSuchScoreError):
            select_by_tally({4: Fraction(2)}, Fraction(5), [4])


class TestTransferVotes:
    def test_surplus_scales_transferable_ballots(self):
        ballots, factors = transfer_votes(
            [[1, 2], [1, 3], [2, 3]], [ONE, ONE, ONE], 1,
            Fraction(3, 2), Fraction(2))
        assert ballots == [(2,), (3,), (2, 3)]
        assert factors == [Fraction(1, 4), Fraction(1, 4), ONE]

    def test_elimination_drops_exhausted_ballot(self):
        ballots, factors = transfer_votes([[1], [2]], [ONE, ONE], 1,
                                          Fraction(2), ONE)
        assert ballots == [(2,)]
        assert factors == [ONE]

    def test_absent_candidate_changes_nothing(self):
        ballots, factors = transfer_votes([[2, 3]], [ONE], 1,
                                          Fraction(1), Fraction(0))
        assert ballots == [(2, 3)]
        assert factors == [ONE]

    def test_zero_surplus_consumes_the_ballot(self):
        # Seating at exactly the quota leaves no weight to pass on; the
        # ballot is dropped rather than kept at factor zero.
        ballots, factors = transfer_votes([[1, 2], [2]], [ONE, ONE], 1,
                                          ONE, ONE)
        assert ballots == [(2,)]
        assert factors == [ONE]

    def test_length_mismatch_rejected(self):
        with pytest.raises(PreconditionViolation) as failure:
            transfer_votes([[1]], [ONE, ONE], 1, ONE, ONE)
        assert failure.value.rule == "length-mismatch"

    def test_positive_total_needs_support(self):
        with pytest.raises(PreconditionViolation) as failure:
            transfer_votes([[2]], [ONE], 1, ONE, ONE)
        assert failure.value.rule == "no-supporting-ballot"


class TestSingleTransferableVote:
    def test_worked_example(self):
        result = single_transferable_vote([[1], [1], [1], [2], [3]],
                                          [1, 2, 3], 2)
        assert result.quota == Fraction(2)
        assert result.quota_winners == (1,)
        assert result.autofill_winners == (3,)
        assert len(result.witnesses) == 1
        witness = result.witnesses[0]
        assert witness.ballots == ((1,), (1,), (1,), (2,), (3,))
        assert witness.factors == (ONE,) * 5
        assert first_preference_value(witness.ballots, witness.candidates,
                                      witness.factors, 1) == Fraction(3)
        assert [(r.action, r.affected) for r in result.rounds] == \
            [("elect", (1,)), ("eliminate", (2,)), ("autofill", (3,))]

    def test_autofill_at_entry(self):
        result = single_transferable_vote([[1]], [1], 1)
        assert result.quota_winners == ()
        assert result.autofill_winners == (1,)
        assert result.witnesses == ()

    def test_zero_seats_never_enters_the_loop(self):
        result = single_transferable_vote([[1, 2], [1, 2], [2, 1]], [1, 2], 0)
        assert result.quota_winners == ()
        assert result.autofill_winners == ()
        assert result.rounds == ()

    def test_surplus_transfer_changes_later_rounds(self):
        # 1 is seated with a surplus of 1 spread over 4 supporters; the
        # quarter-weight transfers push 2 over the quota.
        ballots = [[1, 2], [1, 2], [1, 3], [1, 3], [2], [3], [2], [2]]
        result = single_transferable_vote(ballots, [1, 2, 3], 2)
        assert result.quota == Fraction(3)
        assert result.quota_winners == (1, 2)
        tallies = result.rounds[1].tallies
        assert tallies[2] == Fraction(7, 2)
        assert tallies[3] == Fraction(3, 2)

    @pytest.mark.parametrize("ballots,roster,seats,rule", [
        ([[]], [1], 1, "empty-ballot"),
        ([[1, 1]], [1], 1, "duplicate-in-ballot"),
        ([[9]], [1], 1, "unknown-candidate"),
        ([[1]], [1], 2, "seats-exceed-roster"),
        ([[1]], [1], -1, "invalid-parameter"),
        ([[1]], [1, 1], 1, "duplicate-candidate"),
        ([[1]], [], 0, "empty-roster"),
    ])
    def test_invalid_inputs_get_diagnosed(self, ballots, roster, seats, rule):
        with pytest.raises(PreconditionViolation) as failure:
            single_transferable_vote(ballots, roster, seats)
        assert failure.value.rule == rule

    def test_bit_identical_reruns(self):
        ballots = [[1, 2, 3], [2, 3], [3, 1], [1, 2], [2, 1]]
        first = single_transferable_vote(ballots, [1, 2, 3], 2)
        second = single_transferable_vote(ballots, [1, 2, 3], 2)
        assert first == second

    def test_every_quota_winner_has_support(self):
        ballots = [[2, 1], [2, 3], [3, 2]]
        result = single_transferable_vote(ballots, [1, 2, 3], 2)
        for winner in result.quota_winners:
            assert any(winner in ballot for ballot in ballots)
