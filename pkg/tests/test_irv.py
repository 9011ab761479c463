import pytest
from hypothesis import given
from hypothesis import strategies as st

from votetally import NO_WINNER, instant_runoff
from votetally.errors import EmptyRosterError, PreconditionViolation
from votetally.irv import (first_preference_counts, has_majority,
                           lowest_candidates, remove_candidates_from_ballots)
from votetally.oracles import wins_instant_runoff

WORKED_BALLOTS = [[1, 2], [1, 3], [2, 1], [3, 2], [3, 2]]


@st.composite
def irv_elections(draw, max_candidates=5, max_ballots=8):
    n = draw(st.integers(1, max_candidates))
    roster = list(range(1, n + 1))
    ballots = draw(st.lists(
        st.permutations(roster).flatmap(
            lambda p: st.integers(0, n).map(lambda k: list(p[:k]))),
        max_size=max_ballots))
    return roster, ballots


class TestFirstPreferenceCounts:
    def test_empty_ballots_contribute_nothing(self):
        assert first_preference_counts({1, 2}, [[1, 2], [2], []]) == {1: 1, 2: 1}

    def test_hand_count_matches_brute_force(self):
        counts = first_preference_counts({1, 2, 3}, WORKED_BALLOTS)
        brute = {c: sum(1 for b in WORKED_BALLOTS if b and b[0] == c)
                 for c in (1, 2, 3)}
        assert counts == brute == {1: 2, 2: 1, 3: 2}

    def test_every_member_has_an_entry(self):
        assert first_preference_counts({1}, []) == {1: 0}


class TestHasMajority:
    def test_two_of_three_is_a_majority(self):
        assert has_majority(1, {1, 2}, [[1], [1], [2]])

    def test_two_of_four_is_not(self):
        assert not has_majority(1, {1, 2}, [[1], [1], [2], [2]])

    def test_zero_of_zero_is_not(self):
        assert not has_majority(1, {1}, [[], []])


class TestLowestCandidates:
    def test_unique_minimum(self):
        assert lowest_candidates({1, 2, 3}, [[1], [1], [2], [3], [3]]) == {2}

    def test_full_tie_returns_everyone(self):
        assert lowest_candidates({1, 2}, [[1], [2]]) == {1, 2}

    def test_singleton_roster(self):
        assert lowest_candidates({1}, []) == {1}

    def test_empty_roster_rejected(self):
        with pytest.raises(EmptyRosterError):
            lowest_candidates(set(), [])


class TestRemoveCandidates:
    def test_filter_keeps_empty_ballots(self):
        out = remove_candidates_from_ballots({1, 2, 3},
                                             [[1, 2, 3], [2], [3, 1]], {2})
        assert out == [(1, 3), (), (3, 1)]

    def test_removing_nothing_is_identity(self):
        assert remove_candidates_from_ballots({1, 2}, [[1], [2]], set()) \
            == [(1,), (2,)]

    def test_total_removal_leaves_empty_ballots(self):
        assert remove_candidates_from_ballots({1, 2}, [[1, 2], [2, 1]],
                                              {1, 2}) == [(), ()]

    @given(irv_elections(), st.sets(st.integers(1, 5)))
    def test_length_preserved_and_order_kept(self, election, to_remove):
        roster, ballots = election
        to_remove &= set(roster)
        out = remove_candidates_from_ballots(roster, ballots, to_remove)
        assert len(out) == len(ballots)
        for before, after in zip(ballots, out):
            assert after == tuple(c for c in before if c not in to_remove)

    @given(irv_elections(), st.sets(st.integers(1, 5)))
    def test_idempotent_once_removed(self, election, to_remove):
        roster, ballots = election
        to_remove &= set(roster)
        once = remove_candidates_from_ballots(roster, ballots, to_remove)
        again = remove_candidates_from_ballots(roster, once, to_remove)
        assert once == again


class TestInstantRunoff:
    def test_worked_example_agrees_with_oracle(self):
        winner, rounds = instant_runoff({1, 2, 3}, WORKED_BALLOTS)
        assert winner == 1
        assert [c for c in (1, 2, 3)
                if wins_instant_runoff(c, {1, 2, 3}, WORKED_BALLOTS)] == [1]
        # round 1 eliminates the unique lowest, round 2 is a majority win
        assert [(r.action, r.affected) for r in rounds] == \
            [("eliminate", (2,)), ("majority-win", (1,))]
        assert dict(rounds[0].tallies) == {1: 2, 2: 1, 3: 2}
        assert dict(rounds[1].tallies) == {1: 3, 3: 2}

    def test_full_lowest_tie_removes_both(self):
        winner, rounds = instant_runoff({1, 2}, [[1], [2]])
        assert winner == NO_WINNER
        assert not any(wins_instant_runoff(c, {1, 2}, [[1], [2]])
                       for c in (1, 2))
        assert rounds[-1].affected == (1, 2)

    def test_nothing_at_all_means_no_winner(self):
        assert instant_runoff(set(), [])[0] == NO_WINNER

    def test_no_ballots_means_no_winner(self):
        assert instant_runoff({1, 2}, [])[0] == NO_WINNER

    def test_all_empty_ballots_mean_no_winner(self):
        assert instant_runoff({1, 2}, [[], []])[0] == NO_WINNER

    def test_duplicate_in_ballot_rejected_with_index(self):
        with pytest.raises(PreconditionViolation) as failure:
            instant_runoff({1, 2}, [[1], [2, 2]])
        assert failure.value.rule == "duplicate-in-ballot"
        assert failure.value.ballot_index == 1

    def test_unknown_candidate_rejected(self):
        with pytest.raises(PreconditionViolation) as failure:
            instant_runoff({1, 2}, [[3]])
        assert failure.value.rule == "unknown-candidate"

    def test_reserved_id_zero_rejected_in_roster(self):
        with pytest.raises(PreconditionViolation) as failure:
            instant_runoff({0, 1}, [[1]])
        assert failure.value.rule == "reserved-candidate-id"

    @given(irv_elections(), st.randoms(use_true_random=False))
    def test_ballot_order_never_matters(self, election, rng):
        roster, ballots = election
        winner, _ = instant_runoff(roster, ballots)
        shuffled = ballots[:]
        rng.shuffle(shuffled)
        assert instant_runoff(roster, shuffled)[0] == winner

    @given(irv_elections(), st.randoms(use_true_random=False))
    def test_roster_order_never_matters(self, election, rng):
        roster, ballots = election
        winner, _ = instant_runoff(roster, ballots)
        reordered = roster[:]
        rng.shuffle(reordered)
        assert instant_runoff(reordered, ballots)[0] == winner

    @given(irv_elections())
    def test_winner_is_sound_and_rounds_bounded(self, election):
        roster, ballots = election
        winner, rounds = instant_runoff(roster, ballots)
        assert winner == NO_WINNER or winner in set(roster)
        assert len(rounds) <= len(roster)
