from fractions import Fraction

from votetally import NO_WINNER
from votetally.oracles import (irv_oracle_verdict, reference_borda,
                               reference_stv_step, wins_instant_runoff)
from votetally.types import StvState

WORKED_BALLOTS = [[1, 2], [1, 3], [2, 1], [3, 2], [3, 2]]
ONE = Fraction(1)


class TestIrvOracle:
    def test_accepts_the_worked_winner(self):
        assert wins_instant_runoff(1, {1, 2, 3}, WORKED_BALLOTS)

    def test_rejects_the_round_one_eliminee(self):
        assert not wins_instant_runoff(2, {1, 2, 3}, WORKED_BALLOTS)

    def test_rejects_everyone_without_ballots(self):
        for c in (1, 2, 3):
            assert not wins_instant_runoff(c, {1, 2, 3}, [])

    def test_verdict_depth_is_bounded(self):
        verdict = irv_oracle_verdict(1, {1, 2, 3}, WORKED_BALLOTS)
        assert verdict.is_winner
        assert verdict.recursion_depth <= 3

    def test_at_most_one_winner_per_election(self):
        import itertools
        roster = (1, 2, 3)
        choices = [p for k in range(len(roster) + 1)
                   for s in itertools.combinations(roster, k)
                   for p in itertools.permutations(s)]
        for ballots in itertools.product(choices, repeat=2):
            winners = [c for c in roster
                       if wins_instant_runoff(c, roster, ballots)]
            assert len(winners) <= 1, (ballots, winners)


class TestReferenceBorda:
    def test_matches_the_direct_point_rule(self):
        winner, standings, _ = reference_borda([1, 2, 3],
                                               [[1, 2, 3], [1, 3, 2]], 0)
        assert winner == 1
        assert standings == {1: 6, 2: 3, 3: 3}

    def test_single_candidate_always_wins(self):
        assert reference_borda([7], [[7], [], [7]], 0)[0] == 7
        assert reference_borda([7], [], 3)[0] == 7

    def test_no_ballots_full_tie(self):
        for tied in (0, 1, 2):
            winner, standings, _ = reference_borda([1, 2], [], tied)
            assert winner == NO_WINNER
            assert standings == {1: 0, 2: 0}


class TestReferenceStvStep:
    def initial_state(self):
        return StvState(((1,), (1,), (1,), (2,), (3,)), (ONE,) * 5, (1, 2, 3))

    def test_first_round_of_worked_example(self):
        state, seated, filled, action, affected, tallies = reference_stv_step(
            self.initial_state(), Fraction(2), 2, (), ())
        assert action == "elect"
        assert affected == (1,)
        assert seated == (1,)
        assert tallies == {1: Fraction(3), 2: ONE, 3: ONE}
        # All three supporting ballots were singletons: dropped.
        assert state.ballots == ((2,), (3,))
        assert state.candidates == (2, 3)

    def test_elimination_round_keeps_factors(self):
        state = StvState(((2,), (3,)), (ONE, ONE), (2, 3))
        state, seated, filled, action, affected, _ = reference_stv_step(
            state, Fraction(2), 2, (1,), ())
        assert action == "eliminate"
        assert affected == (2,)
        assert state.ballots == ((3,),)
        assert state.factors == (ONE,)

    def test_autofill_short_circuits(self):
        state = StvState(((3,),), (ONE,), (3,))
        next_state, seated, filled, action, affected, _ = reference_stv_step(
            state, Fraction(2), 2, (1,), ())
        assert action == "autofill"
        assert filled == (3,)
        assert next_state == state
