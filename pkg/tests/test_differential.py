"""The differential suites must pass on the real implementations and catch
deliberately broken ones, otherwise they prove nothing."""

from votetally import differential as diff
from votetally import irv, stv
from votetally.types import NO_WINNER


def test_small_random_suites_are_clean():
    assert diff.check_irv_random(300, seed=7) == []
    assert diff.check_stv_random(300, seed=7) == []
    assert diff.check_borda_random(300, seed=7) == []
    assert diff.check_score_random(300, seed=7) == []


def test_exhaustive_suite_is_clean_at_reduced_bounds():
    assert diff.check_irv_exhaustive(max_candidates=2, max_ballots=3) == []


def test_single_candidate_bound_passes_trivially():
    assert diff.check_irv_random(100, seed=3, max_candidates=1) == []
    assert diff.check_stv_random(100, seed=3, max_candidates=1) == []


def broken_runoff_keeps_one_lowest(roster, ballots):
    """Mutant: eliminates only one of the tied-lowest candidates."""
    remaining = frozenset(roster)
    current = [tuple(b) for b in ballots]
    if not ballots or not remaining:
        return NO_WINNER, ()
    while remaining:
        counts = irv.first_preference_counts(remaining, current)
        live = irv.non_empty_count(current)
        majority = [c for c in sorted(remaining) if 2 * counts[c] > live]
        if majority:
            return majority[0], ()
        lowest = {min(irv.lowest_candidates(remaining, current))}  # bug
        current = irv.remove_candidates_from_ballots(remaining, current,
                                                     lowest)
        remaining = remaining - lowest
    return NO_WINNER, ()


def broken_stv_skips_surplus_scaling(ballots, roster, seats):
    """Mutant: transfers seated candidates' ballots at full weight."""
    from fractions import Fraction

    from votetally.types import RoundRecord, StvResult, StvState
    from votetally.validate import check_stv_inputs

    members = check_stv_inputs(ballots, roster, seats)
    quota = stv.droop_quota(len(ballots), seats)
    working = tuple(tuple(b) for b in ballots)
    weights = tuple(Fraction(1) for _ in working)
    remaining = members
    quota_winners, autofill_winners, witnesses, records = [], [], [], []
    while len(quota_winners) + len(autofill_winners) < seats:
        state = StvState(working, weights, remaining)
        tallies = {c: stv.first_preference_value(working, remaining, weights, c)
                   for c in remaining}
        if len(remaining) == seats - len(quota_winners):
            autofill_winners = list(remaining)
            records.append(RoundRecord(len(records) + 1, tallies, "autofill",
                                       remaining, state))
            continue
        best = max(tallies.values())
        target = best if best >= quota else min(tallies.values())
        chosen = stv.select_by_tally(tallies, target, remaining)
        if target >= quota:
            quota_winners.append(chosen)
            witnesses.append(state)
            action = "elect"
        else:
            action = "eliminate"
        records.append(RoundRecord(len(records) + 1, tallies, action,
                                   (chosen,), state))
        remaining = tuple(c for c in remaining if c != chosen)
        # Bug: elimination-style transfer even for quota winners.
        new_ballots, new_weights = stv.transfer_votes(
            working, weights, chosen, quota, quota - 1)
        working, weights = tuple(new_ballots), tuple(new_weights)
    return StvResult(quota=quota, quota_winners=tuple(quota_winners),
                     autofill_winners=tuple(autofill_winners),
                     witnesses=tuple(witnesses), rounds=tuple(records))


def test_irv_suite_catches_single_elimination_mutant():
    assert diff.check_irv_exhaustive(runoff=broken_runoff_keeps_one_lowest)


def test_stv_suite_catches_unscaled_transfer_mutant():
    assert diff.check_stv_random(2000, seed=11,
                                 stv_func=broken_stv_skips_surplus_scaling)


def test_borda_suite_catches_flat_point_mutant():
    def broken_borda(roster, ballots, tied):
        from votetally.borda import tally_borda
        # Bug: ignores the tie parameter entirely.
        return tally_borda(roster, ballots, 0)

    assert diff.check_borda_random(2000, seed=11, borda_func=broken_borda)


def test_score_suite_catches_first_winner_mutant():
    def broken_score(ballots, roster, bounds):
        from votetally.score import tally_score
        result = tally_score(ballots, roster, bounds)
        return type(result)(totals=result.totals,
                            winners=frozenset([min(result.winners)]))

    assert diff.check_score_random(2000, seed=11, score_func=broken_score)
