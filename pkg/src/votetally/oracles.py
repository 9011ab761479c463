"""Brute-force reference models used to cross-check the tallying core.

Everything here recomputes results from first principles and shares no
counting code with the production modules; agreement between the two sides
is what the differential suites test. These models favour obviousness over
speed and may be exponentially slower than the real implementations.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .types import (ACTION_AUTOFILL, ACTION_ELECT, ACTION_ELIMINATE,
                    ACTION_NO_WINNER, NO_WINNER, RoundRecord, StvState)


@dataclass(frozen=True)
class OracleVerdict:
    candidate: int
    is_winner: bool
    recursion_depth: int


def _live_ballots(ballots: Sequence[Sequence[int]]) -> int:
    return len([b for b in ballots if len(b) > 0])


def _firsts(roster: frozenset[int], ballots: Sequence[Sequence[int]]) -> Counter:
    firsts = Counter({c: 0 for c in roster})
    firsts.update(b[0] for b in ballots if len(b) > 0)
    return firsts


def wins_instant_runoff(candidate: int, roster: Iterable[int],
                        ballots: Sequence[Sequence[int]]) -> bool:
    """Recursive winner check for instant-runoff.

    ``candidate`` wins iff the ballot sequence is non-empty and either they
    hold a strict majority of the non-empty ballots this round, or they are
    not among the lowest first-preference counts and win the election left
    after all lowest candidates are struck from roster and ballots.
    """
    cands = frozenset(roster)
    if len(ballots) == 0 or candidate not in cands:
        return False
    firsts = _firsts(cands, ballots)
    if 2 * firsts[candidate] > _live_ballots(ballots):
        return True
    low = min(firsts[c] for c in cands)
    lowest = {c for c in cands if firsts[c] == low}
    if candidate in lowest:
        return False
    shrunk = [[c for c in b if c not in lowest] for b in ballots]
    return wins_instant_runoff(candidate, cands - lowest, shrunk)


def irv_oracle_verdict(candidate: int, roster: Iterable[int],
                       ballots: Sequence[Sequence[int]]) -> OracleVerdict:
    """Like :func:`wins_instant_runoff` but reporting the recursion depth
    (bounded by the initial roster size)."""
    cands = frozenset(roster)

    def recurse(current: frozenset[int], votes, depth: int):
        if len(votes) == 0 or candidate not in current:
            return False, depth
        firsts = _firsts(current, votes)
        if 2 * firsts[candidate] > _live_ballots(votes):
            return True, depth
        low = min(firsts[c] for c in current)
        lowest = {c for c in current if firsts[c] == low}
        if candidate in lowest:
            return False, depth
        shrunk = [[c for c in b if c not in lowest] for b in votes]
        return recurse(current - lowest, shrunk, depth + 1)

    is_winner, depth = recurse(cands, list(ballots), 0)
    return OracleVerdict(candidate, is_winner, depth)


def reference_borda(roster: Sequence[int], ballots: Sequence[Sequence[int]],
                    max_tied_placements: int,
                    ) -> tuple[int, dict[int, int], tuple[RoundRecord, ...]]:
    """Naive Borda recount used to cross-check the production tally.

    Same contract as the production function: recompute totals from scratch
    each round, strike all lowest totals while a tie overlaps the protected
    placements, report the blocking standings when no winner emerges.
    """
    field = [c for c in roster]
    votes = [list(b) for b in ballots]
    rounds: list[RoundRecord] = []

    while field:
        n = len(field)
        totals = Counter({c: 0 for c in field})
        for vote in votes:
            totals.update({c: n - vote.index(c) for c in vote})
        totals = dict(totals)

        by_total: Counter = Counter(totals.values())
        ranked = sorted(field, key=lambda c: -totals[c])
        top_total = totals[ranked[0]]
        top_is_tied = by_total[top_total] >= 2
        protected_tie = any(
            by_total[totals[c]] >= 2
            for position, c in enumerate(ranked)
            if position < max_tied_placements
        )

        if not top_is_tied and not protected_tie:
            rounds.append(RoundRecord(len(rounds) + 1, totals, ACTION_ELECT,
                                      (ranked[0],)))
            return ranked[0], totals, tuple(rounds)
        if max_tied_placements == 0:
            tied_top = tuple(sorted(c for c in field if totals[c] == top_total))
            rounds.append(RoundRecord(len(rounds) + 1, totals,
                                      ACTION_NO_WINNER, tied_top))
            return NO_WINNER, totals, tuple(rounds)

        floor_total = min(totals.values())
        struck = sorted(c for c in field if totals[c] == floor_total)
        rounds.append(RoundRecord(len(rounds) + 1, totals, ACTION_ELIMINATE,
                                  tuple(struck)))
        field = [c for c in field if c not in struck]
        votes = [[c for c in vote if c not in struck] for vote in votes]
        if not field:
            return NO_WINNER, totals, tuple(rounds)

    return NO_WINNER, {}, tuple(rounds)


def reference_stv_step(state: StvState, quota: Fraction, seats: int,
                       quota_winners: Sequence[int],
                       autofill_winners: Sequence[int],
                       ) -> tuple[StvState, tuple[int, ...], tuple[int, ...],
                                  str, tuple[int, ...], dict[int, Fraction]]:
    """Literal transcription of one transferable-vote round.

    Returns the next state plus the updated winner lists, the action taken,
    the candidates affected, and the weighted tallies the decision was based
    on. Replaying this step function from the initial state must reproduce
    the production count exactly, round by round.
    """
    seated = tuple(quota_winners)
    filled = tuple(autofill_winners)
    votes, weights, field = state.ballots, state.factors, state.candidates

    # Weighted first-preference totals for the remaining candidates.
    tallies = {
        c: sum((w for v, w in zip(votes, weights) if v and v[0] == c),
               Fraction(0))
        for c in field
    }

    # All remaining candidates exactly fill the remaining seats.
    if len(field) == seats - len(seated):
        return state, seated, tuple(field), ACTION_AUTOFILL, tuple(field), tallies

    peak = max(tallies.values())
    if peak >= quota:
        chosen = next(c for c in field if tallies[c] == peak)
        action = ACTION_ELECT
        seated = seated + (chosen,)
        share = (tallies[chosen] - quota) / len(
            [v for v in votes if v and v[0] == chosen])
    else:
        trough = min(tallies.values())
        chosen = next(c for c in field if tallies[c] == trough)
        action = ACTION_ELIMINATE
        share = None

    kept_votes: list[tuple[int, ...]] = []
    kept_weights: list[Fraction] = []
    for vote, weight in zip(votes, weights):
        headed = bool(vote) and vote[0] == chosen
        rest = tuple(c for c in vote if c != chosen)
        carried = weight * share if (headed and share is not None) else weight
        if rest and carried > 0:
            kept_votes.append(rest)
            kept_weights.append(carried)

    next_state = StvState(tuple(kept_votes), tuple(kept_weights),
                          tuple(c for c in field if c != chosen))
    return next_state, seated, filled, action, (chosen,), tallies
