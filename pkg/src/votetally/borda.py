"""Borda count with optional iterative tie resolution.

With ``n`` candidates in play, a ballot awards ``n`` points to its first
entry, ``n - 1`` to the second, and so on; candidates missing from a ballot
get 0 points from it. ``max_tied_placements`` controls tie handling: the
top ``max_tied_placements`` placements must be free of ties before a winner
is declared, and while they are not, every candidate tied for the lowest
total is removed and the points recomputed over the smaller field. With the
parameter at 0 resolution is disabled entirely and a tied top yields no
winner.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .types import (ACTION_ELECT, ACTION_ELIMINATE, ACTION_NO_WINNER,
                    NO_WINNER, RoundRecord, RoundTrace)
from .validate import check_preference_election


def borda_standings(roster: Sequence[int],
                    ballots: Sequence[Sequence[int]]) -> dict[int, int]:
    """Point totals over ``roster``; a full ranking hands out n(n+1)/2."""
    n = len(roster)
    standings = {c: 0 for c in roster}
    for ballot in ballots:
        for position, c in enumerate(ballot):
            standings[c] += n - position
    return standings


def _tie_blocks_first(standings: dict[int, int], placements: int) -> bool:
    """True if any group of equal totals overlaps placements 1..placements."""
    sizes_by_score: dict[int, int] = {}
    for total in standings.values():
        sizes_by_score[total] = sizes_by_score.get(total, 0) + 1
    position = 0
    for total in sorted(sizes_by_score, reverse=True):
        size = sizes_by_score[total]
        if size >= 2 and position < placements:
            return True
        position += size
    return False


def tally_borda(roster: Sequence[int], ballots: Sequence[Sequence[int]],
                max_tied_placements: int,
                ) -> tuple[int, dict[int, int], RoundTrace]:
    """Run a Borda election, resolving ties by lowest-candidate elimination.

    Returns ``(winner, standings, rounds)``. ``winner`` is ``NO_WINNER`` when
    resolution is disabled and the top is tied, or when elimination empties
    the field; ``standings`` then report the blocking tie.
    """
    check_preference_election(roster, ballots, allow_empty_roster=False)
    current = list(dict.fromkeys(roster))
    current_ballots = [tuple(b) for b in ballots]
    records: list[RoundRecord] = []
    round_limit = len(current)

    standings = borda_standings(current, current_ballots)
    for round_no in range(1, round_limit + 1):
        top = max(standings.values())
        leaders = sorted(c for c, t in standings.items() if t == top)
        blocked = len(leaders) > 1 or _tie_blocks_first(standings,
                                                        max_tied_placements)
        if not blocked:
            records.append(RoundRecord(round_no, standings, ACTION_ELECT,
                                       (leaders[0],)))
            return leaders[0], standings, tuple(records)
        if max_tied_placements == 0:
            records.append(RoundRecord(round_no, standings, ACTION_NO_WINNER,
                                       tuple(leaders)))
            return NO_WINNER, standings, tuple(records)

        low = min(standings.values())
        lowest = sorted(c for c, t in standings.items() if t == low)
        records.append(RoundRecord(round_no, standings, ACTION_ELIMINATE,
                                   tuple(lowest)))
        gone = set(lowest)
        current = [c for c in current if c not in gone]
        if not current:
            return NO_WINNER, standings, tuple(records)
        current_ballots = [tuple(c for c in ballot if c not in gone)
                           for ballot in current_ballots]
        standings = borda_standings(current, current_ballots)

    # Unreachable when every round removes a candidate; kept as the stated
    # resolution bound.
    records.append(RoundRecord(round_limit + 1, standings, ACTION_NO_WINNER,
                               tuple(sorted(standings))))
    return NO_WINNER, standings, tuple(records)
