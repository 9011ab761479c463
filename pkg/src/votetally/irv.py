"""Instant-runoff voting over preference ballots.

Candidates are treated as an unordered set, so no enumeration order can
influence the winner. Each round counts first preferences of the non-empty
ballots; a candidate holding a strict majority of those ballots wins,
otherwise every candidate tied for the lowest count is removed at once.
Ballots that lose all their entries stay in the sequence as empty ballots,
which is why majorities are measured against the number of non-empty
ballots rather than the total.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import EmptyRosterError
from .types import (ACTION_ELIMINATE, ACTION_MAJORITY_WIN, NO_WINNER,
                    RoundRecord, RoundTrace)
from .validate import check_preference_election


def first_preference_counts(roster: Iterable[int],
                            ballots: Sequence[Sequence[int]]) -> dict[int, int]:
    """Count how many non-empty ballots rank each roster member first.

    Every roster member gets an entry, possibly 0.
    """
    counts = {c: 0 for c in sorted(set(roster))}
    for ballot in ballots:
        if ballot:
            counts[ballot[0]] += 1
    return counts


def non_empty_count(ballots: Sequence[Sequence[int]]) -> int:
    return sum(1 for ballot in ballots if ballot)


def has_majority(candidate: int, roster: Iterable[int],
                 ballots: Sequence[Sequence[int]]) -> bool:
    """True iff ``candidate`` is ranked first on strictly more than half of
    the non-empty ballots."""
    counts = first_preference_counts(roster, ballots)
    return 2 * counts[candidate] > non_empty_count(ballots)


def lowest_candidates(roster: Iterable[int],
                      ballots: Sequence[Sequence[int]]) -> set[int]:
    """All roster members whose first-preference count equals the minimum."""
    counts = first_preference_counts(roster, ballots)
    if not counts:
        raise EmptyRosterError()
    low = min(counts.values())
    return {c for c, n in counts.items() if n == low}


def remove_candidates_from_ballots(roster: Iterable[int],
                                   ballots: Sequence[Sequence[int]],
                                   to_remove: Iterable[int],
                                   ) -> list[tuple[int, ...]]:
    """Filter ``to_remove`` out of every ballot, preserving order.

    Ballots that lose all entries are kept as empty ballots, so the output
    always has the same length as the input.
    """
    gone = set(to_remove)
    return [tuple(c for c in ballot if c not in gone) for ballot in ballots]


def instant_runoff(roster: Iterable[int], ballots: Sequence[Sequence[int]],
                   ) -> tuple[int, RoundTrace]:
    """Run an instant-runoff election.

    Returns ``(winner, rounds)`` where ``winner`` is ``NO_WINNER`` (0) when
    there are no ballots, no candidates, or elimination removes everyone.
    """
    check_preference_election(roster, ballots, allow_empty_roster=True)
    remaining = frozenset(roster)
    current = [tuple(b) for b in ballots]
    records: list[RoundRecord] = []

    if not ballots or not remaining:
        return NO_WINNER, ()

    while remaining:
        counts = first_preference_counts(remaining, current)
        live = non_empty_count(current)
        majority = [c for c in sorted(remaining) if 2 * counts[c] > live]
        if majority:
            # Strict majority is unique by construction.
            winner = majority[0]
            records.append(RoundRecord(len(records) + 1, counts,
                                       ACTION_MAJORITY_WIN, (winner,)))
            return winner, tuple(records)
        lowest = lowest_candidates(remaining, current)
        records.append(RoundRecord(len(records) + 1, counts,
                                   ACTION_ELIMINATE, tuple(sorted(lowest))))
        current = remove_candidates_from_ballots(remaining, current, lowest)
        remaining = remaining - lowest

    return NO_WINNER, tuple(records)
