"""Score voting: sum per-candidate scores, highest total wins."""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .types import ScoreResult
from .validate import check_roster, check_score_ballot


def tally_score(ballots: Sequence[Mapping[int, int]], roster: Iterable[int],
                score_range: tuple[int, int]) -> ScoreResult:
    """Tally score ballots over ``roster``.

    A candidate absent from a ballot contributes 0 from that ballot. Ties
    are not broken: ``winners`` is the full set of candidates holding the
    maximum total.
    """
    members = check_roster(roster)
    roster_set = frozenset(members)
    min_score, max_score = score_range
    for i, ballot in enumerate(ballots):
        check_score_ballot(ballot, roster_set, min_score, max_score, index=i)

    totals = {c: 0 for c in sorted(roster_set)}
    for ballot in ballots:
        for c, score in ballot.items():
            totals[c] += score
    best = max(totals.values())
    winners = frozenset(c for c, t in totals.items() if t == best)
    return ScoreResult(totals=totals, winners=winners)
