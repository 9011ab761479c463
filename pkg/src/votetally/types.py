"""Shared value types for tallying results and round-by-round audit traces."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence, Union

#: Result sentinel meaning "no winner". Never a valid candidate id; rosters
#: and ballots may only contain ids >= 1.
NO_WINNER = 0

CandidateId = int
PreferenceBallot = Sequence[int]
ScoreBallot = Mapping[int, int]

# Round actions recorded in traces.
ACTION_MAJORITY_WIN = "majority-win"
ACTION_ELECT = "elect"
ACTION_ELIMINATE = "eliminate"
ACTION_AUTOFILL = "autofill"
ACTION_NO_WINNER = "no-winner"


@dataclass(frozen=True)
class StvState:
    """Snapshot of a transferable-vote count: ballots, their current
    fractional weights, and the remaining candidates (in roster order).

    ``factors`` is index-aligned with ``ballots`` and the two always have
    equal length.
    """

    ballots: tuple[tuple[int, ...], ...]
    factors: tuple[Fraction, ...]
    candidates: tuple[int, ...]


@dataclass(frozen=True)
class RoundRecord:
    """One audit entry per counting round. Derived data only; traces never
    feed back into results."""

    round: int
    tallies: Mapping[int, Union[int, Fraction]]
    action: str
    affected: tuple[int, ...]
    #: Pre-action state snapshot; populated for STV rounds only.
    state: StvState | None = None


RoundTrace = tuple[RoundRecord, ...]


@dataclass(frozen=True)
class ScoreResult:
    totals: Mapping[int, int]
    #: Full argmax set; a singleton iff the maximum total is unique.
    winners: frozenset[int]


@dataclass(frozen=True)
class StvResult:
    """Multi-seat outcome. ``quota_winners`` are seated by reaching the quota
    (in classification order); ``autofill_winners`` are seated because the
    remaining candidates exactly filled the remaining sets of seats.

    ``witnesses[i]`` is the count state at the moment ``quota_winners[i]``
    was classified; its weighted first-preference total for that candidate is
    at least ``quota``.
    """

    quota: Fraction
    quota_winners: tuple[int, ...]
    autofill_winners: tuple[int, ...]
    witnesses: tuple[StvState, ...]
    rounds: RoundTrace = field(default=())
