"""Input validation for the tallying entry points.

Each check raises :class:`PreconditionViolation` (or a subclass) with a
stable rule code; the helpers on individual ballots are reused by the
file parser and the election service at ballot-acceptance time.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from . import errors
from .errors import EmptyRosterError, InvalidBallotError, PreconditionViolation


def check_roster(roster: Iterable[int], *, allow_empty: bool = False) -> tuple[int, ...]:
    """Validate candidate ids and return them in input order."""
    members = tuple(roster)
    if not members and not allow_empty:
        raise EmptyRosterError()
    seen = set()
    for c in members:
        if c < 1:
            raise PreconditionViolation(
                errors.RULE_RESERVED_CANDIDATE,
                f"candidate id {c} is reserved; ids start at 1")
        if c in seen:
            raise PreconditionViolation(
                errors.RULE_DUPLICATE_CANDIDATE,
                f"candidate {c} listed more than once")
        seen.add(c)
    return members


def check_preference_ballot(ballot: Sequence[int], roster: frozenset[int],
                            *, index: int | None = None,
                            allow_empty: bool = True) -> None:
    if not ballot and not allow_empty:
        raise InvalidBallotError(errors.RULE_EMPTY_BALLOT,
                                 "empty ballot not allowed", index)
    seen = set()
    for c in ballot:
        if c not in roster:
            raise InvalidBallotError(errors.RULE_UNKNOWN_CANDIDATE,
                                     f"candidate {c} is not in the roster", index)
        if c in seen:
            raise InvalidBallotError(errors.RULE_DUPLICATE_IN_BALLOT,
                                     f"candidate {c} ranked more than once", index)
        seen.add(c)


def check_score_ballot(ballot: Mapping[int, int], roster: frozenset[int],
                       min_score: int, max_score: int,
                       *, index: int | None = None) -> None:
    for c, score in ballot.items():
        if c not in roster:
            raise InvalidBallotError(errors.RULE_UNKNOWN_CANDIDATE,
                                     f"candidate {c} is not in the roster", index)
        if not min_score <= score <= max_score:
            raise InvalidBallotError(
                errors.RULE_OUT_OF_RANGE_SCORE,
                f"score {score} for candidate {c} outside "
                f"[{min_score}, {max_score}]", index)


def check_preference_election(roster: Iterable[int],
                              ballots: Sequence[Sequence[int]],
                              *, allow_empty_ballots: bool = True,
                              allow_empty_roster: bool = True) -> frozenset[int]:
    """Shared entry check for ranking-based methods; returns the roster set."""
    members = check_roster(roster, allow_empty=allow_empty_roster)
    roster_set = frozenset(members)
    for i, ballot in enumerate(ballots):
        check_preference_ballot(ballot, roster_set, index=i,
                                allow_empty=allow_empty_ballots)
    return roster_set


def check_stv_inputs(ballots: Sequence[Sequence[int]],
                     candidates: Iterable[int], seats: int) -> tuple[int, ...]:
    members = check_roster(candidates, allow_empty=False)
    if seats < 0:
        raise PreconditionViolation(errors.RULE_INVALID_PARAMETER,
                                    f"seat count {seats} is negative")
    if seats > len(members):
        raise PreconditionViolation(
            errors.RULE_SEATS_EXCEED_ROSTER,
            f"{seats} seats but only {len(members)} candidates")
    roster_set = frozenset(members)
    for i, ballot in enumerate(ballots):
        check_preference_ballot(ballot, roster_set, index=i, allow_empty=False)
    return members
