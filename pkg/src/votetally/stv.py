"""Single transferable vote with fractional surplus transfers.

All vote weights are exact rationals (:class:`fractions.Fraction`); two
tallies of the same input are bit-identical. Candidates are an ordered
sequence: among equal tallies the candidate appearing earliest is selected,
which makes every run deterministic.

Each ballot carries a factor in (0, 1], starting at 1. When a candidate is
seated with a surplus, the factor of every transferable ballot headed by
them is scaled by ``(total - quota) / k`` where ``k`` is the number of
ballots currently headed by the candidate; on elimination factors carry
over unchanged. Ballots that run out of preferences, or whose entire weight
was consumed by a zero-surplus seating, are dropped from the count along
with their factors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import errors
from .errors import NoSuchScoreError, PreconditionViolation
from .types import (ACTION_AUTOFILL, ACTION_ELECT, ACTION_ELIMINATE,
                    RoundRecord, StvResult, StvState)
from .validate import check_stv_inputs

ONE = Fraction(1)


def droop_quota(num_ballots: int, seats: int) -> Fraction:
    """floor(ballots / (seats + 1) + 1) as an exact (integer-valued) rational."""
    return Fraction(num_ballots // (seats + 1) + 1)


def first_preference_value(ballots: Sequence[Sequence[int]],
                           candidates: Sequence[int],
                           factors: Sequence[Fraction],
                           candidate: int) -> Fraction:
    """Sum of the factors of the non-empty ballots headed by ``candidate``."""
    total = Fraction(0)
    for i in range(len(ballots)):
        if ballots[i] and ballots[i][0] == candidate:
            total += factors[i]
    return total


def select_by_tally(tallies: Mapping[int, Fraction], target: Fraction,
                    candidates: Sequence[int]) -> int:
    """The candidate holding ``target`` that appears earliest in
    ``candidates``; this is the deterministic tie-break."""
    for c in candidates:
        if c in tallies and tallies[c] == target:
            return c
    raise NoSuchScoreError(f"no candidate holds tally {target}")


def transfer_votes(ballots: Sequence[Sequence[int]],
                   factors: Sequence[Fraction], candidate: int,
                   quota: Fraction, total_value: Fraction,
                   ) -> tuple[list[tuple[int, ...]], list[Fraction]]:
    """Remove ``candidate`` from every ballot, rescaling factors.

    ``total_value`` is the candidate's current weighted first-preference
    total. When it meets the quota the transfer is a surplus transfer and
    every transferable ballot (headed by the candidate, more than one entry)
    has its factor multiplied by ``(total_value - quota) / k``; otherwise the
    candidate is being eliminated and factors pass through unchanged.

    Ballots left empty are dropped with their factors, as are ballots whose
    factor would drop to zero (a seating with no surplus consumes the whole
    ballot). The outputs stay index-aligned.
    """
    if len(ballots) != len(factors):
        raise PreconditionViolation(
            errors.RULE_LENGTH_MISMATCH,
            f"{len(ballots)} ballots but {len(factors)} factors")
    heads = [i for i, b in enumerate(ballots) if b and b[0] == candidate]
    if total_value > 0 and not heads:
        raise PreconditionViolation(
            errors.RULE_NO_SUPPORTING_BALLOT,
            f"positive total {total_value} but no ballot headed by {candidate}")

    surplus = total_value - quota
    multiplier = surplus / len(heads) if surplus >= 0 and heads else None

    new_ballots: list[tuple[int, ...]] = []
    new_factors: list[Fraction] = []
    for i, ballot in enumerate(ballots):
        remainder = tuple(c for c in ballot if c != candidate)
        if not remainder:
            continue  # non-transferable: no next preference
        factor = factors[i]
        if multiplier is not None and ballot and ballot[0] == candidate:
            factor = factor * multiplier
            if factor == 0:
                continue  # weight fully consumed by the seating
        new_ballots.append(remainder)
        new_factors.append(factor)
    return new_ballots, new_factors


def single_transferable_vote(ballots: Sequence[Sequence[int]],
                             candidates: Sequence[int],
                             seats: int) -> StvResult:
    """Fill ``seats`` seats from preference ballots.

    Rounds run until every seat is assigned: if the remaining candidates
    exactly fill the remaining seats they are all seated (autofill);
    otherwise the highest weighted first-preference total is found, and the
    candidate holding it is seated when it reaches the Droop quota or else
    the lowest-tallying candidate is eliminated. Either way the affected
    candidate is removed and their ballots transferred.

    Quota winners are returned separately from autofill winners, together
    with one state snapshot per quota winner recording the count at the
    moment of seating.
    """
    roster = check_stv_inputs(ballots, candidates, seats)
    quota = droop_quota(len(ballots), seats)

    working: tuple[tuple[int, ...], ...] = tuple(tuple(b) for b in ballots)
    weights: tuple[Fraction, ...] = tuple(ONE for _ in working)
    remaining: tuple[int, ...] = roster
    quota_winners: list[int] = []
    autofill_winners: list[int] = []
    witnesses: list[StvState] = []
    records: list[RoundRecord] = []

    while len(quota_winners) + len(autofill_winners) < seats:
        state = StvState(working, weights, remaining)
        tallies = {c: first_preference_value(working, remaining, weights, c)
                   for c in remaining}
        if len(remaining) == seats - len(quota_winners):
            autofill_winners = list(remaining)
            records.append(RoundRecord(len(records) + 1, tallies,
                                       ACTION_AUTOFILL, remaining, state))
            continue

        best = max(tallies.values())
        target = best if best >= quota else min(tallies.values())
        chosen = select_by_tally(tallies, target, remaining)
        if target >= quota:
            quota_winners.append(chosen)
            witnesses.append(state)
            action = ACTION_ELECT
        else:
            action = ACTION_ELIMINATE
        records.append(RoundRecord(len(records) + 1, tallies, action,
                                   (chosen,), state))
        remaining = tuple(c for c in remaining if c != chosen)
        new_ballots, new_weights = transfer_votes(working, weights, chosen,
                                                  quota, target)
        working = tuple(new_ballots)
        weights = tuple(new_weights)

    return StvResult(quota=quota,
                     quota_winners=tuple(quota_winners),
                     autofill_winners=tuple(autofill_winners),
                     witnesses=tuple(witnesses),
                     rounds=tuple(records))
