"""Randomized and exhaustive differential suites.

Each suite runs a tallying function against its independent reference model
(see :mod:`votetally.oracles`) and returns a list of counterexamples, empty
when everything agrees. Suites are deterministic for a given seed so any
reported counterexample can be reproduced. The function under test is a
parameter so the suites can also demonstrate their own detection power
against deliberately broken variants.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

from . import irv, oracles, score, stv
from .borda import borda_standings, tally_borda
from .types import ACTION_AUTOFILL, ACTION_ELECT, NO_WINNER, StvState

# Bounds keeping the exhaustive enumeration comfortably under a minute.
EXHAUSTIVE_MAX_CANDIDATES = 3
EXHAUSTIVE_MAX_BALLOTS = 4


@dataclass(frozen=True)
class Counterexample:
    suite: str
    instance: str
    detail: str

    def __str__(self) -> str:
        return f"[{self.suite}] {self.detail}\n  instance: {self.instance}"


# ---------------------------------------------------------------------------
# instance generators

def _id_pool(rng: random.Random, size: int, spread: int) -> list[int]:
    return rng.sample(range(1, spread + 1), size)


def random_irv_instance(rng: random.Random, max_candidates: int,
                        max_ballots: int) -> tuple[list[int], list[list[int]]]:
    n = rng.randint(0, max_candidates)
    roster = _id_pool(rng, n, 2 * max_candidates + 1)
    ballots = [rng.sample(roster, rng.randint(0, n))
               for _ in range(rng.randint(0, max_ballots))]
    return roster, ballots


def random_stv_instance(rng: random.Random, max_candidates: int,
                        max_ballots: int,
                        ) -> tuple[list[list[int]], list[int], int]:
    n = rng.randint(1, max_candidates)
    roster = _id_pool(rng, n, 2 * max_candidates + 1)
    seats = rng.randint(0, n)
    ballots = [rng.sample(roster, rng.randint(1, n))
               for _ in range(rng.randint(0, max_ballots))]
    return ballots, roster, seats


def random_borda_instance(rng: random.Random, max_candidates: int,
                          max_ballots: int,
                          ) -> tuple[list[int], list[list[int]], int]:
    n = rng.randint(1, max_candidates)
    roster = _id_pool(rng, n, 2 * max_candidates + 1)
    ballots = [rng.sample(roster, rng.randint(0, n))
               for _ in range(rng.randint(0, max_ballots))]
    return roster, ballots, rng.randint(0, n + 1)


def random_score_instance(rng: random.Random, max_candidates: int,
                          max_ballots: int,
                          ) -> tuple[list[dict[int, int]], list[int],
                                     tuple[int, int]]:
    n = rng.randint(1, max_candidates)
    roster = _id_pool(rng, n, 2 * max_candidates + 1)
    lo = rng.randint(-3, 3)
    hi = lo + rng.randint(0, 9)
    ballots = []
    for _ in range(rng.randint(0, max_ballots)):
        chosen = rng.sample(roster, rng.randint(0, n))
        ballots.append({c: rng.randint(lo, hi) for c in chosen})
    return ballots, roster, (lo, hi)


def iter_exhaustive_irv_instances(max_candidates: int = EXHAUSTIVE_MAX_CANDIDATES,
                                  max_ballots: int = EXHAUSTIVE_MAX_BALLOTS,
                                  ) -> Iterator[tuple[tuple[int, ...],
                                                      tuple[tuple[int, ...], ...]]]:
    """Every election whose roster is a subset of 1..max_candidates and whose
    ballot sequence draws at most ``max_ballots`` ballots from all
    permutations of all roster subsets."""
    universe = list(range(1, max_candidates + 1))
    for r in range(len(universe) + 1):
        for roster in itertools.combinations(universe, r):
            choices = [perm
                       for k in range(len(roster) + 1)
                       for subset in itertools.combinations(roster, k)
                       for perm in itertools.permutations(subset)]
            for length in range(max_ballots + 1):
                for ballots in itertools.product(choices, repeat=length):
                    yield roster, ballots


# ---------------------------------------------------------------------------
# instant-runoff suites

IrvFunc = Callable[[Sequence[int], Sequence[Sequence[int]]], tuple]


def _check_irv_against_oracle(roster, ballots, runoff: IrvFunc,
                              suite: str) -> list[Counterexample]:
    instance = f"roster={list(roster)!r} ballots={[list(b) for b in ballots]!r}"
    found: list[Counterexample] = []
    winner, _ = runoff(roster, ballots)
    oracle_winners = [c for c in roster
                      if oracles.wins_instant_runoff(c, roster, ballots)]
    if len(oracle_winners) > 1:
        found.append(Counterexample(suite, instance,
                                    f"oracle admits several winners: {oracle_winners}"))
    if winner == NO_WINNER:
        if oracle_winners:
            found.append(Counterexample(
                suite, instance,
                f"returned no winner but oracle accepts {oracle_winners}"))
    else:
        if winner not in set(roster):
            found.append(Counterexample(suite, instance,
                                        f"winner {winner} not in roster"))
        if set(oracle_winners) != {winner}:
            found.append(Counterexample(
                suite, instance,
                f"returned {winner} but oracle accepts {oracle_winners}"))
    return found


def check_irv_exhaustive(max_candidates: int = EXHAUSTIVE_MAX_CANDIDATES,
                         max_ballots: int = EXHAUSTIVE_MAX_BALLOTS,
                         runoff: IrvFunc = irv.instant_runoff,
                         ) -> list[Counterexample]:
    """Exhaustive agreement between the runoff and the recursive oracle."""
    found: list[Counterexample] = []
    for roster, ballots in iter_exhaustive_irv_instances(max_candidates,
                                                         max_ballots):
        found.extend(_check_irv_against_oracle(roster, ballots, runoff,
                                               "irv-exhaustive"))
        if len(found) >= 5:
            break
    return found


def check_irv_random(instances: int = 10_000, seed: int = 0,
                     max_candidates: int = 6, max_ballots: int = 20,
                     runoff: IrvFunc = irv.instant_runoff,
                     ) -> list[Counterexample]:
    """Randomized contract checks: oracle agreement, sentinel soundness,
    ballot-order and roster-order invariance, oracle recursion bound."""
    rng = random.Random(seed)
    found: list[Counterexample] = []
    for _ in range(instances):
        roster, ballots = random_irv_instance(rng, max_candidates, max_ballots)
        instance = f"roster={roster!r} ballots={ballots!r}"
        winner, _ = runoff(roster, ballots)

        if not ballots and winner != NO_WINNER:
            found.append(Counterexample("irv-random", instance,
                                        "no ballots must mean no winner"))
        if not roster and winner != NO_WINNER:
            found.append(Counterexample("irv-random", instance,
                                        "no candidates must mean no winner"))
        found.extend(_check_irv_against_oracle(roster, ballots, runoff,
                                               "irv-random"))

        shuffled_ballots = ballots[:]
        rng.shuffle(shuffled_ballots)
        if runoff(roster, shuffled_ballots)[0] != winner:
            found.append(Counterexample("irv-random", instance,
                                        "winner changed when ballots reordered"))
        shuffled_roster = roster[:]
        rng.shuffle(shuffled_roster)
        if runoff(shuffled_roster, ballots)[0] != winner:
            found.append(Counterexample("irv-random", instance,
                                        "winner changed when roster reordered"))

        for c in roster:
            verdict = oracles.irv_oracle_verdict(c, roster, ballots)
            if verdict.recursion_depth > len(roster):
                found.append(Counterexample(
                    "irv-random", instance,
                    f"oracle recursion depth {verdict.recursion_depth} "
                    f"exceeds roster size"))
        if len(found) >= 5:
            break
    return found


# ---------------------------------------------------------------------------
# transferable-vote suite

StvFunc = Callable[[Sequence[Sequence[int]], Sequence[int], int], object]


def _stv_survivor_factors(state: StvState, removed: int,
                          multiplier: Fraction | None,
                          ) -> list[tuple[Fraction, Fraction]]:
    """(factor before, factor after) pairs for the ballots surviving a
    round, in output order, per the transfer contract."""
    pairs = []
    for ballot, factor in zip(state.ballots, state.factors):
        rest = [c for c in ballot if c != removed]
        headed = ballot and ballot[0] == removed
        new_factor = factor * multiplier if (headed and multiplier is not None) else factor
        if rest and new_factor > 0:
            pairs.append((factor, new_factor))
    return pairs


def check_stv_random(instances: int = 10_000, seed: int = 0,
                     max_candidates: int = 6, max_ballots: int = 12,
                     stv_func: StvFunc = stv.single_transferable_vote,
                     ) -> list[Counterexample]:
    """Randomized contract suite: seat accounting, disjointness, membership,
    support, quota witnesses, factor discipline, and state-by-state agreement
    with the literal round transcription."""
    rng = random.Random(seed)
    found: list[Counterexample] = []
    for _ in range(instances):
        ballots, roster, seats = random_stv_instance(rng, max_candidates,
                                                     max_ballots)
        instance = f"ballots={ballots!r} roster={roster!r} seats={seats}"

        def report(detail: str) -> None:
            found.append(Counterexample("stv-random", instance, detail))

        result = stv_func(ballots, roster, seats)
        elected = list(result.quota_winners) + list(result.autofill_winners)

        if len(elected) != seats:
            report(f"{len(elected)} winners for {seats} seats")
        if len(set(elected)) != len(elected):
            report(f"winners overlap or repeat: {elected}")
        if not set(elected) <= set(roster):
            report(f"winners outside roster: {elected}")
        for c in result.quota_winners:
            if not any(c in b for b in ballots):
                report(f"quota winner {c} has no supporting ballot")

        quota = stv.droop_quota(len(ballots), seats)
        if result.quota != quota or quota.denominator != 1 or quota < 1:
            report(f"quota {result.quota} is not the integral Droop quota")
        if len(result.witnesses) != len(result.quota_winners):
            report("one witness state required per quota winner")
        for i, c in enumerate(result.quota_winners):
            value = stv.first_preference_value(
                result.witnesses[i].ballots, result.witnesses[i].candidates,
                result.witnesses[i].factors, c)
            if value < quota:
                report(f"witness value {value} for winner {c} below quota")

        _replay_stv_rounds(result, ballots, roster, seats, report)
        if len(found) >= 5:
            break
    return found


def _replay_stv_rounds(result, ballots, roster, seats, report) -> None:
    # Independent quota: integer floor division rather than rational floor.
    ref_quota = Fraction(len(ballots) // (seats + 1) + 1)
    if ref_quota != result.quota:
        report(f"quota mismatch: {result.quota} vs reference {ref_quota}")
        return

    state = StvState(tuple(tuple(b) for b in ballots),
                     tuple(Fraction(1) for _ in ballots), tuple(roster))
    seated: tuple[int, ...] = ()
    filled: tuple[int, ...] = ()
    for record in result.rounds:
        if record.state != state:
            report(f"round {record.round} state diverges from replay")
            return
        if len(state.ballots) != len(state.factors):
            report(f"round {record.round}: ballots and factors out of step")
        if any(not (0 < f <= 1) for f in state.factors):
            report(f"round {record.round}: factor outside (0, 1]")
        if all(f == 1 for f in state.factors):
            at_quota = sum(1 for c in state.candidates
                           if stv.first_preference_value(
                               state.ballots, state.candidates,
                               state.factors, c) >= result.quota)
            if at_quota > seats:
                report(f"round {record.round}: {at_quota} candidates at quota "
                       f"with unit factors, more than {seats} seats")

        next_state, seated, filled, action, affected, tallies = (
            oracles.reference_stv_step(state, ref_quota, seats, seated, filled))
        if action != record.action or affected != record.affected:
            report(f"round {record.round}: replay chose {action} {affected}, "
                   f"tally chose {record.action} {record.affected}")
            return
        if dict(record.tallies) != tallies:
            report(f"round {record.round}: tallies diverge from replay")
            return

        if action == ACTION_ELECT:
            heads = len([b for b in state.ballots
                         if b and b[0] == affected[0]])
            multiplier = (tallies[affected[0]] - ref_quota) / heads
            if multiplier >= 1:
                report(f"round {record.round}: surplus multiplier "
                       f"{multiplier} not below 1")
        else:
            multiplier = None
        if action != ACTION_AUTOFILL:
            pairs = _stv_survivor_factors(state, affected[0], multiplier)
            if list(next_state.factors) != [after for _, after in pairs]:
                report(f"round {record.round}: factors diverge from transfer "
                       f"contract")
                return
            if any(after > before for before, after in pairs):
                report(f"round {record.round}: a ballot factor increased")
        state = next_state

    if seated != result.quota_winners or filled != result.autofill_winners:
        report(f"replay ended with {seated}/{filled}, tally returned "
               f"{result.quota_winners}/{result.autofill_winners}")
    if len(seated) + len(filled) != seats:
        report("replay did not fill every seat")


# ---------------------------------------------------------------------------
# Borda and score suites

BordaFunc = Callable[[Sequence[int], Sequence[Sequence[int]], int], tuple]


def check_borda_random(instances: int = 10_000, seed: int = 0,
                       max_candidates: int = 6, max_ballots: int = 12,
                       borda_func: BordaFunc = tally_borda,
                       ) -> list[Counterexample]:
    """Differential agreement with the naive recount plus the fixed-total
    and termination properties."""
    rng = random.Random(seed)
    found: list[Counterexample] = []
    for _ in range(instances):
        roster, ballots, tied = random_borda_instance(rng, max_candidates,
                                                      max_ballots)
        instance = f"roster={roster!r} ballots={ballots!r} tied={tied}"
        winner, standings, rounds = borda_func(roster, ballots, tied)
        ref_winner, ref_standings, ref_rounds = oracles.reference_borda(
            roster, ballots, tied)
        if winner != ref_winner or standings != ref_standings:
            found.append(Counterexample(
                "borda-random", instance,
                f"tally {winner}/{standings} disagrees with recount "
                f"{ref_winner}/{ref_standings}"))
        eliminations = sum(1 for r in rounds if r.action == "eliminate")
        if eliminations > len(roster) or len(rounds) > len(roster) + 1:
            found.append(Counterexample(
                "borda-random", instance,
                "tie resolution exceeded the round bound"))

        n = len(roster)
        full = rng.sample(roster, n)
        handed_out = sum(borda_standings(roster, [full]).values())
        if handed_out != n * (n + 1) // 2:
            found.append(Counterexample(
                "borda-random", f"roster={roster!r} ballot={full!r}",
                f"full ranking handed out {handed_out} points, "
                f"expected {n * (n + 1) // 2}"))
        if len(found) >= 5:
            break
    return found


ScoreFunc = Callable[..., object]


def check_score_random(instances: int = 10_000, seed: int = 0,
                       max_candidates: int = 6, max_ballots: int = 12,
                       score_func: ScoreFunc = score.tally_score,
                       ) -> list[Counterexample]:
    """Winners must equal the brute-force argmax set; an empty ballot must
    never change them."""
    rng = random.Random(seed)
    found: list[Counterexample] = []
    for _ in range(instances):
        ballots, roster, bounds = random_score_instance(rng, max_candidates,
                                                        max_ballots)
        instance = f"ballots={ballots!r} roster={roster!r} range={bounds}"
        result = score_func(ballots, roster, bounds)

        best = max(sum(b.get(c, 0) for b in ballots) for c in roster)
        argmax = frozenset(c for c in roster
                           if sum(b.get(c, 0) for b in ballots) == best)
        if result.winners != argmax:
            found.append(Counterexample(
                "score-random", instance,
                f"winners {sorted(result.winners)} but brute force says "
                f"{sorted(argmax)}"))

        padded = score_func(list(ballots) + [{}], roster, bounds)
        if padded.winners != result.winners:
            found.append(Counterexample(
                "score-random", instance,
                "an empty ballot changed the winner set"))
        if bounds[0] <= 0 <= bounds[1]:
            zeroed = score_func(list(ballots) + [{c: 0 for c in roster}],
                                roster, bounds)
            if zeroed.winners != result.winners:
                found.append(Counterexample(
                    "score-random", instance,
                    "an all-zero ballot changed the winner set"))
        if len(found) >= 5:
            break
    return found


# ---------------------------------------------------------------------------
# aggregate runner

def run_all_suites(seed: int = 0, instances: int = 10_000,
                   max_candidates: int = 6, max_ballots: int = 20,
                   ) -> dict[str, list[Counterexample]]:
    """Run every suite; the mapping is ordered and keyed by suite name."""
    return {
        "irv-exhaustive": check_irv_exhaustive(
            min(max_candidates, EXHAUSTIVE_MAX_CANDIDATES),
            min(max_ballots, EXHAUSTIVE_MAX_BALLOTS)),
        "irv-random": check_irv_random(instances, seed, max_candidates,
                                       max_ballots),
        "stv-random": check_stv_random(instances, seed, max_candidates,
                                       min(max_ballots, 12)),
        "borda-random": check_borda_random(instances, seed, max_candidates,
                                           min(max_ballots, 12)),
        "score-random": check_score_random(instances, seed, max_candidates,
                                           min(max_ballots, 12)),
    }
