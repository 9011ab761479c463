"""Shared instance generators for file-format and acceptance tests."""

from __future__ import annotations

import random

from votetally import ballotio


def random_definition(rng: random.Random,
                      max_candidates: int = 6) -> ballotio.ElectionDefinition:
    method = rng.choice(ballotio.METHODS)
    n = rng.randint(1, max_candidates)
    names = [f"Candidate {i} ({rng.randint(0, 999)})" for i in range(1, n + 1)]
    if method == "score":
        lo = rng.randint(-5, 5)
        return ballotio.build_definition(method, names, min_score=lo,
                                         max_score=lo + rng.randint(0, 9))
    if method == "borda":
        return ballotio.build_definition(method, names,
                                         max_tied_placements=rng.randint(0, n + 1))
    if method == "stv":
        return ballotio.build_definition(method, names,
                                         seats=rng.randint(0, n))
    return ballotio.build_definition(method, names)


def random_ballots_for(rng: random.Random,
                       definition: ballotio.ElectionDefinition,
                       max_ballots: int = 8) -> list:
    roster = list(definition.roster())
    count = rng.randint(0, max_ballots)
    ballots = []
    for _ in range(count):
        if definition.method == "score":
            chosen = rng.sample(roster, rng.randint(0, len(roster)))
            ballots.append({c: rng.randint(definition.min_score,
                                           definition.max_score)
                            for c in chosen})
        else:
            at_least = 1 if definition.method == "stv" else 0
            ballots.append(tuple(rng.sample(
                roster, rng.randint(at_least, len(roster)))))
    return ballots
