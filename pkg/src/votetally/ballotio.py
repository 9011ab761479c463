"""Election definition and ballot files, plus result serialization.

Both file kinds are line oriented: blank lines and lines starting with
``#`` are ignored, every other line is ``key: value`` (definitions, ballot
headers) or one ballot record. Ballot records are either a comma-separated
preference list (``2,1,3``), comma-separated ``candidate=score`` pairs
(``1=5,2=3``), or ``-`` for an explicitly empty ballot. Rationals are
rendered as ``numerator/denominator`` and never as decimals.

Parsing is strict by default: any record that would break a tallying
precondition fails the whole parse. Lenient mode instead skips bad records
and reports them, for data-recovery tooling only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from . import errors
from .borda import tally_borda
from .errors import ParseError
from .irv import instant_runoff
from .score import tally_score
from .stv import first_preference_value, single_transferable_vote
from .types import (NO_WINNER, RoundRecord, RoundTrace, ScoreResult,
                    StvResult)

METHODS = ("score", "irv", "borda", "stv")
PREFERENCE_METHODS = ("irv", "borda", "stv")

Ballot = Union[tuple[int, ...], dict[int, int]]


# ---------------------------------------------------------------------------
# definitions

@dataclass(frozen=True)
class ElectionDefinition:
    """A tallying method plus its named candidates and parameters.

    Candidate ids are contiguous from 1 and the tuple is ordered by id;
    for the ordered-roster methods this order is the tie-break order.
    """

    method: str
    candidates: tuple[tuple[int, str], ...]
    min_score: int | None = None
    max_score: int | None = None
    max_tied_placements: int | None = None
    seats: int | None = None

    def roster(self) -> tuple[int, ...]:
        return tuple(cid for cid, _ in self.candidates)

    def names(self) -> dict[int, str]:
        return {cid: name for cid, name in self.candidates}


_PARAMETER_KEYS = {
    "min-score": ("score", "min_score"),
    "max-score": ("score", "max_score"),
    "max-tied-placements": ("borda", "max_tied_placements"),
    "seats": ("stv", "seats"),
}
_REQUIRED_PARAMETERS = {
    "score": ("min-score", "max-score"),
    "irv": (),
    "borda": ("max-tied-placements",),
    "stv": ("seats",),
}


def build_definition(method: str, names: Sequence[str],
                     min_score: int | None = None,
                     max_score: int | None = None,
                     max_tied_placements: int | None = None,
                     seats: int | None = None) -> ElectionDefinition:
    """Assemble and validate a definition from display names.

    Ids are assigned 1..n in the order given. Raises :class:`ParseError`
    with the same rules as the file parser, so the service and the parser
    reject identical definitions.
    """
    candidates = tuple((i + 1, name) for i, name in enumerate(names))
    params = {"min-score": min_score, "max-score": max_score,
              "max-tied-placements": max_tied_placements, "seats": seats}
    return _validated_definition(method, candidates,
                                 {k: v for k, v in params.items()
                                  if v is not None}, {})


def _validated_definition(method: str,
                          candidates: tuple[tuple[int, str], ...],
                          params: dict[str, int],
                          lines: dict[str, int]) -> ElectionDefinition:
    def fail(rule: str, message: str, key: str | None = None):
        raise ParseError(rule, message, lines.get(key))

    if method not in METHODS:
        fail(errors.RULE_INVALID_PARAMETER,
             f"unknown method {method!r}; expected one of {', '.join(METHODS)}",
             "method")
    if not candidates:
        fail(errors.RULE_INVALID_PARAMETER, "at least one candidate required")
    ids = [cid for cid, _ in candidates]
    if sorted(ids) != list(range(1, len(ids) + 1)):
        fail(errors.RULE_INVALID_PARAMETER,
             f"candidate ids must be contiguous from 1, got {sorted(ids)}")
    seen_names: set[str] = set()
    for _, name in candidates:
        if name in seen_names:
            fail(errors.RULE_DUPLICATE_CANDIDATE,
                 f"candidate name {name!r} used twice")
        seen_names.add(name)

    for key in params:
        wanted_by, _ = _PARAMETER_KEYS[key]
        if wanted_by != method:
            fail(errors.RULE_INVALID_PARAMETER,
                 f"{key} does not apply to method {method}", key)
    for key in _REQUIRED_PARAMETERS[method]:
        if key not in params:
            fail(errors.RULE_MISSING_PARAMETER,
                 f"method {method} requires {key}")

    if method == "score" and params["min-score"] > params["max-score"]:
        fail(errors.RULE_INVALID_PARAMETER,
             f"min-score {params['min-score']} exceeds "
             f"max-score {params['max-score']}", "min-score")
    if method == "stv":
        if params["seats"] < 0:
            fail(errors.RULE_INVALID_PARAMETER, "seats must be >= 0", "seats")
        if params["seats"] > len(candidates):
            fail(errors.RULE_INVALID_PARAMETER,
                 f"{params['seats']} seats but only "
                 f"{len(candidates)} candidates", "seats")
    if method == "borda" and params["max-tied-placements"] < 0:
        fail(errors.RULE_INVALID_PARAMETER,
             "max-tied-placements must be >= 0", "max-tied-placements")

    ordered = tuple(sorted(candidates))
    fields = {py_name: params[key] for key, (_, py_name)
              in _PARAMETER_KEYS.items() if key in params}
    return ElectionDefinition(method=method, candidates=ordered, **fields)


def _meaningful_lines(text: str) -> Iterable[tuple[int, str]]:
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line


def _split_key_value(line: str, number: int) -> tuple[str, str]:
    if ":" not in line:
        raise ParseError(errors.RULE_SYNTAX,
                         f"expected 'key: value', got {line!r}", number)
    key, value = line.split(":", 1)
    return key.strip(), value.strip()


def _parse_int(value: str, what: str, number: int) -> int:
    try:
        return int(value)
    except ValueError:
        raise ParseError(errors.RULE_SYNTAX,
                         f"{what} must be an integer, got {value!r}",
                         number) from None


def parse_election(text: str) -> ElectionDefinition:
    """Parse a definition file; diagnostics carry the offending line."""
    method: str | None = None
    candidates: list[tuple[int, str]] = []
    params: dict[str, int] = {}
    lines: dict[str, int] = {}
    seen_ids: set[int] = set()

    for number, line in _meaningful_lines(text):
        key, value = _split_key_value(line, number)
        if key == "method":
            if method is not None:
                raise ParseError(errors.RULE_SYNTAX, "method given twice",
                                 number)
            method = value
            lines["method"] = number
        elif key == "candidate":
            parts = value.split(maxsplit=1)
            if len(parts) != 2:
                raise ParseError(errors.RULE_SYNTAX,
                                 "expected 'candidate: <id> <name>'", number)
            cid = _parse_int(parts[0], "candidate id", number)
            if cid < 1:
                raise ParseError(errors.RULE_INVALID_PARAMETER,
                                 f"candidate id must be >= 1, got {cid}",
                                 number)
            if cid in seen_ids:
                raise ParseError(errors.RULE_DUPLICATE_CANDIDATE,
                                 f"candidate id {cid} used twice", number)
            seen_ids.add(cid)
            candidates.append((cid, parts[1]))
            lines.setdefault(f"candidate-{parts[1]}", number)
        elif key in _PARAMETER_KEYS:
            if key in params:
                raise ParseError(errors.RULE_SYNTAX, f"{key} given twice",
                                 number)
            params[key] = _parse_int(value, key, number)
            lines[key] = number
        else:
            raise ParseError(errors.RULE_SYNTAX, f"unknown key {key!r}",
                             number)

    if method is None:
        raise ParseError(errors.RULE_MISSING_PARAMETER, "method line missing")
    # Surface duplicate names at their line.
    by_name: dict[str, int] = {}
    for cid, name in candidates:
        if name in by_name:
            raise ParseError(errors.RULE_DUPLICATE_CANDIDATE,
                             f"candidate name {name!r} used twice",
                             lines.get(f"candidate-{name}"))
        by_name[name] = cid
    return _validated_definition(method, tuple(candidates), params, lines)


def serialize_election(definition: ElectionDefinition) -> str:
    out = [f"method: {definition.method}"]
    out += [f"candidate: {cid} {name}" for cid, name in definition.candidates]
    for key, (owner, py_name) in _PARAMETER_KEYS.items():
        value = getattr(definition, py_name)
        if value is not None:
            out.append(f"{key}: {value}")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# ballots

def _parse_preference_record(record: str, definition: ElectionDefinition,
                             number: int) -> tuple[int, ...]:
    if record == "-":
        ballot: tuple[int, ...] = ()
    else:
        ballot = tuple(_parse_int(tok.strip(), "candidate id", number)
                       for tok in record.split(","))
    roster = set(definition.roster())
    seen: set[int] = set()
    for c in ballot:
        if c not in roster:
            raise ParseError(errors.RULE_UNKNOWN_CANDIDATE,
                             f"candidate {c} is not in this election", number)
        if c in seen:
            raise ParseError(errors.RULE_DUPLICATE_IN_BALLOT,
                             f"candidate {c} ranked twice", number)
        seen.add(c)
    if not ballot and definition.method == "stv":
        raise ParseError(errors.RULE_EMPTY_BALLOT,
                         "empty ballots are not allowed here", number)
    return ballot


def _parse_score_record(record: str, definition: ElectionDefinition,
                        number: int) -> dict[int, int]:
    scores: dict[int, int] = {}
    if record != "-":
        for tok in record.split(","):
            if "=" not in tok:
                raise ParseError(errors.RULE_SYNTAX,
                                 f"expected 'candidate=score', got {tok!r}",
                                 number)
            cid_text, score_text = tok.split("=", 1)
            cid = _parse_int(cid_text.strip(), "candidate id", number)
            if cid in scores:
                raise ParseError(errors.RULE_DUPLICATE_IN_BALLOT,
                                 f"candidate {cid} scored twice", number)
            scores[cid] = _parse_int(score_text.strip(), "score", number)
    roster = set(definition.roster())
    for cid, value in scores.items():
        if cid not in roster:
            raise ParseError(errors.RULE_UNKNOWN_CANDIDATE,
                             f"candidate {cid} is not in this election",
                             number)
        if not definition.min_score <= value <= definition.max_score:
            raise ParseError(
                errors.RULE_OUT_OF_RANGE_SCORE,
                f"score {value} for candidate {cid} outside "
                f"[{definition.min_score}, {definition.max_score}]", number)
    return scores


def parse_ballots(text: str, definition: ElectionDefinition,
                  strict: bool = True,
                  ) -> tuple[list[Ballot], list[ParseError]]:
    """Parse a ballot file against ``definition``.

    Returns the valid ballots in input order plus the diagnostics for the
    skipped records. Strict mode raises at the first invalid record, so a
    strict parse never lets an input through that the tallying core would
    reject.
    """
    ballots: list[Ballot] = []
    diagnostics: list[ParseError] = []
    saw_header = False
    for number, line in _meaningful_lines(text):
        if not saw_header:
            key, value = _split_key_value(line, number)
            if key != "method":
                raise ParseError(errors.RULE_SYNTAX,
                                 "ballot files start with a 'method:' line",
                                 number)
            if value != definition.method:
                raise ParseError(errors.RULE_METHOD_MISMATCH,
                                 f"ballot file is for {value!r}, definition "
                                 f"is {definition.method!r}", number)
            saw_header = True
            continue
        try:
            if definition.method == "score":
                ballots.append(_parse_score_record(line, definition, number))
            else:
                ballots.append(_parse_preference_record(line, definition,
                                                        number))
        except ParseError as diagnostic:
            if strict:
                raise
            diagnostics.append(diagnostic)
    if not saw_header:
        raise ParseError(errors.RULE_SYNTAX,
                         "ballot files start with a 'method:' line")
    return ballots, diagnostics


def serialize_ballots(ballots: Sequence[Ballot],
                      definition: ElectionDefinition) -> str:
    out = [f"method: {definition.method}"]
    for ballot in ballots:
        if isinstance(ballot, dict):
            record = ",".join(f"{cid}={ballot[cid]}"
                              for cid in sorted(ballot))
        else:
            record = ",".join(str(c) for c in ballot)
        out.append(record or "-")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# tallying a parsed election

@dataclass(frozen=True)
class TallyOutcome:
    """Uniform wrapper over the four result shapes, for serialization."""

    method: str
    winner: int | None = None
    standings: Mapping[int, int] | None = None
    score: ScoreResult | None = None
    stv: StvResult | None = None
    rounds: RoundTrace = ()


def tally_election(definition: ElectionDefinition,
                   ballots: Sequence[Ballot]) -> TallyOutcome:
    """Run the definition's method over parsed ballots.

    Thin dispatch only; all counting happens in the method modules, and
    their precondition errors propagate unchanged.
    """
    method = definition.method
    if method == "score":
        result = tally_score(ballots, definition.roster(),
                             (definition.min_score, definition.max_score))
        return TallyOutcome(method, score=result)
    if method == "irv":
        winner, rounds = instant_runoff(set(definition.roster()), ballots)
        return TallyOutcome(method, winner=None if winner == NO_WINNER
                            else winner, rounds=rounds)
    if method == "borda":
        winner, standings, rounds = tally_borda(
            definition.roster(), ballots, definition.max_tied_placements)
        return TallyOutcome(method, winner=None if winner == NO_WINNER
                            else winner, standings=standings, rounds=rounds)
    if method == "stv":
        result = single_transferable_vote(ballots, definition.roster(),
                                          definition.seats)
        return TallyOutcome(method, stv=result, rounds=result.rounds)
    raise ValueError(f"unknown method {method!r}")


# ---------------------------------------------------------------------------
# results

def format_rational(value: Fraction) -> str:
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text)


def _format_tally(value) -> str:
    return format_rational(value) if isinstance(value, Fraction) else str(value)


def witness_values(result: StvResult) -> list[Fraction]:
    """Classification-time weighted total per quota winner."""
    return [first_preference_value(w.ballots, w.candidates, w.factors, c)
            for w, c in zip(result.witnesses, result.quota_winners)]


def result_payload(outcome: TallyOutcome) -> dict:
    """The semantic content of a result, as serialized and parsed back.

    Witness states are summarized to their per-winner values; the sentinel
    for "no winner" is ``None``, never candidate 0.
    """
    if outcome.method == "score":
        return {"method": "score",
                "totals": dict(sorted(outcome.score.totals.items())),
                "winners": sorted(outcome.score.winners)}
    if outcome.method == "irv":
        return {"method": "irv", "winner": outcome.winner}
    if outcome.method == "borda":
        return {"method": "borda", "winner": outcome.winner,
                "standings": dict(sorted(outcome.standings.items()))}
    result = outcome.stv
    return {"method": "stv",
            "quota": result.quota,
            "quota_winners": list(result.quota_winners),
            "autofill_winners": list(result.autofill_winners),
            "witness_values": witness_values(result)}


def _trace_lines(rounds: RoundTrace) -> list[str]:
    out = []
    for record in rounds:
        tallies = " ".join(f"{c}={_format_tally(record.tallies[c])}"
                           for c in sorted(record.tallies))
        affected = ",".join(str(c) for c in record.affected) or "-"
        out.append(f"round: {record.round} {record.action} {affected} | "
                   f"{tallies}")
    return out


def serialize_result(outcome: TallyOutcome, include_trace: bool = False) -> str:
    """Deterministic, machine-readable text: stable key order, rationals as
    ``numerator/denominator``, no-winner as the explicit ``none`` marker."""
    payload = result_payload(outcome)
    out = [f"result: {outcome.method}"]
    if outcome.method == "score":
        out += [f"total: {cid} {total}"
                for cid, total in payload["totals"].items()]
        out.append("winners: " + " ".join(str(c) for c in payload["winners"]))
    elif outcome.method == "irv":
        out.append(f"winner: {'none' if payload['winner'] is None else payload['winner']}")
    elif outcome.method == "borda":
        out.append(f"winner: {'none' if payload['winner'] is None else payload['winner']}")
        out += [f"standing: {cid} {points}"
                for cid, points in payload["standings"].items()]
    else:
        out.append(f"quota: {format_rational(payload['quota'])}")
        out += [f"quota-winner: {c}" for c in payload["quota_winners"]]
        out += [f"autofill-winner: {c}" for c in payload["autofill_winners"]]
        out += [f"witness: {i} {c} {format_rational(v)}"
                for i, (c, v) in enumerate(zip(payload["quota_winners"],
                                               payload["witness_values"]))]
    if include_trace:
        out += _trace_lines(outcome.rounds)
    return "\n".join(out) + "\n"


def parse_result(text: str) -> dict:
    """Inverse of :func:`serialize_result` for the result payload; trace
    lines are accepted and ignored."""
    method: str | None = None
    payload: dict = {}
    for number, line in _meaningful_lines(text):
        key, value = _split_key_value(line, number)
        if key == "result":
            method = value
            if method == "score":
                payload = {"method": method, "totals": {}, "winners": []}
            elif method in ("irv", "borda"):
                payload = {"method": method, "winner": None}
                if method == "borda":
                    payload["standings"] = {}
            elif method == "stv":
                payload = {"method": method, "quota": None,
                           "quota_winners": [], "autofill_winners": [],
                           "witness_values": []}
            else:
                raise ParseError(errors.RULE_SYNTAX,
                                 f"unknown result method {value!r}", number)
        elif method is None:
            raise ParseError(errors.RULE_SYNTAX,
                             "result files start with a 'result:' line",
                             number)
        elif key == "total" or key == "standing":
            cid_text, total_text = value.split()
            target = payload["totals" if key == "total" else "standings"]
            target[int(cid_text)] = int(total_text)
        elif key == "winners":
            payload["winners"] = [int(tok) for tok in value.split()]
        elif key == "winner":
            payload["winner"] = None if value == "none" else int(value)
        elif key == "quota":
            payload["quota"] = parse_rational(value)
        elif key == "quota-winner":
            payload["quota_winners"].append(int(value))
        elif key == "autofill-winner":
            payload["autofill_winners"].append(int(value))
        elif key == "witness":
            _, cid_text, value_text = value.split()
            payload["witness_values"].append(parse_rational(value_text))
        elif key == "round":
            continue
        else:
            raise ParseError(errors.RULE_SYNTAX, f"unknown key {key!r}",
                             number)
    if method is None:
        raise ParseError(errors.RULE_SYNTAX, "empty result text")
    return payload


def result_to_json(outcome: TallyOutcome, include_trace: bool = True) -> dict:
    """JSON-safe result document; every rational becomes a ``p/q`` string."""
    payload = result_payload(outcome)
    if outcome.method == "stv":
        payload["quota"] = format_rational(payload["quota"])
        payload["witness_values"] = [format_rational(v)
                                     for v in payload["witness_values"]]
    document = {"result": payload}
    if include_trace:
        document["rounds"] = [
            {"round": record.round,
             "action": record.action,
             "affected": list(record.affected),
             "tallies": {str(c): _format_tally(record.tallies[c])
                         for c in sorted(record.tallies)}}
            for record in outcome.rounds
        ]
    return document
