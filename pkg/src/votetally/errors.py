"""Exception types shared across the tallying core, parsers, CLI and service."""

from __future__ import annotations


class TallyError(Exception):
    """Base class for all errors raised by this package."""


class PreconditionViolation(TallyError):
    """An input broke a tallying-method contract.

    Raised instead of halting so callers can distinguish bad input from
    internal failure. ``rule`` is a stable machine-readable code,
    ``ballot_index`` points at the offending ballot where applicable.
    """

    def __init__(self, rule: str, message: str, ballot_index: int | None = None):
        self.rule = rule
        self.ballot_index = ballot_index
        if ballot_index is not None:
            message = f"ballot {ballot_index}: {message}"
        super().__init__(message)


class InvalidBallotError(PreconditionViolation):
    """A single ballot failed validation (unknown candidate, bad score, ...)."""


class EmptyRosterError(PreconditionViolation):
    def __init__(self, message: str = "candidate roster is empty"):
        super().__init__("empty-roster", message)


class NoSuchScoreError(TallyError):
    """No candidate holds the requested tally value."""


class ParseError(TallyError):
    """A definition or ballot file could not be parsed or validated.

    ``line`` is 1-based; ``None`` for file-level problems with no single
    offending line.
    """

    def __init__(self, rule: str, message: str, line: int | None = None,
                 column: int | None = None):
        self.rule = rule
        self.line = line
        self.column = column
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


# Rule codes used by PreconditionViolation and ParseError. Kept in one place
# so the CLI, service and tests can match on them.
RULE_EMPTY_ROSTER = "empty-roster"
RULE_DUPLICATE_CANDIDATE = "duplicate-candidate"
RULE_RESERVED_CANDIDATE = "reserved-candidate-id"
RULE_UNKNOWN_CANDIDATE = "unknown-candidate"
RULE_DUPLICATE_IN_BALLOT = "duplicate-in-ballot"
RULE_EMPTY_BALLOT = "empty-ballot"
RULE_OUT_OF_RANGE_SCORE = "out-of-range-score"
RULE_SEATS_EXCEED_ROSTER = "seats-exceed-roster"
RULE_LENGTH_MISMATCH = "length-mismatch"
RULE_NO_SUPPORTING_BALLOT = "no-supporting-ballot"
RULE_SYNTAX = "syntax"
RULE_MISSING_PARAMETER = "missing-parameter"
RULE_INVALID_PARAMETER = "invalid-parameter"
RULE_METHOD_MISMATCH = "method-mismatch"
