"""Exact-arithmetic election tallying.

Four methods (score voting, instant-runoff, Borda count with iterative tie
resolution, and single transferable vote with fractional Gregory transfers)
plus ballot-file parsing, a command-line front end, differential self-checks
against brute-force reference models, and an HTTP election service.
"""

from .borda import tally_borda
from .errors import (InvalidBallotError, NoSuchScoreError, ParseError,
                     PreconditionViolation, TallyError)
from .irv import instant_runoff
from .score import tally_score
from .stv import droop_quota, single_transferable_vote
from .types import (NO_WINNER, RoundRecord, ScoreResult, StvResult, StvState)

__all__ = [
    "NO_WINNER",
    "InvalidBallotError",
    "NoSuchScoreError",
    "ParseError",
    "PreconditionViolation",
    "RoundRecord",
    "ScoreResult",
    "StvResult",
    "StvState",
    "TallyError",
    "droop_quota",
    "instant_runoff",
    "single_transferable_vote",
    "tally_borda",
    "tally_score",
]
