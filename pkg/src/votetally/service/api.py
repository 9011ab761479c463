"""HTTP+JSON API over the domain flow.

Endpoints:
  POST /elections                create an election           -> 201
  POST /elections/{id}/voters    register a voter, get token  -> 201
  POST /elections/{id}/ballots   cast a ballot with a token   -> 201
  POST /elections/{id}/close     close and tally              -> 200
  GET  /elections/{id}           election status              -> 200
  GET  /elections/{id}/result    tallied result + trace       -> 200

Invalid ballots and definitions answer 400, unknown or invalidated
resources 404, token reuse and wrong-status operations 409. Rational
numbers in responses are ``numerator/denominator`` strings.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from ..errors import InvalidBallotError, ParseError
from .config import ServiceConfig
from .domain import (ElectionService, NotFoundError, TokenUsedError,
                     UnknownTokenError, ValidationFailureError,
                     WrongStatusError)


class CreateElectionRequest(BaseModel):
    method: Literal["score", "irv", "borda", "stv"]
    candidates: list[str] = Field(min_length=1)
    min_score: Optional[int] = None
    max_score: Optional[int] = None
    max_tied_placements: Optional[int] = None
    seats: Optional[int] = None


class CandidateView(BaseModel):
    id: int
    name: str


class ElectionView(BaseModel):
    id: str
    status: str
    method: str
    candidates: list[CandidateView]
    min_score: Optional[int] = None
    max_score: Optional[int] = None
    max_tied_placements: Optional[int] = None
    seats: Optional[int] = None
    created_at: str
    ballots_cast: int


class RegisterVoterRequest(BaseModel):
    contact: str = Field(min_length=1)


class TokenView(BaseModel):
    election_id: str
    token: str


class CastBallotRequest(BaseModel):
    token: str
    ranking: Optional[list[int]] = None
    scores: Optional[dict[int, int]] = None


class ReceiptView(BaseModel):
    election_id: str
    receipt: str


class ResultView(BaseModel):
    election_id: str
    status: str
    result: dict
    rounds: list[dict]


def _http_error(status_code: int, rule: str, message: str) -> HTTPException:
    return HTTPException(status_code=status_code,
                         detail={"rule": rule, "message": message})


def create_app(config: ServiceConfig,
               service: ElectionService | None = None) -> FastAPI:
    service = service if service is not None else ElectionService(config)
    app = FastAPI(title="votetally election service", version="0.1.0")
    app.state.service = service
    # The browser client may be served from another origin; auth rides in
    # request bodies (cast tokens), not cookies, so a permissive policy is safe.
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.post("/elections", response_model=ElectionView, status_code=201)
    def create_election(request: CreateElectionRequest):
        try:
            return service.create_election(
                request.method, request.candidates,
                min_score=request.min_score, max_score=request.max_score,
                max_tied_placements=request.max_tied_placements,
                seats=request.seats)
        except ParseError as bad:
            raise _http_error(400, bad.rule, str(bad))

    @app.get("/elections/{election_id}", response_model=ElectionView)
    def get_election(election_id: str):
        try:
            return service.describe_election(election_id)
        except NotFoundError as missing:
            raise _http_error(404, "not-found", str(missing))

    @app.post("/elections/{election_id}/voters", response_model=TokenView,
              status_code=201)
    def register_voter(election_id: str, request: RegisterVoterRequest):
        try:
            token = service.register_voter(election_id, request.contact)
        except NotFoundError as missing:
            raise _http_error(404, "not-found", str(missing))
        except WrongStatusError as wrong:
            raise _http_error(409, "wrong-status", str(wrong))
        return {"election_id": election_id, "token": token}

    @app.post("/elections/{election_id}/ballots", response_model=ReceiptView,
              status_code=201)
    def cast_ballot(election_id: str, request: CastBallotRequest):
        payload = {}
        if request.ranking is not None:
            payload["ranking"] = request.ranking
        if request.scores is not None:
            payload["scores"] = request.scores
        try:
            return service.cast_ballot(election_id, request.token, payload)
        except NotFoundError as missing:
            raise _http_error(404, "not-found", str(missing))
        except UnknownTokenError as unknown:
            raise _http_error(404, "unknown-token", str(unknown))
        except TokenUsedError as used:
            raise _http_error(409, "token-used", str(used))
        except WrongStatusError as wrong:
            raise _http_error(409, "wrong-status", str(wrong))
        except InvalidBallotError as invalid:
            raise _http_error(400, invalid.rule, str(invalid))

    @app.post("/elections/{election_id}/close", response_model=ResultView)
    def close_election(election_id: str):
        try:
            return service.close_and_tally(election_id)
        except NotFoundError as missing:
            raise _http_error(404, "not-found", str(missing))
        except WrongStatusError as wrong:
            raise _http_error(409, "wrong-status", str(wrong))
        except ValidationFailureError as rejected:
            raise _http_error(409, "validation-failure", str(rejected))

    @app.get("/elections/{election_id}/result", response_model=ResultView)
    def get_result(election_id: str):
        try:
            return service.get_result(election_id)
        except NotFoundError as missing:
            raise _http_error(404, "not-found", str(missing))
        except WrongStatusError as wrong:
            raise _http_error(409, "wrong-status", str(wrong))

    return app
